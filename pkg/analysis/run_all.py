import os
import subprocess
import sys
from pathlib import Path


def main():
    shared = Path(os.environ.get("SHARED_DIR", "/shared"))
    here = Path(__file__).resolve().parent

    steps = [
        [sys.executable, str(here / "collect_catalog.py"), "--shared", str(shared)],
    ]

    tables = shared / "results" / "tables" / "tables.txt"
    if tables.exists():
        steps.append(["cat", str(tables)])

    for cmd in steps:
        print("Running:", " ".join(cmd))
        subprocess.check_call(cmd)


if __name__ == "__main__":
    main()
