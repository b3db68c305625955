import argparse
from pathlib import Path

import pandas as pd

RENAMES = {
    "recipe.p": "p",
    "recipe.m": "m",
    "recipe.kind": "kind",
    "mds.status": "mds_status",
    "mds.checked": "mds_checked",
    "criterion.verdict": "criterion",
}
CERT_COLUMNS = ["q", "p", "m", "kind", "n", "k", "extended", "self_dual", "mds_status", "mds_checked", "criterion"]
OTHER_STATUSES = ["unsupported", "not_applicable", "contradiction", "error"]


def _safe_read_jsonl(path: Path) -> pd.DataFrame:
    try:
        return pd.read_json(path, lines=True, dtype=False, convert_dates=False)
    except (ValueError, OSError):
        return pd.DataFrame()


def load_rows(raw_dir: Path) -> pd.DataFrame:
    """Every line of every catalog_*.jsonl, flattened; one row per record."""
    frames = []
    for f in sorted(Path(raw_dir).glob("catalog_*.jsonl")):
        df = _safe_read_jsonl(f)
        if df.empty or "status" not in df.columns:
            continue
        flat = pd.json_normalize(df.to_dict(orient="records")).rename(columns=RENAMES)
        flat["q"] = flat["p"] ** flat["m"]
        flat["source"] = f.name
        frames.append(flat)

    if not frames:
        return pd.DataFrame()
    rows = pd.concat(frames, ignore_index=True)
    for c in CERT_COLUMNS:
        if c not in rows.columns:
            rows[c] = pd.NA
    return rows


def lengths_table(rows: pd.DataFrame) -> pd.DataFrame:
    if rows.empty:
        return pd.DataFrame(columns=CERT_COLUMNS)
    cert = rows[rows["status"] == "certified"][CERT_COLUMNS].copy()
    for c in ["q", "p", "m", "n", "k", "mds_checked"]:
        cert[c] = cert[c].astype(int)
    cert["extended"] = cert["extended"].astype(bool)
    return cert.sort_values(["q", "n", "kind"]).reset_index(drop=True)


def summarize(rows: pd.DataFrame) -> pd.DataFrame:
    """Per (q, kind): certified lengths, their range, MDS verdict counts and non-certified counts."""
    lengths = lengths_table(rows)
    agg = pd.DataFrame()
    if not lengths.empty:
        agg = lengths.groupby(["q", "kind"]).agg(
            lengths=("n", "nunique"),
            n_min=("n", "min"),
            n_max=("n", "max"),
            verified=("mds_status", lambda s: int((s == "verified").sum())),
            sampled=("mds_status", lambda s: int((s == "sampled").sum())),
            mds_failed=("mds_status", lambda s: int(s.isin(["failed", "skipped"]).sum())),
            self_dual_failed=("self_dual", lambda s: int((s != "pass").sum())),
        ).reset_index()

    others = rows[rows["status"] != "certified"] if not rows.empty else rows
    counts = pd.DataFrame()
    if not others.empty:
        counts = others.groupby(["q", "kind", "status"]).size().unstack("status", fill_value=0).reset_index()
        counts.columns.name = None

    if agg.empty:
        summary = counts
    elif counts.empty:
        summary = agg
    else:
        summary = agg.merge(counts, on=["q", "kind"], how="outer")
    if summary.empty:
        return summary

    for c in ["lengths", "verified", "sampled", "mds_failed", "self_dual_failed"] + OTHER_STATUSES:
        if c not in summary.columns:
            summary[c] = 0
        summary[c] = summary[c].fillna(0).astype(int)
    return summary.sort_values(["q", "kind"]).reset_index(drop=True)


def collect_catalog(raw_dir: Path) -> pd.DataFrame:
    return summarize(load_rows(raw_dir))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Fold search catalogs into summary tables")
    parser.add_argument("--shared", default="shared", help="directory holding raw/ and results/")
    args = parser.parse_args(argv)

    shared = Path(args.shared)
    raw_dir = shared / "raw"
    out_dir = shared / "results"
    out_dir.mkdir(parents=True, exist_ok=True)

    rows = load_rows(raw_dir)
    if rows.empty:
        print("No catalog files in", raw_dir)
        return 0

    lengths_path = out_dir / "lengths.csv"
    lengths_table(rows).to_csv(lengths_path, index=False)
    summary_path = out_dir / "summary.csv"
    summarize(rows).to_csv(summary_path, index=False)

    print("Saved:", summary_path)
    print("Saved:", lengths_path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
