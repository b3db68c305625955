# selfdual/cli.py
import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import galois
import numpy as np

from . import config
from .codes import EvalSet, format_matrix, gram, min_distance_bruteforce, read_matrix, write_matrix
from .config import Settings, load_settings, setup_logging
from .constructions import Recipe, enumerate_recipes, enumerate_unsupported, make_recipe
from .errors import (
    ConfigError,
    ConstructionError,
    FieldError,
    InternalCrossCheckFailed,
    MatrixFormatError,
    RankDeficient,
    RecipeNotApplicable,
    SelfDualError,
    TwistSolveFailed,
)
from .gf import field_for_order, make_field
from .verify import certify, check_mds, check_self_dual, oracle_exists_twist, probe_unsupported

logger = logging.getLogger(__name__)

# --- EXIT CODES ---
EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NOT_APPLICABLE = 2
EXIT_CONTRADICTION = 3
EXIT_PARSE = 4


# ANSI color codes for terminal summaries
class Colors:
    RED = '\033[91m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    BLUE = '\033[94m'
    RESET = '\033[0m'


def _paint(text: str, color: str, stream=None) -> str:
    stream = sys.stdout if stream is None else stream
    if hasattr(stream, "isatty") and stream.isatty():
        return f"{color}{text}{Colors.RESET}"
    return text


def _verdict_color(status: str) -> str:
    if status in ("pass", "verified"):
        return Colors.GREEN
    if status in ("sampled", "skipped", "unsupported"):
        return Colors.YELLOW
    return Colors.RED


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the parse code; 2 is reserved for not-applicable."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", default=None, help="YAML settings file")
    p.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    p.add_argument("--mds-budget", type=int, default=None, help="maximal minors checked exhaustively")
    p.add_argument("--oracle-budget", type=int, default=None, help="twists enumerated by the existence oracle")
    p.add_argument("--codeword-budget", type=int, default=None, help="messages enumerated by brute-force distance")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="selfdual", description="MDS self-dual codes from GRS and extended GRS constructions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct, twist and certify one recipe")
    _add_common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--recipe", required=True, help="recipe kind, e.g. Thm1a, Thm5odd, Rmk34")
    p.add_argument("--l", type=int, default=None, help="lifting subspace dimension")
    p.add_argument("--s", type=int, default=None, help="subfield degree")
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--e1", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="target length (Rmk34 derives t, e1 from it)")
    p.add_argument("--out", default=None, help="directory for the certificate and matrix")
    p.add_argument("--oracle", action="store_true", help="cross-check the twist against the exhaustive oracle")
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser("search", help="certify every applicable recipe up to a length")
    _add_common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", default=None, help="JSON-lines output file")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--include-generic", action="store_true")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("verify", help="check a generator matrix file")
    _add_common(p)
    p.add_argument("matrix", help="matrix text file: 'q n k' then k rows")
    p.add_argument("--distance", action="store_true", help="brute-force minimum distance")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("tables", help="catalog of certified lengths over a range of q")
    _add_common(p)
    p.add_argument("--q", required=True, help="orders, e.g. '13,41' or '3-200'")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", default=None, help="directory for tables.txt and certificates")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--include-generic", action="store_true")
    p.set_defaults(handler=cmd_tables)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(args.config).replace(
            mds_budget=args.mds_budget,
            oracle_budget=args.oracle_budget,
            codeword_budget=args.codeword_budget,
            log_level=args.log_level.upper() if args.log_level else None,
            workers=getattr(args, "workers", None),
        )
    except ConfigError as e:
        print(f"selfdual: {e}", file=sys.stderr)
        return EXIT_PARSE
    setup_logging(settings.log_level)
    config.DLOG_SCAN_LIMIT = settings.dlog_scan_limit

    try:
        return args.handler(args, settings)
    except (FieldError, ConstructionError) as e:
        if isinstance(e, RecipeNotApplicable):
            print(_paint(f"not applicable: {e.reason}", Colors.YELLOW, sys.stderr), file=sys.stderr)
            return EXIT_NOT_APPLICABLE
        print(f"selfdual: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (TwistSolveFailed, InternalCrossCheckFailed) as e:
        logger.critical(f"[CERT] contradiction: {e}")
        print(_paint(f"contradiction: {e}", Colors.RED, sys.stderr), file=sys.stderr)
        return EXIT_CONTRADICTION
    except SelfDualError as e:
        print(f"selfdual: {e}", file=sys.stderr)
        return EXIT_FAIL


# ===== HELPERS =====
def _stem(cert_dict: dict) -> str:
    recipe = cert_dict["recipe"]
    params = "_".join(f"{k}{v}" for k, v in recipe.items() if k not in ("kind", "p", "m"))
    q = cert_dict["field"]["p"] ** cert_dict["field"]["m"]
    return "_".join(x for x in (f"q{q}", recipe["kind"], params, f"n{cert_dict['n']}") if x)


def _save_certificate(out_dir: Path, cert, timings: bool) -> tuple:
    out_dir.mkdir(parents=True, exist_ok=True)
    doc = cert.to_dict(timings)
    stem = _stem(doc)
    cert_path = out_dir / f"{stem}.json"
    cert_path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    matrix_path = write_matrix(cert.code, out_dir / f"{stem}.matrix")
    return cert_path, matrix_path


def _certificate_text(doc: dict) -> str:
    field = doc["field"]
    mds = doc["mds"]
    lines = [
        f"field      F_{field['p'] ** field['m']} (p={field['p']}, m={field['m']}, "
        f"modulus {field['modulus']}, theta {field['theta']})",
        f"recipe     {Recipe.from_dict(doc['recipe']).label}",
        f"code       [{doc['n']},{doc['k']}] {'extended GRS' if doc['extended'] else 'GRS'}",
        f"points     {doc['points']}",
        f"twist      {doc['twist']}",
        f"self_dual  {_paint(doc['self_dual'], _verdict_color(doc['self_dual']))}",
        f"mds        {_paint(mds['status'], _verdict_color(mds['status']))} ({mds['checked']} subsets)",
        f"criterion  {doc['criterion']['clause']} {doc['criterion']['verdict']}",
    ]
    if "witness" in mds:
        lines.append(f"witness    {mds['witness']}")
    if "oracle" in doc:
        lines.append(f"oracle     {doc['oracle']}")
    if "timings_ms" in doc:
        lines.append("timings    " + ", ".join(f"{k} {v:.1f}ms" for k, v in doc["timings_ms"].items()))
    return "\n".join(lines)


def _certify_record(p: int, m: int, recipe_dict: dict, settings_dict: dict, timings: bool) -> dict:
    """One search entry as a plain dict; runs in worker processes too."""
    settings = Settings(**settings_dict)
    config.DLOG_SCAN_LIMIT = settings.dlog_scan_limit
    recipe = Recipe.from_dict(recipe_dict)
    try:
        F = make_field(p, m, settings.size_cap)
        return certify(F, recipe, settings).to_dict(timings)
    except RecipeNotApplicable as e:
        return {"status": "not_applicable", "recipe": recipe_dict, "reason": e.reason}
    except (TwistSolveFailed, InternalCrossCheckFailed) as e:
        logger.critical(f"[SEARCH] contradiction in {recipe.label}: {e}")
        return {"status": "contradiction", "recipe": recipe_dict, "error": str(e)}
    except SelfDualError as e:
        logger.exception(f"[SEARCH] {recipe.label} failed")
        return {"status": "error", "recipe": recipe_dict, "error": str(e)}


def _certify_many(jobs: list, settings: Settings, timings: bool) -> list:
    """jobs: (p, m, recipe) triples; results keep the job order."""
    args = [(p, m, r.to_dict(), settings.to_dict(), timings) for p, m, r in jobs]
    if settings.workers <= 1 or len(args) <= 1:
        return [_certify_record(*a) for a in args]
    with ProcessPoolExecutor(max_workers=settings.workers) as pool:
        return list(pool.map(_certify_record, *zip(*args)))


def _summary_table(records: list) -> str:
    header = f"{'n':>5} | {'k':>4} | {'recipe':<34} | {'self_dual':<9} | {'mds':<9} | checked"
    lines = [header, "-" * len(header)]
    for rec in records:
        recipe = Recipe.from_dict(rec["recipe"]).label
        if rec["status"] == "certified":
            sd, mds = rec["self_dual"], rec["mds"]["status"]
            lines.append(
                f"{rec['n']:>5} | {rec['k']:>4} | {recipe:<34} | "
                f"{_paint(sd.ljust(9), _verdict_color(sd))} | "
                f"{_paint(mds.ljust(9), _verdict_color(mds))} | {rec['mds']['checked']}"
            )
        else:
            n, status = rec.get("n", "-"), rec["status"]
            lines.append(f"{n:>5} | {'-':>4} | {recipe:<34} | {_paint(status.ljust(9), _verdict_color(status))} |")
    return "\n".join(lines)


# ===== COMMANDS =====
def cmd_build(args, settings: Settings) -> int:
    F = make_field(args.p, args.m, settings.size_cap)
    recipe = make_recipe(F, args.recipe, s=args.s, lift_dim=args.l, t=args.t, e1=args.e1, n=args.n)
    cert = certify(F, recipe, settings)
    timings = not args.no_timings
    if args.oracle:
        exists = oracle_exists_twist(EvalSet(F, cert.points), cert.extended, settings.oracle_budget)
        if not exists:
            raise InternalCrossCheckFailed(f"[ORACLE] {recipe.label}: certified twist but the oracle finds none")
        cert.oracle = "exists"

    if args.out:
        cert_path, matrix_path = _save_certificate(Path(args.out), cert, timings)
        print("Saved:", cert_path)
        print("Saved:", matrix_path)
    elif args.format == "json":
        print(cert.to_json(timings, indent=2))
    else:
        print(_certificate_text(cert.to_dict(timings)))
        print(format_matrix(cert.code), end="")
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_search(args, settings: Settings) -> int:
    F = make_field(args.p, args.m, settings.size_cap)
    timings = not args.no_timings
    entries = enumerate_recipes(F, args.n_max, args.include_generic)
    logger.info(f"[SEARCH] {F}: certifying {len(entries)} recipes up to n = {args.n_max}")

    records = _certify_many([(F.p, F.m, recipe) for recipe, _ in entries], settings, timings)
    for recipe, _ in enumerate_unsupported(F, args.n_max, args.include_generic):
        records.append(probe_unsupported(F, recipe))

    lines = [json.dumps(rec, sort_keys=True) for rec in records]
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text("".join(line + "\n" for line in lines))
        print(_summary_table(records))
        print("Saved:", out)
    elif args.format == "text":
        print(_summary_table(records))
    else:
        for line in lines:
            print(line)
        print(_summary_table(records), file=sys.stderr)
    return EXIT_OK


def _gram_witness(C) -> tuple | None:
    nonzero = np.argwhere(gram(C).view(np.ndarray) != 0)
    return tuple(int(x) for x in nonzero[0]) if len(nonzero) else None


def cmd_verify(args, settings: Settings) -> int:
    try:
        C = read_matrix(args.matrix, settings.size_cap)
    except MatrixFormatError as e:
        print(f"selfdual: {e}", file=sys.stderr)
        return EXIT_PARSE
    except RankDeficient as e:
        print(_paint(f"rank failure: {e}", Colors.RED, sys.stderr), file=sys.stderr)
        return EXIT_FAIL

    self_dual = check_self_dual(C)
    mds = check_mds(C, settings.mds_budget, settings.sample_limit, settings.mds_sampling, settings.sample_seed)
    doc = {"q": C.field.q, "n": C.n, "k": C.k, "self_dual": "pass" if self_dual else "fail", "mds": mds.to_dict()}
    if not self_dual:
        doc["self_dual_witness"] = (
            {"reason": f"n = {C.n} is not 2k = {2 * C.k}"} if C.n != 2 * C.k
            else {"gram_entry": list(_gram_witness(C))}
        )
    if args.distance:
        doc["distance"] = min_distance_bruteforce(C, settings.codeword_budget)

    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(f"code       [{C.n},{C.k}] over F_{C.field.q}")
        print(f"self_dual  {_paint(doc['self_dual'], _verdict_color(doc['self_dual']))}")
        print(f"mds        {_paint(mds.status, _verdict_color(mds.status))} ({mds.checked} subsets)")
        if mds.witness is not None:
            print(f"witness    {list(mds.witness)}")
        if not self_dual:
            print(f"gram       {doc['self_dual_witness']}")
        if "distance" in doc:
            print(f"distance   {doc['distance']} (Singleton bound {C.n - C.k + 1})")
    logger.info(f"[VERIFY] {args.matrix}: self_dual {doc['self_dual']}, mds {mds.status}")
    return EXIT_OK if self_dual and mds.passed else EXIT_FAIL


def parse_q_spec(spec: str) -> list:
    """'13,41,50-60' -> odd prime powers, ascending; explicit entries must be valid."""
    out = set()
    for token in spec.replace(" ", "").split(","):
        if not token:
            continue
        try:
            if "-" in token:
                lo, hi = (int(x) for x in token.split("-", 1))
                out.update(q for q in range(max(lo, 3), hi + 1) if q % 2 and galois.is_prime_power(q))
                continue
            q = int(token)
        except ValueError as e:
            raise FieldError(f"bad q range {token!r}") from e
        if q < 3 or q % 2 == 0 or not galois.is_prime_power(q):
            raise FieldError(f"{q} is not an odd prime power")
        out.add(q)
    return sorted(out)


def _table_text(rows: list) -> str:
    header = f"{'q':>6} | {'n':>5} | {'k':>4} | kinds"
    lines = [header, "-" * len(header)]
    lines += [f"{q:>6} | {n:>5} | {n // 2:>4} | {'/'.join(kinds)}" for q, n, kinds in rows]
    return "\n".join(lines) + "\n"


def cmd_tables(args, settings: Settings) -> int:
    timings = not args.no_timings
    jobs = []
    for q in parse_q_spec(args.q):
        F = field_for_order(q, settings.size_cap)
        jobs += [(F.p, F.m, recipe) for recipe, _ in enumerate_recipes(F, args.n_max, args.include_generic)]
    records = _certify_many(jobs, settings, timings)

    grouped = {}
    out_dir = Path(args.out) if args.out else None
    for (p, m, recipe), rec in zip(jobs, records):
        if rec["status"] != "certified" or rec["self_dual"] != "pass" or rec["mds"]["status"] not in ("verified", "sampled"):
            logger.warning(f"[TABLES] F_{p ** m} {recipe.label}: {rec['status']} not listed")
            continue
        kinds = grouped.setdefault((p ** m, rec["n"]), [])
        if recipe.kind.value not in kinds:
            kinds.append(recipe.kind.value)
        if out_dir:
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / f"{_stem(rec)}.json").write_text(json.dumps(rec, sort_keys=True, indent=2) + "\n")

    rows = [(q, n, kinds) for (q, n), kinds in sorted(grouped.items())]
    text = _table_text(rows)
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "tables.txt").write_text(text)
        print("Saved:", out_dir / "tables.txt")
    if args.format == "json":
        print(json.dumps([{"q": q, "n": n, "k": n // 2, "kinds": kinds} for q, n, kinds in rows], sort_keys=True))
    else:
        print(text, end="")
    return EXIT_OK
