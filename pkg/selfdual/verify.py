# selfdual/verify.py
"""
Independent checks and certificates.

MDS: G is row-reduced to [I | A] on its pivot columns. A k-subset T of
columns is an information set iff the square block of A on the rows whose
pivot is outside T and the non-pivot columns inside T is nonsingular, so all
C(n, k) maximal minors of G are the square minors of A. Exhaustive mode builds
every square minor of A level by level (Laplace along the last row); sampled
mode eliminates the blocks of the chosen subsets in batches.
"""
import json
import logging
import math
import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import config
from .codes import (
    EvalSet,
    LinearCode,
    egrs_generator,
    grs_generator,
    solve_twist_egrs,
    solve_twist_grs,
)
from .constructions import Recipe, applicable, build
from .errors import BudgetExceeded, EvenLength, OddLength, RecipeNotApplicable, TwistSolveFailed
from .gf import Field, quadratic_characters

logger = logging.getLogger(__name__)

CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class MdsVerdict:
    status: str                 # verified | sampled | skipped | failed
    checked: int = 0
    witness: tuple | None = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status in ("verified", "sampled")

    def to_dict(self) -> dict:
        out = {"status": self.status, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class CriterionResult:
    clause: str                 # grs | egrs
    passed: bool
    characters: tuple

    def to_dict(self) -> dict:
        return {"clause": self.clause, "verdict": "pass" if self.passed else "fail",
                "characters": list(self.characters)}


@dataclass
class Certificate:
    field: Field
    recipe: Recipe | None
    extended: bool
    points: list
    twist: list
    n: int
    k: int
    self_dual: bool
    mds: MdsVerdict
    criterion: CriterionResult
    timings_ms: dict = field(default_factory=dict)
    code: LinearCode | None = field(default=None, repr=False)
    oracle: str | None = None   # set when the exhaustive oracle was consulted

    @property
    def passed(self) -> bool:
        return self.self_dual and self.mds.passed

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "status": "certified",
            "field": self.field.to_dict(),
            "recipe": self.recipe.to_dict() if self.recipe else None,
            "extended": self.extended,
            "n": self.n,
            "k": self.k,
            "points": self.points,
            "twist": self.twist,
            "self_dual": "pass" if self.self_dual else "fail",
            "mds": self.mds.to_dict(),
            "criterion": self.criterion.to_dict(),
        }
        if self.oracle is not None:
            out["oracle"] = self.oracle
        if timings:
            out["timings_ms"] = {k: round(v, 3) for k, v in self.timings_ms.items()}
        return out

    def to_json(self, timings: bool = True, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=indent)


# ===== SELF-DUALITY AND CRITERIA =====
def check_self_dual(C: LinearCode) -> bool:
    """n = 2k, rank k and G * G^T = 0, recomputed from the matrix alone."""
    if C.n != 2 * C.k:
        return False
    G = C.generator
    if int(np.linalg.matrix_rank(G)) != C.k:
        return False
    return not np.any((G @ G.T).view(np.ndarray))


def check_criterion_grs(S: EvalSet) -> CriterionResult:
    if S.n % 2:
        raise OddLength(f"GRS criterion needs even |S|, got {S.n}")
    chars = tuple(int(c) for c in quadratic_characters(S.field, S.deltas))
    return CriterionResult("grs", len(set(chars)) == 1, chars)


def check_criterion_egrs(S: EvalSet) -> CriterionResult:
    if S.n % 2 == 0:
        raise EvenLength(f"extended criterion needs odd |S|, got {S.n}")
    chars = tuple(int(c) for c in quadratic_characters(S.field, -S.deltas))
    return CriterionResult("egrs", all(c == 1 for c in chars), chars)


# ===== MDS =====
@dataclass(frozen=True, eq=False)
class _Systematic:
    A: object           # k x (n - k) FieldArray
    pivots: np.ndarray  # pivot column of each row
    others: np.ndarray  # non-pivot columns, ascending
    n: int


def _systematic(C: LinearCode) -> _Systematic:
    R = C.generator.row_reduce()
    raw = R.view(np.ndarray)
    pivots = np.array([int(np.flatnonzero(raw[i])[0]) for i in range(C.k)], dtype=np.int64)
    others = np.array(sorted(set(range(C.n)) - set(pivots.tolist())), dtype=np.int64)
    return _Systematic(A=R[:, others], pivots=pivots, others=others, n=C.n)


def _masks(form: _Systematic, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """k-column masks for square blocks given by (row subsets, column subsets)."""
    z = len(rows)
    mask = np.zeros((z, form.n), dtype=bool)
    mask[:, form.pivots] = True
    if rows.shape[1]:
        idx = np.arange(z)[:, None]
        mask[idx, form.pivots[rows]] = False
        mask[idx, form.others[cols]] = True
    return mask


def _lex_smallest(masks: np.ndarray) -> tuple | None:
    """Lexicographically smallest column subset among equal-size masks."""
    if len(masks) == 0:
        return None
    order = np.lexsort(masks.T[::-1])
    return tuple(int(c) for c in np.flatnonzero(masks[order[-1]]))


def _exhaustive(form: _Systematic) -> tuple | None:
    A = form.A
    GF = type(A)
    k, r = A.shape
    best = []
    prev, prev_rows, prev_cols = None, None, None
    for i in range(1, min(k, r) + 1):
        rows_i = list(combinations(range(k), i))
        cols_i = list(combinations(range(r), i))
        if i == 1:
            D = A.copy()
        else:
            row_pos = {c: j for j, c in enumerate(prev_rows)}
            col_pos = {c: j for j, c in enumerate(prev_cols)}
            parent = np.array([row_pos[c[:-1]] for c in rows_i], dtype=np.int64)
            last = np.array([c[-1] for c in rows_i], dtype=np.int64)
            col = np.array(cols_i, dtype=np.int64)
            drop = np.array([[col_pos[c[:j] + c[j + 1:]] for j in range(i)] for c in cols_i], dtype=np.int64)
            plus = [j for j in range(i) if (i - 1 + j) % 2 == 0]
            minus = [j for j in range(i) if (i - 1 + j) % 2 == 1]

            D = GF.Zeros((len(rows_i), len(cols_i)))
            block = max(1, CHUNK_ELEMENTS // (len(cols_i) * i))
            for start in range(0, len(rows_i), block):
                sl = slice(start, start + block)
                terms = A[last[sl][:, None, None], col[None, :, :]] * prev[parent[sl][:, None, None], drop[None, :, :]]
                total = np.add.reduce(terms[:, :, plus], axis=-1)
                if minus:
                    total = total - np.add.reduce(terms[:, :, minus], axis=-1)
                D[sl] = total

        zr, zc = np.nonzero(D.view(np.ndarray) == 0)
        if len(zr):
            rows_arr = np.array(rows_i, dtype=np.int64)
            cols_arr = np.array(cols_i, dtype=np.int64)
            best.append(_witness_mask(form, rows_arr[zr], cols_arr[zc]))
        prev, prev_rows, prev_cols = D, rows_i, cols_i

    if not best:
        return None
    return _lex_smallest(np.vstack(best))


def _witness_mask(form: _Systematic, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    masks = _masks(form, rows, cols)
    order = np.lexsort(masks.T[::-1])
    return masks[order[-1:]]


def _batch_nonsingular(M) -> np.ndarray:
    """Gaussian elimination on a stack of square matrices; True where nonsingular."""
    GF = type(M)
    M = M.copy()
    b, size, _ = M.shape
    ok = np.ones(b, dtype=bool)
    idx = np.arange(b)
    for j in range(size):
        nz = M[:, j:, j].view(np.ndarray) != 0
        has = nz.any(axis=1)
        ok &= has
        piv = j + np.argmax(nz, axis=1)
        row_j, row_p = M[idx, j].copy(), M[idx, piv].copy()
        M[idx, j] = row_p
        M[idx, piv] = row_j
        pivot = M[idx, j, j].view(np.ndarray).copy()
        pivot[~has] = 1
        inv = GF(pivot) ** -1
        if j + 1 < size:
            factors = M[:, j + 1:, j] * inv[:, None]
            M[:, j + 1:, :] = M[:, j + 1:, :] - factors[:, :, None] * M[:, j, :][:, None, :]
    return ok


def _singular_masks(form: _Systematic, subsets: np.ndarray) -> np.ndarray:
    """Masks of the singular k-subsets among the given (sorted) subsets."""
    z = len(subsets)
    in_t = np.zeros((z, form.n), dtype=bool)
    in_t[np.arange(z)[:, None], subsets] = True
    free_rows = ~in_t[:, form.pivots]
    chosen = in_t[:, form.others]
    sizes = free_rows.sum(axis=1)

    bad = []
    for size in np.unique(sizes):
        if size == 0:
            continue
        sel = np.flatnonzero(sizes == size)
        rows = np.argsort(~free_rows[sel], axis=1, kind="stable")[:, :size]
        cols = np.argsort(~chosen[sel], axis=1, kind="stable")[:, :size]
        step = max(1, CHUNK_ELEMENTS // (int(size) * int(size)))
        for start in range(0, len(sel), step):
            r, c = rows[start:start + step], cols[start:start + step]
            blocks = form.A[r[:, :, None], c[:, None, :]]
            singular = ~_batch_nonsingular(blocks)
            if singular.any():
                bad.append(in_t[sel[start:start + step]][singular])
    if not bad:
        return np.zeros((0, form.n), dtype=bool)
    return np.vstack(bad)


def hard_subsets(n: int, k: int, limit: int | None = None) -> np.ndarray:
    """
    For each column pair i < j: {i, j} plus the columns following i
    (cyclically, skipping j) until k columns are chosen.
    """
    if k >= n:
        return np.arange(n, dtype=np.int64)[None, :]
    if k == 1:
        return np.arange(n, dtype=np.int64)[:, None]
    out = set()
    for i, j in combinations(range(n), 2):
        chosen, c = [i, j], i
        while len(chosen) < k:
            c = (c + 1) % n
            if c != i and c != j:
                chosen.append(c)
        out.add(tuple(sorted(chosen)))
        if limit is not None and len(out) >= limit:
            break
    return np.array(sorted(out), dtype=np.int64)


def _random_subsets(n: int, k: int, count: int, rng) -> np.ndarray:
    keys = rng.random((count, n))
    return np.sort(np.argpartition(keys, k - 1, axis=1)[:, :k], axis=1)


def check_mds(C: LinearCode, budget: int | None = None, sample_limit: int | None = None,
              sampling: bool = True, seed: int | None = None) -> MdsVerdict:
    """
    Every k-column submatrix of G nonsingular. Exhaustive while C(n, k) fits
    the budget, otherwise sampled (or skipped when sampling is off).
    """
    budget = config.MDS_BUDGET if budget is None else budget
    sample_limit = config.SAMPLE_LIMIT if sample_limit is None else sample_limit
    seed = config.SAMPLE_SEED if seed is None else seed
    n, k = C.n, C.k
    total = math.comb(n, k)
    form = _systematic(C)

    if total <= budget:
        witness = _exhaustive(form)
        if witness is not None:
            logger.info(f"[MDS] [{n},{k}] over {C.field}: singular columns {witness}")
            return MdsVerdict("failed", total, witness)
        return MdsVerdict("verified", total)

    if not sampling:
        return MdsVerdict("skipped", 0, reason=f"C({n},{k}) = {total} exceeds the budget {budget}")

    rng = np.random.default_rng(seed)
    count = min(budget, sample_limit)
    batches = [hard_subsets(n, k, limit=sample_limit)]
    step = max(1, CHUNK_ELEMENTS // n)
    for start in range(0, count, step):
        batches.append(_random_subsets(n, k, min(step, count - start), rng))

    checked, bad = 0, []
    for subsets in batches:
        checked += len(subsets)
        masks = _singular_masks(form, subsets)
        if len(masks):
            bad.append(masks)
    if bad:
        witness = _lex_smallest(np.vstack(bad))
        logger.info(f"[MDS] [{n},{k}] over {C.field}: sampled singular columns {witness}")
        return MdsVerdict("failed", checked, witness)
    logger.warning(f"[MDS] [{n},{k}] over {C.field}: sampled {checked} of {total} subsets")
    return MdsVerdict("sampled", checked)


# ===== TWIST ORACLE =====
def oracle_exists_twist(S: EvalSet, extended: bool, budget: int | None = None) -> bool:
    """
    Brute force over all twists in (F_q^*)^n: is some GRS (or extended GRS)
    code on S self-dual? The Gram matrix entry (r, s) is
    sum_i v_i^2 a_i^(r+s), plus 1 in the corner for the extended code.
    """
    budget = config.ORACLE_BUDGET if budget is None else budget
    F, n = S.field, S.n
    if extended and n % 2 == 0:
        raise EvenLength(f"extended oracle needs odd |S|, got {n}")
    if not extended and n % 2:
        raise OddLength(f"oracle needs even |S|, got {n}")
    q1 = F.q - 1
    total = q1 ** n
    if total > budget:
        raise BudgetExceeded(f"{q1}^{n} = {total} twists exceed the budget {budget}")

    k = (n + 1) // 2 if extended else n // 2
    powers = F.GF.Zeros((2 * k - 1, n))
    cur = F.GF.Ones(n)
    for j in range(2 * k - 1):
        powers[j] = cur
        cur = cur * S.points
    target = np.zeros(2 * k - 1, dtype=np.int64)
    if extended:
        target[-1] = int(F.minus_one)

    logger.debug(f"[ORACLE] {'extended ' if extended else ''}GRS on {S.ints()} over {F}: {total} twists")
    squares = F.GF(np.arange(1, F.q)) ** 2
    place = q1 ** np.arange(n, dtype=np.int64)
    chunk = max(1, (1 << 18) // n)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        W = squares[(idx[:, None] // place[None, :]) % q1]
        sums = (W @ powers.T).view(np.ndarray)
        if np.any(np.all(sums == target[None, :], axis=1)):
            logger.debug(f"[ORACLE] twist found within the first {int(idx[-1]) + 1} candidates")
            return True
    logger.debug("[ORACLE] no twist")
    return False


# ===== CERTIFICATES =====
def certify(F: Field, recipe: Recipe, settings: config.Settings | None = None) -> Certificate:
    """Build, twist, generate and independently check one recipe."""
    settings = settings or config.Settings()
    timings = {}
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        timings[name] = (now - clock) * 1000.0
        clock = now

    S, extended = build(F, recipe)
    lap("build")

    twist = solve_twist_egrs(S) if extended else solve_twist_grs(S)
    if twist is None:
        raise TwistSolveFailed(
            f"[CERT] {recipe.label}: hypotheses hold but no twist exists",
            {"field": F.q, "recipe": recipe.label, "points": S.ints()},
        )
    lap("twist")

    C = egrs_generator(S, twist, (S.n + 1) // 2) if extended else grs_generator(S, twist, S.n // 2)
    lap("generator")

    self_dual = check_self_dual(C)
    if not self_dual:
        raise TwistSolveFailed(
            f"[CERT] {recipe.label}: generator is not self-dual",
            {"field": F.q, "recipe": recipe.label, "points": S.ints(), "twist": twist.ints()},
        )
    lap("self_dual")

    criterion = check_criterion_egrs(S) if extended else check_criterion_grs(S)
    lap("criterion")

    mds = check_mds(C, settings.mds_budget, settings.sample_limit, settings.mds_sampling, settings.sample_seed)
    lap("mds")

    logger.info(f"[CERT] {recipe.label} over {F}: [{C.n},{C.k}] self-dual, MDS {mds.status}")
    return Certificate(
        field=F, recipe=recipe, extended=extended, points=S.ints(), twist=twist.ints(),
        n=C.n, k=C.k, self_dual=self_dual, mds=mds, criterion=criterion, timings_ms=timings, code=C,
    )


def probe_unsupported(F: Field, recipe: Recipe) -> dict:
    """Build a point whose lift hypothesis fails and record whether the criterion holds anyway."""
    verdict = applicable(F, recipe)
    if verdict or not verdict.unsupported:
        raise RecipeNotApplicable(f"{recipe.label} is not an unsupported point", False)
    S, extended = build(F, recipe, check=False)
    criterion = check_criterion_egrs(S) if extended else check_criterion_grs(S)
    logger.warning(f"[CERT] {recipe.label} over {F}: unsupported ({verdict.reason}), "
                   f"criterion {'holds' if criterion.passed else 'fails'}")
    return {
        "status": "unsupported",
        "field": F.to_dict(),
        "recipe": recipe.to_dict(),
        "n": S.n + (1 if extended else 0),
        "reason": verdict.reason,
        "criterion": criterion.to_dict(),
    }
