# selfdual/codes.py
"""
Generalized Reed-Solomon codes GRS_k(S, V) and their extended form
GRS_k(S, V, inf), self-dual twist solving, and the matrix text format.

Generator rows are v_j * a_j^i for i < k. The extended code appends one
column which is 1 on the last row and 0 elsewhere.
"""
import functools
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import config
from .errors import (
    BudgetExceeded,
    DimensionOutOfRange,
    DuplicatePoint,
    EvenLength,
    FieldError,
    FieldMismatch,
    LengthMismatch,
    MatrixFormatError,
    OddLength,
    RankDeficient,
    TwistSolveFailed,
    ZeroTwistEntry,
)
from .gf import Field, field_for_order, quadratic_characters, sqrt
from .polyring import delta_table

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class EvalSet:
    field: Field
    points: object

    def __post_init__(self):
        if len(self.points) == 0:
            raise DuplicatePoint("an evaluation set needs at least one point")
        self.points = self.field.element(self.points)
        if self.points.ndim != 1:
            raise LengthMismatch("evaluation points must form a vector")
        if len(np.unique(self.points.view(np.ndarray))) != len(self.points):
            raise DuplicatePoint(f"evaluation points must be distinct in {self.field}")

    @property
    def n(self) -> int:
        return len(self.points)

    @functools.cached_property
    def deltas(self):
        return delta_table(self.field, self.points).deltas

    def ints(self) -> list:
        return self.field.ints(self.points).tolist()


@dataclass(eq=False)
class TwistVector:
    field: Field
    values: object

    def __post_init__(self):
        self.values = self.field.element(self.values)
        if np.count_nonzero(self.values.view(np.ndarray) == 0):
            raise ZeroTwistEntry("twist entries must be non-zero")

    def __len__(self):
        return len(self.values)

    def ints(self) -> list:
        return self.field.ints(self.values).tolist()


@dataclass(eq=False)
class LinearCode:
    field: Field
    generator: object
    provenance: dict | None = None

    def __post_init__(self):
        self.generator = self.field.element(self.generator)
        if self.generator.ndim != 2:
            raise LengthMismatch("a generator matrix must be two-dimensional")
        k, n = self.generator.shape
        if not 1 <= k <= n:
            raise DimensionOutOfRange(f"need 1 <= k <= n, got k={k}, n={n}")
        rank = int(np.linalg.matrix_rank(self.generator))
        if rank != k:
            raise RankDeficient(f"generator has rank {rank}, expected {k}")

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]


# ===== GENERATORS =====
def _power_rows(S: EvalSet, k: int):
    rows = S.field.GF.Zeros((k, S.n))
    cur = S.field.GF.Ones(S.n)
    for i in range(k):
        rows[i] = cur
        cur = cur * S.points
    return rows


def _check_twist(S: EvalSet, V: TwistVector):
    if V.field != S.field:
        raise FieldMismatch(f"twist over {V.field}, points over {S.field}")
    if len(V) != S.n:
        raise LengthMismatch(f"{S.n} points but {len(V)} twist entries")


def grs_generator(S: EvalSet, V: TwistVector, k: int) -> LinearCode:
    _check_twist(S, V)
    if not 1 <= k <= S.n:
        raise DimensionOutOfRange(f"k = {k} outside [1, {S.n}]")
    G = _power_rows(S, k) * V.values[None, :]
    return LinearCode(S.field, G, {"kind": "grs", "points": S.ints(), "twist": V.ints()})


def egrs_generator(S: EvalSet, V: TwistVector, k: int) -> LinearCode:
    _check_twist(S, V)
    n = S.n + 1
    if not 1 <= k <= n:
        raise DimensionOutOfRange(f"k = {k} outside [1, {n}]")
    G = S.field.GF.Zeros((k, n))
    G[:, : n - 1] = _power_rows(S, k) * V.values[None, :]
    G[k - 1, n - 1] = 1
    return LinearCode(S.field, G, {"kind": "egrs", "points": S.ints(), "twist": V.ints()})


def gram(C: LinearCode):
    return C.generator @ C.generator.T


def is_self_orthogonal(C: LinearCode) -> bool:
    return np.count_nonzero(gram(C).view(np.ndarray)) == 0


# ===== TWISTS =====
def _roots_or_fail(S: EvalSet, w, clause: str) -> TwistVector:
    F = S.field
    roots = [sqrt(F, x) for x in w]
    if any(r is None for r in roots):
        raise TwistSolveFailed(
            f"[TWIST] {clause}: criterion held but a twist square is missing",
            {"field": F.q, "points": S.ints()},
        )
    return TwistVector(F, F.GF([int(r) for r in roots]))


def _confirm(S: EvalSet, build, V: TwistVector, k: int, clause: str) -> TwistVector:
    try:
        C = build(S, V, k)
    except RankDeficient as e:
        raise TwistSolveFailed(f"[TWIST] {clause}: {e}", {"field": S.field.q, "points": S.ints()}) from e
    if not is_self_orthogonal(C):
        raise TwistSolveFailed(
            f"[TWIST] {clause}: G * G^T != 0",
            {"field": S.field.q, "points": S.ints(), "twist": V.ints()},
        )
    logger.debug(f"[TWIST] {clause} over {S.field}: n={C.n} twist {V.ints()}")
    return V


def solve_twist_grs(S: EvalSet) -> TwistVector | None:
    """
    Twist making GRS_{n/2}(S, V) self-dual, or None when the characters of
    the Delta values are not all equal. v_i = sqrt(lambda / Delta_S(a_i))
    with lambda = 1 when every Delta is a square and theta otherwise.
    """
    if S.n % 2:
        raise OddLength(f"GRS self-duality needs even length, got {S.n}")
    F = S.field
    chars = quadratic_characters(F, S.deltas)
    if len(set(chars.tolist())) != 1:
        return None
    lam = F.one if chars[0] == 1 else F.primitive
    return _confirm(S, grs_generator, _roots_or_fail(S, lam / S.deltas, "grs"), S.n // 2, "grs")


def solve_twist_egrs(S: EvalSet) -> TwistVector | None:
    """Twist v_i = sqrt(-1 / Delta_S(a_i)) for GRS_{(n+1)/2}(S, V, inf), or None."""
    if S.n % 2 == 0:
        raise EvenLength(f"extended self-duality needs odd |S|, got {S.n}")
    F = S.field
    neg = -S.deltas
    if not np.all(quadratic_characters(F, neg) == 1):
        return None
    return _confirm(S, egrs_generator, _roots_or_fail(S, F.minus_one / S.deltas, "egrs"), (S.n + 1) // 2, "egrs")


# ===== CODEWORDS =====
def encode(C: LinearCode, message):
    message = C.field.element(message)
    if message.shape != (C.k,):
        raise LengthMismatch(f"message of length {message.size}, code dimension {C.k}")
    return message @ C.generator


def min_distance_bruteforce(C: LinearCode, budget: int | None = None) -> int:
    budget = config.CODEWORD_BUDGET if budget is None else budget
    q, k, n = C.field.q, C.k, C.n
    total = q ** k
    if total > budget:
        raise BudgetExceeded(f"{q}^{k} = {total} messages exceed the budget {budget}")

    best = n
    chunk = max(1, (1 << 20) // n)
    place = q ** np.arange(k, dtype=np.int64)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // place[None, :]) % q
        words = C.field.GF(digits) @ C.generator
        best = min(best, int(np.count_nonzero(words.view(np.ndarray), axis=1).min()))
    return best


# ===== MATRIX TEXT FORMAT =====
def format_matrix(C: LinearCode) -> str:
    """Header 'q n k', then k rows of n packed integers."""
    lines = [f"{C.field.q} {C.n} {C.k}"]
    lines += [" ".join(str(v) for v in row) for row in C.generator.view(np.ndarray).tolist()]
    return "\n".join(lines) + "\n"


def write_matrix(C: LinearCode, path) -> Path:
    path = Path(path)
    path.write_text(format_matrix(C))
    return path


def parse_matrix(text: str, size_cap: int | None = None) -> LinearCode:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    try:
        values = [[int(tok) for tok in ln] for ln in lines]
    except ValueError as e:
        raise MatrixFormatError(f"non-integer entry: {e}") from e

    header, rows = values[0], values[1:]
    if len(header) != 3:
        raise MatrixFormatError(f"header must be 'q n k', got {lines[0]}")
    q, n, k = header
    if not 1 <= k <= n:
        raise MatrixFormatError(f"header needs 1 <= k <= n, got n={n}, k={k}")
    try:
        F = field_for_order(q, size_cap)
    except FieldError as e:
        raise MatrixFormatError(f"header field: {e}") from e
    if len(rows) != k:
        raise MatrixFormatError(f"header says {k} rows, found {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MatrixFormatError(f"row {i} has {len(row)} entries, expected {n}")
        if any(not 0 <= v < q for v in row):
            raise MatrixFormatError(f"row {i} has entries outside [0, {q})")
    return LinearCode(F, F.GF(np.array(rows, dtype=np.int64)), {"kind": "matrix"})


def read_matrix(path, size_cap: int | None = None) -> LinearCode:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise MatrixFormatError(f"cannot read {path}: {e}") from e
    return parse_matrix(text, size_cap)
