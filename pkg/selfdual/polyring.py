# selfdual/polyring.py
import logging
from dataclasses import dataclass

import galois
import numpy as np

from .errors import (
    DuplicatePoint,
    DuplicateRoot,
    InternalCrossCheckFailed,
    NotDisjoint,
    PointNotInUnion,
)
from .gf import Field

logger = logging.getLogger(__name__)


def poly_from_roots(F: Field, roots) -> galois.Poly:
    """f_S(x) = prod_{a in S} (x - a); the empty set gives 1."""
    if len(roots) == 0:
        return galois.Poly.One(field=F.GF)
    roots = F.element(roots)
    if len(np.unique(roots.view(np.ndarray))) != len(roots):
        raise DuplicateRoot(f"roots of f_S must be distinct in {F}")
    return galois.Poly.Roots(roots, field=F.GF)


def subspace_poly(F: Field, elements) -> galois.Poly:
    return poly_from_roots(F, elements)


def derivative(f: galois.Poly) -> galois.Poly:
    if f.degree == 0:
        return galois.Poly.Zero(field=f.field)
    return f.derivative()


def evaluate(f: galois.Poly, x):
    return f(x)


@dataclass(frozen=True, eq=False)
class DeltaTable:
    points: object      # FieldArray of distinct points
    deltas: object      # FieldArray, deltas[i] = Delta_S(points[i])

    def __len__(self):
        return len(self.points)

    def lookup(self, b) -> object:
        idx = np.flatnonzero(self.points.view(np.ndarray) == int(b))
        if len(idx) == 0:
            raise PointNotInUnion(f"{int(b)} is not an evaluation point")
        return self.deltas[int(idx[0])]


def _delta_direct(F: Field, points):
    n = len(points)
    diffs = points[:, None] - points[None, :]
    diffs[np.arange(n), np.arange(n)] = 1
    out = F.GF.Ones(n)
    for j in range(n):
        out *= diffs[:, j]
    return out


def delta_table(F: Field, points) -> DeltaTable:
    """
    Delta_S(b) = prod_{a in S, a != b} (b - a) for every b in S, computed
    both as pairwise products and as f_S'(b); the two must agree.
    """
    if len(points) == 0:
        empty = F.GF.Zeros(0)
        return DeltaTable(points=empty, deltas=empty)
    points = F.element(points)
    if len(np.unique(points.view(np.ndarray))) != len(points):
        raise DuplicatePoint(f"evaluation points must be distinct in {F}")

    direct = _delta_direct(F, points)
    via_derivative = evaluate(derivative(poly_from_roots(F, points)), points)
    if not np.array_equal(direct.view(np.ndarray), np.asarray(via_derivative).view(np.ndarray)):
        raise InternalCrossCheckFailed(
            f"[POLY] Delta mismatch over {F}: direct {direct.tolist()} vs derivative {via_derivative.tolist()}"
        )
    logger.debug(f"[POLY] delta table of {len(points)} points over {F}")
    return DeltaTable(points=points, deltas=direct)


def _points(F: Field, xs):
    return F.GF.Zeros(0) if len(xs) == 0 else F.element(xs)


def delta_split(F: Field, S1, S2, b):
    """Delta_{S1 u S2}(b) = Delta_{S1}(b) * f_{S2}(b) for b in S1 (and symmetrically)."""
    S1, S2 = _points(F, S1), _points(F, S2)
    b = F.element(b)
    s1, s2 = set(S1.view(np.ndarray).tolist()), set(S2.view(np.ndarray).tolist())
    if s1 & s2:
        raise NotDisjoint(f"sets share {sorted(s1 & s2)}")
    if int(b) in s1:
        own, other = S1, S2
    elif int(b) in s2:
        own, other = S2, S1
    else:
        raise PointNotInUnion(f"{int(b)} is in neither set")

    rest = own[own.view(np.ndarray) != int(b)]
    partial = F.one
    for a in rest:
        partial = partial * (b - a)
    return partial * evaluate(poly_from_roots(F, other), b)
