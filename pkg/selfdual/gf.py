# selfdual/gf.py
"""
Deterministic finite fields F_q, q = p^m with p odd.

Elements are galois FieldArrays. Their integer representation is the packed
value sum(c_i * p^i) of the coordinates in the polynomial basis, and every
"smallest element" rule in the toolkit (primitive element, square-root branch,
affine shift) compares elements by that integer.
"""
import functools
import logging
import math
from dataclasses import dataclass, field

import galois
import numpy as np

from . import config
from .errors import (
    EvenCharacteristic,
    FieldError,
    InternalCrossCheckFailed,
    NotAPrimePower,
    NotASubfieldDegree,
    NotInSubgroup,
    NotPrime,
    SizeCapExceeded,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Field:
    """F_{p^m} with its fixed modulus and primitive element theta."""

    p: int
    m: int
    modulus: tuple     # ascending coefficients in F_p, monic, length m + 1
    theta: int         # packed integer of the primitive element
    GF: type = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def zero(self):
        return self.GF(0)

    @property
    def one(self):
        return self.GF(1)

    @property
    def minus_one(self):
        return -self.GF(1)

    @property
    def primitive(self):
        return self.GF(self.theta)

    def element(self, x):
        if isinstance(x, self.GF):
            return x
        if isinstance(x, galois.FieldArray):
            raise FieldError(f"element from {type(x).name} used in F_{self.q}")
        return self.GF(x)

    def ints(self, x) -> np.ndarray:
        return np.asarray(self.element(x).view(np.ndarray), dtype=np.int64)

    def coeffs(self, x) -> tuple:
        """Coordinates of x in the polynomial basis, lowest degree first."""
        v = int(self.element(x))
        out = []
        for _ in range(self.m):
            v, c = divmod(v, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, coeffs):
        if len(coeffs) > self.m or any(not 0 <= int(c) < self.p for c in coeffs):
            raise FieldError(f"{tuple(coeffs)} are not coordinates in F_{self.q}")
        return self.GF(sum(int(c) * self.p ** i for i, c in enumerate(coeffs)))

    @property
    def modulus_poly(self) -> galois.Poly:
        return galois.Poly(list(self.modulus), field=galois.GF(self.p), order="asc")

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "theta": self.theta}

    def __str__(self):
        return f"F_{self.q}"


def make_field(p: int, m: int = 1, size_cap: int | None = None) -> Field:
    """
    Build F_{p^m}: the modulus is the first monic irreducible polynomial of
    degree m in ascending packed order, theta the smallest generator of F_q^*.
    Repeated calls return the same object.
    """
    return _make_field(int(p), int(m), int(size_cap or config.SIZE_CAP))


@functools.lru_cache(maxsize=None)
def _make_field(p: int, m: int, size_cap: int) -> Field:
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    q = p ** m
    if q > size_cap:
        raise SizeCapExceeded(f"q = {q} exceeds the size cap {size_cap}")

    poly = next(galois.irreducible_polys(p, m))
    if not poly.is_irreducible():
        raise InternalCrossCheckFailed(f"modulus {poly} of F_{q} is reducible")
    modulus = tuple(int(c) for c in poly.coeffs[::-1])

    base = galois.GF(p) if m == 1 else galois.GF(q, irreducible_poly=poly)
    theta = _smallest_generator(base, q)

    if m == 1:
        GF = galois.GF(p, primitive_element=theta)
    else:
        GF = galois.GF(q, irreducible_poly=poly, primitive_element=theta)

    logger.debug(f"[GF] F_{q}: modulus {modulus} theta {theta}")
    return Field(p=p, m=m, modulus=modulus, theta=theta, GF=GF)


def _smallest_generator(GF, q: int) -> int:
    order = q - 1
    primes, _ = galois.factors(order)
    cofactors = [order // r for r in primes]
    for x in range(1, q):
        a = GF(x)
        if all(int(a ** e) != 1 for e in cofactors):
            return x
    raise InternalCrossCheckFailed(f"no generator found in F_{q}")


def field_for_order(q: int, size_cap: int | None = None) -> Field:
    q = int(q)
    if q < 2 or not galois.is_prime_power(q):
        raise NotAPrimePower(f"{q} is not a prime power")
    primes, exps = galois.factors(q)
    return make_field(int(primes[0]), int(exps[0]), size_cap)


def field_from_dict(d: dict, size_cap: int | None = None) -> Field:
    F = make_field(d["p"], d["m"], size_cap)
    if list(d.get("modulus", F.modulus)) != list(F.modulus) or int(d.get("theta", F.theta)) != F.theta:
        raise FieldError(f"serialized field {d} does not match the construction of {F}")
    return F


# ===== CHARACTERS AND ROOTS =====
def quadratic_character(F: Field, x) -> int:
    """eta(x): 0 at zero, +1 on non-zero squares, -1 otherwise."""
    x = F.element(x)
    if int(x) == 0:
        return 0
    return 1 if int(x ** ((F.q - 1) // 2)) == 1 else -1


def quadratic_characters(F: Field, xs) -> np.ndarray:
    xs = F.element(xs)
    raw = (xs ** ((F.q - 1) // 2)).view(np.ndarray)
    out = np.where(raw == 1, 1, -1).astype(np.int64)
    out[xs.view(np.ndarray) == 0] = 0
    return out


def sqrt(F: Field, x):
    """
    Canonical square root (the smaller of y, -y by packed integer), or None
    when x is a non-square.
    """
    x = F.element(x)
    if int(x) == 0:
        return F.zero
    if quadratic_character(F, x) != 1:
        return None

    q = F.q
    if q % 4 == 3:
        y = x ** ((q + 1) // 4)
    else:
        # Tonelli-Shanks; theta is a non-residue
        odd, s = q - 1, 0
        while odd % 2 == 0:
            odd //= 2
            s += 1
        c = F.primitive ** odd
        t = x ** odd
        y = x ** ((odd + 1) // 2)
        while int(t) != 1:
            i, t2 = 1, t * t
            while int(t2) != 1:
                t2 = t2 * t2
                i += 1
            b = c ** (2 ** (s - i - 1))
            s = i
            c = b * b
            t = t * c
            y = y * b

    if int(y * y) != int(x):
        raise InternalCrossCheckFailed(f"sqrt({int(x)}) in {F} returned {int(y)}")
    neg = -y
    return y if int(y) <= int(neg) else neg


# ===== SUBSTRUCTURES =====
def subfield_elements(F: Field, s: int):
    """F_{p^s} inside F_q in a fixed order: 0, then beta^0, beta^1, ..."""
    if s < 1 or F.m % s:
        raise NotASubfieldDegree(f"s = {s} does not divide m = {F.m}")
    size = F.p ** s
    beta = F.primitive ** ((F.q - 1) // (size - 1))
    out = F.GF.Zeros(size)
    out[1:] = beta ** np.arange(size - 1)
    return out


def subgroup_dlog(F: Field, e1: int, a, scan_limit: int | None = None) -> int:
    """
    Least x in [0, e2) with a = theta^(e1 * x), where e2 = (q - 1) / e1,
    i.e. the index of a in the cyclic subgroup of order e2.
    """
    q1 = F.q - 1
    if e1 < 1 or q1 % e1:
        raise NotInSubgroup(f"e1 = {e1} does not divide q - 1 = {q1}")
    e2 = q1 // e1
    a = F.element(a)
    if int(a) == 0 or int(a ** e2) != 1:
        raise NotInSubgroup(f"{int(a)} is not in the subgroup of order {e2} of {F}")

    g = F.primitive ** e1
    limit = config.DLOG_SCAN_LIMIT if scan_limit is None else scan_limit
    if e2 <= limit:
        powers = (g ** np.arange(e2)).view(np.ndarray)
        return int(np.flatnonzero(powers == int(a))[0])

    # baby-step giant-step
    step = math.isqrt(e2) + 1
    table = {}
    for j, v in enumerate((g ** np.arange(step)).view(np.ndarray).tolist()):
        table.setdefault(int(v), j)
    giant = (g ** step) ** -1
    gamma = a
    for i in range(step):
        j = table.get(int(gamma))
        if j is not None:
            return (i * step + j) % e2
        gamma = gamma * giant
    raise InternalCrossCheckFailed(f"discrete log of {int(a)} not found in {F}")
