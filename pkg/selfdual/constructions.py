# selfdual/constructions.py
"""
Recipes for evaluation sets whose GRS / extended GRS codes are MDS self-dual.

Two families:
  - affine lifts: a small base set A inside a subfield F_{p^s}, spread over the
    cosets a*alpha + H of an F_{p^s}-subspace H of dimension l;
  - coset lifts: A inside the subgroup H1 = <theta^e1>, replaced by the
    multiplicative cosets theta^nu(a) * H2 with H2 = <theta^e2>, optionally
    together with 0.
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum

import galois
import numpy as np

from .codes import EvalSet
from .errors import (
    AlphaInSubspace,
    CosetCollision,
    InternalCrossCheckFailed,
    NotASubfieldDegree,
    NotInSubfield,
    NotInSubgroup,
    RecipeNotApplicable,
    UnknownRecipe,
)
from .gf import Field, quadratic_character, quadratic_characters, subfield_elements, subgroup_dlog
from .polyring import delta_table

logger = logging.getLogger(__name__)


class RecipeKind(str, Enum):
    THM1A = "Thm1a"
    THM1B = "Thm1b"
    THM2 = "Thm2"
    THM3_ODD = "Thm3odd"
    THM3_EVEN = "Thm3even"
    COR31 = "Cor31"
    THM4 = "Thm4"
    THM5_ODD = "Thm5odd"
    THM5_EVEN = "Thm5even"
    RMK34 = "Rmk34"
    LEMMA31_GENERIC = "Lemma31Generic"
    LEMMA32_GENERIC = "Lemma32Generic"
    LEMMA33_GENERIC = "Lemma33Generic"
    LEMMA34_GENERIC = "Lemma34Generic"


K = RecipeKind
KIND_ORDER = list(RecipeKind)
GENERIC_KINDS = {K.LEMMA31_GENERIC, K.LEMMA32_GENERIC, K.LEMMA33_GENERIC, K.LEMMA34_GENERIC}
NAMED_KINDS = [k for k in KIND_ORDER if k not in GENERIC_KINDS]

# base set in F_p, lifted over F_p-subspaces
PRIME_SUBFIELD_KINDS = {K.THM1A, K.THM1B, K.THM2, K.THM3_ODD, K.THM3_EVEN, K.COR31}
AFFINE_KINDS = PRIME_SUBFIELD_KINDS | {K.THM5_ODD, K.THM5_EVEN, K.LEMMA31_GENERIC, K.LEMMA32_GENERIC}
AFFINE_EXTENDED = {K.THM2, K.THM3_EVEN, K.COR31, K.THM5_EVEN, K.LEMMA32_GENERIC}
COSET_KINDS = {K.THM4, K.RMK34, K.LEMMA33_GENERIC, K.LEMMA34_GENERIC}

NEEDS_T = {K.THM3_ODD, K.THM3_EVEN, K.THM5_ODD, K.THM5_EVEN, K.RMK34,
           K.LEMMA31_GENERIC, K.LEMMA32_GENERIC, K.LEMMA33_GENERIC, K.LEMMA34_GENERIC}
NEEDS_E1 = COSET_KINDS


def parse_kind(name) -> RecipeKind:
    if isinstance(name, RecipeKind):
        return name
    for kind in RecipeKind:
        if kind.value.lower() == str(name).strip().lower():
            return kind
    raise UnknownRecipe(f"unknown recipe kind {name!r}; expected one of {[k.value for k in RecipeKind]}")


@dataclass(frozen=True)
class Recipe:
    kind: RecipeKind
    p: int
    m: int = 1
    s: int | None = None
    lift_dim: int | None = None      # "l": dimension of the lifting subspace
    t: int | None = None
    e1: int | None = None
    e2: int | None = None

    @property
    def q(self) -> int:
        return self.p ** self.m

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value, "p": self.p, "m": self.m}
        for key, value in (("s", self.s), ("l", self.lift_dim), ("t", self.t), ("e1", self.e1), ("e2", self.e2)):
            if value is not None:
                out[key] = value
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Recipe":
        return cls(
            kind=parse_kind(d["kind"]),
            p=int(d["p"]),
            m=int(d.get("m", 1)),
            s=d.get("s"),
            lift_dim=d.get("l"),
            t=d.get("t"),
            e1=d.get("e1"),
            e2=d.get("e2"),
        )

    @property
    def label(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in self.to_dict().items() if k not in ("kind", "p", "m"))
        return f"{self.kind.value}({params})" if params else self.kind.value


@dataclass(frozen=True)
class Applicability:
    ok: bool
    reason: str = ""
    unsupported: bool = False

    def __bool__(self):
        return self.ok


OK = Applicability(True)


def _no(reason: str, unsupported: bool = False) -> Applicability:
    return Applicability(False, reason, unsupported)


def make_recipe(F: Field, kind, *, s=None, lift_dim=None, t=None, e1=None, n=None) -> Recipe:
    """Fill defaults and drop parameters the kind does not use."""
    kind = parse_kind(kind)
    if kind == K.RMK34 and n is not None and t is None and e1 is None:
        t, e1 = rmk34_parameters(F.q, n)

    if kind in AFFINE_KINDS:
        s = 1 if s is None else int(s)
        lift_dim = 0 if lift_dim is None else int(lift_dim)
    else:
        s = lift_dim = None

    if kind in NEEDS_T and t is None:
        raise RecipeNotApplicable(f"{kind.value} needs t")
    if kind not in NEEDS_T:
        t = None

    e2 = None
    if kind in NEEDS_E1:
        if e1 is None:
            raise RecipeNotApplicable(f"{kind.value} needs e1")
        e1 = int(e1)
        if e1 >= 1 and (F.q - 1) % e1 == 0:
            e2 = (F.q - 1) // e1
    else:
        e1 = None

    return Recipe(kind=kind, p=F.p, m=F.m, s=s, lift_dim=lift_dim,
                  t=None if t is None else int(t), e1=e1, e2=e2)


# ===== SUBSPACES AND LIFTS =====
@dataclass(frozen=True, eq=False)
class SubspaceSpec:
    field: Field
    s: int
    basis: object       # FieldArray of the l basis vectors
    alpha: object       # shift outside the span
    elements: object    # FieldArray listing the whole span

    @property
    def dim(self) -> int:
        return len(self.basis)


def make_subspace(F: Field, s: int, lift_dim: int) -> SubspaceSpec:
    """
    Span over F_{p^s} of the first l basis vectors picked greedily from
    theta^0, theta^1, ..., and the smallest element outside that span.
    """
    if s < 1 or F.m % s:
        raise NotASubfieldDegree(f"s = {s} does not divide m = {F.m}")
    if not 0 <= lift_dim < F.m // s:
        raise RecipeNotApplicable(f"l = {lift_dim} outside [0, {F.m // s})")

    scalars = subfield_elements(F, s)
    span = F.GF.Zeros(1)
    basis = []
    j = 0
    while len(basis) < lift_dim:
        cand = F.primitive ** j
        if int(cand) not in set(span.view(np.ndarray).tolist()):
            basis.append(int(cand))
            span = (span[:, None] + (scalars * cand)[None, :]).reshape(-1)
        j += 1

    members = set(span.view(np.ndarray).tolist())
    alpha = 0
    while alpha in members:
        alpha += 1
    logger.debug(f"[LIFT] subspace over F_{F.p ** s} in {F}: basis {basis} alpha {alpha}")
    return SubspaceSpec(field=F, s=s, basis=F.GF(basis) if basis else F.GF.Zeros(0),
                        alpha=F.GF(alpha), elements=span)


def lift_affine(F: Field, A, H: SubspaceSpec) -> EvalSet:
    """B = union over a in A of (a * alpha + H), in A order then span order."""
    A = F.element(A)
    sub = set(subfield_elements(F, H.s).view(np.ndarray).tolist())
    outside = [int(a) for a in A if int(a) not in sub]
    if outside:
        raise NotInSubfield(f"{outside} are not in F_{F.p ** H.s}")
    span = H.elements
    if int(H.alpha) in set(span.view(np.ndarray).tolist()):
        raise AlphaInSubspace(f"alpha = {int(H.alpha)} lies in H")

    size = len(span)
    B = F.GF.Zeros(len(A) * size)
    for i, a in enumerate(A):
        B[i * size:(i + 1) * size] = a * H.alpha + span
    if len(np.unique(B.view(np.ndarray))) != len(B):
        raise CosetCollision("affine cosets overlap; base set has repeated points")
    return EvalSet(F, B)


def lift_cosets(F: Field, A, e1: int, include_zero: bool = False) -> EvalSet:
    """
    B = ({0} if include_zero) u union over a in A of theta^nu(a) * H2, where
    a = theta^(e1 * nu(a)) and H2 = <theta^e2> has order e1.
    """
    q1 = F.q - 1
    if e1 < 1 or q1 % e1:
        raise NotInSubgroup(f"e1 = {e1} does not divide q - 1 = {q1}")
    e2 = q1 // e1
    A = F.element(A)
    nus = [subgroup_dlog(F, e1, a) for a in A]
    if len(set(nus)) != len(nus):
        raise CosetCollision(f"repeated coset indices {nus}")

    exps = (np.array(nus, dtype=np.int64)[:, None] + e2 * np.arange(e1, dtype=np.int64)[None, :]).reshape(-1)
    points = F.primitive ** exps
    if include_zero:
        B = F.GF.Zeros(len(points) + 1)
        B[1:] = points
    else:
        B = points
    if len(np.unique(B.view(np.ndarray))) != len(B):
        raise CosetCollision("multiplicative cosets overlap")
    return EvalSet(F, B)


# ===== BASE SETS =====
def _frac(F: Field, num: int, den: int):
    if den % F.p == 0:
        raise RecipeNotApplicable(f"{den} is not invertible in characteristic {F.p}")
    return F.GF(num % F.p) / F.GF(den % F.p)


def _two_adic(x: int) -> tuple:
    k = 0
    while x % 2 == 0:
        x //= 2
        k += 1
    return k, x


def rmk34_parameters(q: int, n: int) -> tuple:
    """(t, e1) for an even divisor n of q - 1 below q - 1, with n = 2 * t * e1."""
    if q % 4 != 1:
        raise RecipeNotApplicable(f"q = {q} is not 1 mod 4")
    if n < 2 or n % 2 or (q - 1) % n or n >= q - 1:
        raise RecipeNotApplicable(f"n = {n} must be an even divisor of {q - 1} below it")
    k, _ = _two_adic(q - 1)
    k_n, r_n = _two_adic(n)
    if k_n < k:
        return 2 ** (k_n - 1), r_n
    return 1, 2 ** (k - 1) * r_n


def base_set(F: Field, recipe: Recipe):
    """The literal base set of the recipe, as a FieldArray (before lifting)."""
    kind, p = recipe.kind, F.p
    if kind == K.THM1A:
        return F.GF([0, int(_frac(F, p - 1, 3)), int(_frac(F, 2 * (p - 1), 3)), p - 1])
    if kind == K.THM1B:
        return F.GF([int(_frac(F, i * (p - 1), 5)) for i in range(6)])
    if kind == K.THM2:
        return F.GF([0, int(_frac(F, p - 1, 2)), p - 1])
    if kind in (K.THM3_ODD, K.THM3_EVEN):
        return F.GF(list(range(recipe.t + 1)))
    if kind == K.COR31:
        return F.GF([0, 1, 2, 3, 4])
    if kind in (K.THM5_ODD, K.THM5_EVEN):
        return lift_cosets(F, F.GF([1]), recipe.t, include_zero=True).points
    if kind == K.LEMMA31_GENERIC:
        return subfield_elements(F, recipe.s)[: 2 * recipe.t]
    if kind == K.LEMMA32_GENERIC:
        return subfield_elements(F, recipe.s)[: 2 * recipe.t + 1]

    theta = F.primitive
    if kind == K.THM4:
        g = theta ** recipe.e1
        return F.GF([1, int(F.minus_one), int(g), int(g ** -1)])
    if kind == K.RMK34:
        k, r = _two_adic(F.q - 1)
        k_n, _ = _two_adic(2 * recipe.t * recipe.e1)
        if k_n < k:
            g = theta ** (2 ** (k - k_n) * r)
            return g ** np.arange(2 ** k_n)
        return theta ** np.array([recipe.e1, 3 * recipe.e1])
    if kind == K.LEMMA33_GENERIC:
        step = 1 if recipe.e1 % 2 else 2
        return theta ** (recipe.e1 * step * np.arange(2 * recipe.t))
    if kind == K.LEMMA34_GENERIC:
        return theta ** (recipe.e1 * np.arange(recipe.t))
    raise UnknownRecipe(f"no base set for {kind}")


# ===== APPLICABILITY =====
def _affine_range(F: Field, recipe: Recipe) -> Applicability:
    s, lift_dim = recipe.s, recipe.lift_dim
    if s is None or s < 1 or F.m % s:
        return _no(f"s = {s} does not divide m = {F.m}")
    if recipe.kind in PRIME_SUBFIELD_KINDS and s != 1:
        return _no("base set lives in F_p, s must be 1")
    if lift_dim is None or not 0 <= lift_dim < F.m // s:
        return _no(f"l = {lift_dim} outside [0, {F.m // s})")
    return OK


def _extended_lift_ok(F: Field, recipe: Recipe) -> Applicability:
    if F.q % 4 == 1 or recipe.lift_dim % 2 == 0:
        return OK
    return _no(f"q = {F.q} is 3 mod 4 and l = {recipe.lift_dim} is odd", unsupported=True)


def _all_squares(F: Field, values, label: str) -> Applicability:
    for v in values:
        if quadratic_character(F, v) != 1:
            return _no(f"eta({label}) != 1 at {v}")
    return OK


def _grs_criterion(F: Field, A) -> bool:
    return len(set(quadratic_characters(F, delta_table(F, A).deltas).tolist())) == 1


def _egrs_criterion(F: Field, A) -> bool:
    return bool(np.all(quadratic_characters(F, -delta_table(F, A).deltas) == 1))


def _coset_range(F: Field, recipe: Recipe) -> Applicability:
    e1 = recipe.e1
    if e1 is None or e1 < 1 or (F.q - 1) % e1:
        return _no(f"e1 = {e1} does not divide q - 1 = {F.q - 1}")
    return OK


def applicable(F: Field, recipe: Recipe) -> Applicability:
    """Hypothesis check for the recipe over F; the reason names the failed clause."""
    if (recipe.p, recipe.m) != (F.p, F.m):
        return _no(f"recipe is for F_{recipe.q}, field is {F}")
    kind, p, q = recipe.kind, F.p, F.q

    if kind in AFFINE_KINDS:
        verdict = _affine_range(F, recipe)
        if not verdict:
            return verdict
    if kind in COSET_KINDS:
        verdict = _coset_range(F, recipe)
        if not verdict:
            return verdict
        e2 = (q - 1) // recipe.e1
        if recipe.e2 is None:
            recipe = replace(recipe, e2=e2)
        elif recipe.e2 != e2:
            return _no(f"e2 = {recipe.e2} is not (q - 1) / e1 = {e2}")
    if kind in NEEDS_T and recipe.t is None:
        return _no(f"{kind.value} needs t")

    if kind == K.THM1A:
        return OK if p % 12 == 1 else _no(f"p = {p} is not 1 mod 12")
    if kind == K.THM1B:
        return OK if p % 40 in (1, 9) else _no(f"p = {p} is not 1 or 9 mod 40")
    if kind == K.THM2:
        if p % 8 not in (1, 3):
            return _no(f"p = {p} is not 1 or 3 mod 8")
        return _extended_lift_ok(F, recipe)
    if kind in (K.THM3_ODD, K.THM3_EVEN):
        t = recipe.t
        if (t % 2 == 1) != (kind == K.THM3_ODD):
            return _no(f"t = {t} has the wrong parity for {kind.value}")
        if not 2 <= t <= p - 1:
            return _no(f"t = {t} outside [2, {p - 1}]")
        return _all_squares(F, [int(F.minus_one)] + list(range(2, t + 1)), "N")
    if kind == K.COR31:
        return OK if p % 24 == 1 else _no(f"p = {p} is not 1 mod 24")
    if kind == K.THM4:
        if p % 8 not in (1, 3):
            return _no(f"p = {p} is not 1 or 3 mod 8")
        if recipe.e1 % 2 == 0:
            return _no(f"e1 = {recipe.e1} is even")
        if recipe.e2 < 4:
            return _no(f"e2 = {recipe.e2} is below 4")
        return OK
    if kind in (K.THM5_ODD, K.THM5_EVEN):
        t, sub = recipe.t, p ** recipe.s - 1
        if t < 1 or sub % t:
            return _no(f"t = {t} does not divide p^s - 1 = {sub}")
        if kind == K.THM5_ODD:
            if t % 2 == 0:
                return _no(f"t = {t} is even")
            return _all_squares(F, [int(-F.GF(t % p))], "-t")
        if t % 2:
            return _no(f"t = {t} is odd")
        return _all_squares(F, [t % p, int(F.minus_one)], "t and -1")
    if kind == K.RMK34:
        try:
            expected = rmk34_parameters(q, 2 * recipe.t * recipe.e1)
        except RecipeNotApplicable as e:
            return _no(e.reason)
        if expected != (recipe.t, recipe.e1):
            return _no(f"(t, e1) = {(recipe.t, recipe.e1)} is not the decomposition {expected}")
        return OK
    if kind == K.LEMMA31_GENERIC:
        if not (1 <= recipe.t and 2 * recipe.t <= p ** recipe.s):
            return _no(f"2t = {2 * recipe.t} outside [2, {p ** recipe.s}]")
        if not _grs_criterion(F, base_set(F, recipe)):
            return _no("eta(Delta_A) not constant on the base set")
        return OK
    if kind == K.LEMMA32_GENERIC:
        if not (0 <= recipe.t and 2 * recipe.t + 1 <= p ** recipe.s):
            return _no(f"2t + 1 = {2 * recipe.t + 1} outside [1, {p ** recipe.s}]")
        if not _egrs_criterion(F, base_set(F, recipe)):
            return _no("eta(-Delta_A) != 1 on the base set")
        return _extended_lift_ok(F, recipe)
    if kind == K.LEMMA33_GENERIC:
        e1, e2, t = recipe.e1, recipe.e2, recipe.t
        if e1 % 2 == 0 and e2 % 2:
            return _no(f"e1 = {e1} even with e2 = {e2} odd")
        step = 1 if e1 % 2 else 2
        if t < 1 or step * (2 * t - 1) >= e2:
            return _no(f"2t = {2 * t} points do not fit in H1 of order {e2}")
        A = base_set(F, recipe)
        if e1 % 2 == 0:
            parities = {subgroup_dlog(F, e1, a) % 2 for a in A}
            if len(parities) != 1:
                return _no("coset indices of mixed parity")
        if not _grs_criterion(F, A):
            return _no("eta(Delta_A) not constant on the base set")
        return OK
    if kind == K.LEMMA34_GENERIC:
        return _zero_coset_ok(F, recipe)
    raise UnknownRecipe(f"no applicability rule for {kind}")


def _zero_coset_ok(F: Field, recipe: Recipe) -> Applicability:
    e1, e2, t = recipe.e1, recipe.e2, recipe.t
    if not 1 <= t <= e2:
        return _no(f"t = {t} outside [1, {e2}]")
    A = base_set(F, recipe)
    deltas = delta_table(F, A).deltas
    prod = F.one
    for a in A:
        prod = prod * a
    if t % 2 and e1 % 2:
        target = quadratic_character(F, prod)
        chars = quadratic_characters(F, -F.GF(e1 % F.p) * deltas * A)
        if not np.all(chars == target):
            return _no("eta(-e1 * Delta_A(a) * a) differs from eta(prod A)")
        return OK
    if quadratic_character(F, prod if t % 2 else -prod) != 1:
        return _no("eta((-1)^(t+1) * prod A) != 1")
    chars = quadratic_characters(F, -deltas * A)
    if not np.all(chars == quadratic_character(F, e1 % F.p)):
        return _no("eta(-Delta_A(a) * a) differs from eta(e1)")
    return OK


# ===== BUILD =====
def predicted_length(F: Field, recipe: Recipe) -> int:
    kind, p = recipe.kind, F.p
    if kind in AFFINE_KINDS:
        spread = p ** (recipe.s * recipe.lift_dim)
        base = {
            K.THM1A: 4, K.THM1B: 6, K.THM2: 3, K.COR31: 5,
            K.THM3_ODD: (recipe.t or 0) + 1, K.THM3_EVEN: (recipe.t or 0) + 1,
            K.THM5_ODD: (recipe.t or 0) + 1, K.THM5_EVEN: (recipe.t or 0) + 1,
            K.LEMMA31_GENERIC: 2 * (recipe.t or 0), K.LEMMA32_GENERIC: 2 * (recipe.t or 0) + 1,
        }[kind]
        return base * spread + (1 if kind in AFFINE_EXTENDED else 0)
    if kind == K.THM4:
        return 4 * recipe.e1
    if kind in (K.RMK34, K.LEMMA33_GENERIC):
        return 2 * recipe.t * recipe.e1
    if kind == K.LEMMA34_GENERIC:
        te = recipe.t * recipe.e1
        return te + 1 if (recipe.t % 2 and recipe.e1 % 2) else te + 2
    raise UnknownRecipe(f"no length law for {kind}")


def build(F: Field, recipe: Recipe, check: bool = True) -> tuple:
    """Evaluation set and extended flag; check=False skips the hypothesis test."""
    if check:
        verdict = applicable(F, recipe)
        if not verdict:
            raise RecipeNotApplicable(verdict.reason, verdict.unsupported)

    kind = recipe.kind
    A = base_set(F, recipe)
    if kind in AFFINE_KINDS:
        S = lift_affine(F, A, make_subspace(F, recipe.s, recipe.lift_dim))
        extended = kind in AFFINE_EXTENDED
    elif kind == K.LEMMA34_GENERIC:
        S = lift_cosets(F, A, recipe.e1, include_zero=True)
        extended = S.n % 2 == 1
    else:
        S = lift_cosets(F, A, recipe.e1)
        extended = False

    length = S.n + (1 if extended else 0)
    if length != predicted_length(F, recipe):
        raise InternalCrossCheckFailed(
            f"{recipe.label} over {F} built length {length}, expected {predicted_length(F, recipe)}"
        )
    logger.info(f"[RECIPE] {recipe.label} over {F}: |S| = {S.n}, extended = {extended}")
    return S, extended


# ===== ENUMERATION =====
def _candidates(F: Field, n_max: int, include_generic: bool):
    p, m, q = F.p, F.m, F.q
    mk = Recipe

    for lift_dim in range(m):
        spread = p ** lift_dim
        for kind in (K.THM1A, K.THM1B, K.THM2, K.COR31):
            yield mk(kind, p, m, s=1, lift_dim=lift_dim)
        for t in range(2, p):
            if (t + 1) * spread > n_max:
                break
            kind = K.THM3_ODD if t % 2 else K.THM3_EVEN
            yield mk(kind, p, m, s=1, lift_dim=lift_dim, t=t)

    for e1 in galois.divisors(q - 1):
        if e1 % 2 and 4 * e1 <= n_max:
            yield mk(K.THM4, p, m, e1=e1, e2=(q - 1) // e1)

    for s in galois.divisors(m):
        sub = p ** s - 1
        for lift_dim in range(m // s):
            spread = p ** (s * lift_dim)
            for t in galois.divisors(sub):
                if (t + 1) * spread > n_max:
                    break
                kind = K.THM5_ODD if t % 2 else K.THM5_EVEN
                yield mk(kind, p, m, s=s, lift_dim=lift_dim, t=t)

    if q % 4 == 1:
        for n in galois.divisors(q - 1):
            if n % 2 == 0 and n < q - 1 and n <= n_max:
                t, e1 = rmk34_parameters(q, n)
                yield mk(K.RMK34, p, m, t=t, e1=e1, e2=(q - 1) // e1)

    if not include_generic:
        return

    for s in galois.divisors(m):
        for lift_dim in range(m // s):
            spread = p ** (s * lift_dim)
            t = 1
            while 2 * t <= p ** s and 2 * t * spread <= n_max:
                yield mk(K.LEMMA31_GENERIC, p, m, s=s, lift_dim=lift_dim, t=t)
                t += 1
            t = 0
            while 2 * t + 1 <= p ** s and (2 * t + 1) * spread + 1 <= n_max:
                yield mk(K.LEMMA32_GENERIC, p, m, s=s, lift_dim=lift_dim, t=t)
                t += 1

    for e1 in galois.divisors(q - 1):
        e2 = (q - 1) // e1
        step = 1 if e1 % 2 else 2
        t = 1
        while 2 * t * e1 <= n_max and step * (2 * t - 1) < e2:
            yield mk(K.LEMMA33_GENERIC, p, m, t=t, e1=e1, e2=e2)
            t += 1
        t = 1
        while t <= e2 and t * e1 + 1 <= n_max:
            yield mk(K.LEMMA34_GENERIC, p, m, t=t, e1=e1, e2=e2)
            t += 1


def _sort_key(item):
    recipe, length = item
    return (length, KIND_ORDER.index(recipe.kind), recipe.s or 0, recipe.lift_dim or 0,
            recipe.t or 0, recipe.e1 or 0)


def _collect(F: Field, n_max: int, include_generic: bool, want_unsupported: bool) -> list:
    found = []
    for recipe in _candidates(F, n_max, include_generic):
        length = predicted_length(F, recipe)
        if length > n_max or length < 2:
            continue
        verdict = applicable(F, recipe)
        if want_unsupported and not verdict and verdict.unsupported:
            found.append((recipe, length))
        elif not want_unsupported and verdict:
            found.append((recipe, length))

    seen, out = set(), []
    for recipe, length in sorted(found, key=_sort_key):
        if (recipe.kind, length) in seen:
            continue
        seen.add((recipe.kind, length))
        out.append((recipe, length))
    return out


def enumerate_recipes(F: Field, n_max: int, include_generic: bool = False) -> list:
    """Applicable (recipe, length) pairs with length <= n_max, one per (kind, length)."""
    out = _collect(F, n_max, include_generic, want_unsupported=False)
    logger.info(f"[RECIPE] {F}: {len(out)} applicable recipes up to n = {n_max}")
    return out


def enumerate_unsupported(F: Field, n_max: int, include_generic: bool = False) -> list:
    """Points whose only failing clause is the q = 1 mod 4 or l-even requirement."""
    return _collect(F, n_max, include_generic, want_unsupported=True)

