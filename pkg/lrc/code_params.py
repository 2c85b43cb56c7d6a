# lrc/code_params.py

from __future__ import annotations
import itertools
import logging
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sympy import integer_nthroot

from lrc.errors import (
    DegreeMismatch,
    FormatError,
    InvalidFamily,
    InvalidInput,
    InvariantViolation,
    LrcError,
    MTooSmall,
    NotSplit,
    SpecMismatch,
    Unsatisfiable,
)
from lrc.number_field import NumberField, field_from_json, field_to_json
from lrc.prime_tools import (
    SplitPrime,
    check_split_prime,
    next_split_primes,
    split_prime,
    split_prime_from_json,
    split_prime_to_json,
)

logger = logging.getLogger(__name__)

PrimeLike = Union[int, SplitPrime]


@dataclass(frozen=True)
class CodeSpec:
    """
    Parameters of C(r, s, K, M, {p_i}) plus everything derived from them.

    n = (r+1) * ell coordinates, M^(r(s+1)) codewords. `m` and `dist_lb` are None
    when the spec is not a good split code.
    """
    field:  NumberField
    r:      int
    s:      int
    M:      int
    primes: Tuple[SplitPrime, ...]

    n:             int            = dc_field(init=False)
    m:             Optional[int]  = dc_field(init=False)
    dist_lb:       Optional[int]  = dc_field(init=False)
    size_exponent: int            = dc_field(init=False)
    good:          bool           = dc_field(init=False)

    def __post_init__(self):
        _validate_inputs(self.field, self.r, self.s, self.M)
        if not self.primes:
            raise InvalidInput("[primes] a code needs at least one prime")
        ps = [sp.p for sp in self.primes]
        if ps != sorted(set(ps)):
            raise InvalidInput(f"[primes={ps}] must be strictly ascending")
        for sp in self.primes:
            if len(sp.roots) != self.field.degree:
                raise NotSplit(f"[p={sp.p}] has {len(sp.roots)} roots, need {self.field.degree}")

        good = _good(self.field, self.r, self.s, self.M, ps)
        m = _greedy_m(self.field, self.r, self.s, self.M, ps) if good else None
        n = (self.r + 1) * len(self.primes)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "dist_lb", None if m is None else n - m + 1)
        object.__setattr__(self, "size_exponent", self.r * (self.s + 1))
        object.__setattr__(self, "good", good)

    @property
    def ell(self) -> int:
        return len(self.primes)

    @property
    def coeff_modulus(self) -> int:
        """M^(s+1): every message coefficient u_i lies in [0, M^(s+1))."""
        return self.M ** (self.s + 1)

    @property
    def size(self) -> int:
        return self.M ** self.size_exponent


@dataclass(frozen=True)
class FamilyParams:
    """Parameters (c, k, s) of the family C_ell with M_ell = floor((k P_ell / P_floor(c ell))^(1/(s+1)))."""
    field: NumberField
    r:     int
    s:     int
    c:     Fraction
    k:     Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "k", Fraction(self.k))
        if self.field.degree != self.r + 1:
            raise DegreeMismatch(f"[r={self.r}] field degree {self.field.degree} != r+1")
        if self.s < 0:
            raise InvalidFamily(f"[s={self.s}] must be >= 0")
        if not (0 < self.c < 1):
            raise InvalidFamily(f"[c={self.c}] must lie in (0,1)")
        if self.k <= 0:
            raise InvalidFamily(f"[k={self.k}] must be positive")
        if self.k ** (self.r + 1) * self.field.c_alpha >= 1:
            raise InvalidFamily(
                f"[k={self.k}] need k^(r+1) * C_alpha < 1, got {self.k ** (self.r + 1) * self.field.c_alpha}"
            )


@dataclass(frozen=True)
class AmbientReport:
    lb:    int
    tight: bool


# ─── validation helpers ────────────────────────────────────────────────

def _validate_inputs(field: NumberField, r: int, s: int, M: int) -> None:
    if r < 1:
        raise InvalidInput(f"[r={r}] locality must be >= 1")
    if field.degree != r + 1:
        raise DegreeMismatch(f"[r={r}] field degree {field.degree} != r+1")
    if s < 0:
        raise InvalidInput(f"[s={s}] must be >= 0")
    if M < 2:
        raise InvalidInput(f"[M={M}] must be >= 2")


def _as_split_primes(field: NumberField, primes: Sequence[PrimeLike]) -> List[SplitPrime]:
    ps = [p.p if isinstance(p, SplitPrime) else int(p) for p in primes]
    if len(set(ps)) != len(ps):
        raise InvalidInput(f"[primes={ps}] duplicates")
    out = []
    for p in primes:
        if isinstance(p, SplitPrime):
            check_split_prime(field, p)
            out.append(p)
        else:
            out.append(split_prime(field, int(p)))
    return out


def _norm_bound(field: NumberField, r: int, s: int, M: int) -> int:
    return field.c_alpha * (M ** (s + 1) - 1) ** (r + 1)


def _good(field: NumberField, r: int, s: int, M: int, ps: Sequence[int]) -> bool:
    return math.prod(ps) ** (r + 1) > _norm_bound(field, r, s, M)


def _ideal_norms(r: int, ps: Sequence[int]) -> List[int]:
    return [p for p in ps for _ in range(r + 1)]


def _greedy_m(field: NumberField, r: int, s: int, M: int, ps: Sequence[int]) -> int:
    bound = _norm_bound(field, r, s, M)
    prod = 1
    for t, norm in enumerate(sorted(_ideal_norms(r, ps)), start=1):
        prod *= norm
        if prod > bound:
            logger.debug(f"[m] prefix of {t} smallest norms reaches {prod} > {bound}")
            return t
    raise Unsatisfiable(f"[m] full norm product {prod} does not exceed {bound}")


def _exhaustive_m(field: NumberField, r: int, s: int, M: int, ps: Sequence[int]) -> int:
    bound = _norm_bound(field, r, s, M)
    norms = _ideal_norms(r, ps)
    for t in range(1, len(norms) + 1):
        if all(math.prod(T) > bound for T in itertools.combinations(norms, t)):
            return t
    raise Unsatisfiable(f"[m] no subset size covers the bound {bound}")


# ─── operations ────────────────────────────────────────────────────────

def good_split_check(field: NumberField,
                     r: int,
                     s: int,
                     M: int,
                     primes: Sequence[PrimeLike]) -> Tuple[bool, Fraction]:
    """
    Is C(r, s, K, M, primes) a good split code?

    Returns:
        (good, margin) where margin = (prod p_i)^(r+1) / (C_alpha (M^(s+1)-1)^(r+1))
        as an exact Fraction (infinite bound side is impossible since M >= 2).

    Raises:
        DegreeMismatch, NotSplit
    """
    _validate_inputs(field, r, s, M)
    sps = _as_split_primes(field, primes)
    lhs = math.prod(sp.p for sp in sps) ** (r + 1)
    rhs = _norm_bound(field, r, s, M)
    margin = Fraction(lhs, rhs)
    logger.debug(f"[good_split_check] lhs={lhs} rhs={rhs} margin={float(margin):.4g}")
    return lhs > rhs, margin


def compute_m(field: NumberField,
              r: int,
              s: int,
              M: int,
              primes: Sequence[PrimeLike],
              *,
              exhaustive: bool = False) -> int:
    """
    Covering cardinality: the smallest t such that every t ideals above the primes
    have norm product > C_alpha (M^(s+1)-1)^(r+1).

    The t smallest norms give the smallest t-product, so the greedy prefix over the
    ascending norm list is exact; `exhaustive=True` checks every subset instead.
    """
    _validate_inputs(field, r, s, M)
    ps = [sp.p for sp in _as_split_primes(field, primes)]
    if exhaustive:
        return _exhaustive_m(field, r, s, M, ps)
    return _greedy_m(field, r, s, M, ps)


def min_cover_size(field: NumberField, r: int, s: int, M: int, primes: Sequence[PrimeLike]) -> int:
    """
    Size of the smallest single set of ideals whose norm product exceeds the bound
    (largest norms first). Reported as metadata; it does not bound the distance.
    """
    _validate_inputs(field, r, s, M)
    ps = [sp.p for sp in _as_split_primes(field, primes)]
    bound = _norm_bound(field, r, s, M)
    prod = 1
    for t, norm in enumerate(sorted(_ideal_norms(r, ps), reverse=True), start=1):
        prod *= norm
        if prod > bound:
            return t
    raise Unsatisfiable(f"[min_cover] full norm product does not exceed {bound}")


def design_code(field: NumberField, r: int, s: int, M: int, primes: Sequence[PrimeLike]) -> CodeSpec:
    """CodeSpec from raw inputs; ints are turned into SplitPrimes (sorted)."""
    _validate_inputs(field, r, s, M)
    sps = sorted(_as_split_primes(field, primes), key=lambda sp: sp.p)
    spec = CodeSpec(field=field, r=r, s=s, M=M, primes=tuple(sps))
    logger.info(f"[design] r={r} s={s} M={M} primes={[sp.p for sp in sps]} good={spec.good} m={spec.m}")
    return spec


def ambient_distance_report(spec: CodeSpec) -> AmbientReport:
    """
    Distance data of the ambient code D(K, M^(s+1), ideals): lower bound n - m + 1 and
    whether the m-1 smallest norms multiply to less than (M^(s+1))^delta.
    """
    if not spec.good or spec.m is None:
        raise InvalidInput("[ambient] spec is not a good split code")
    norms = sorted(_ideal_norms(spec.r, [sp.p for sp in spec.primes]))
    tight = math.prod(norms[: spec.m - 1]) < spec.coeff_modulus ** spec.field.degree
    return AmbientReport(lb=spec.n - spec.m + 1, tight=tight)


def _split_prefix(field: NumberField, ell: int) -> List[SplitPrime]:
    return next_split_primes(field, ell, 2)


def design_family(fp: FamilyParams, ell: int, *, primes: Optional[Sequence[SplitPrime]] = None) -> CodeSpec:
    """
    The ell-th member C_ell of the family: first ell split primes and
    M_ell = floor((k * P_ell / P_floor(c*ell))^(1/(s+1))).

    Raises:
        MTooSmall: M_ell < 2
    """
    if ell < 1:
        raise InvalidInput(f"[ell={ell}] must be >= 1")
    sps = list(primes[:ell]) if primes is not None else _split_prefix(fp.field, ell)
    if len(sps) < ell:
        raise InvalidInput(f"[ell={ell}] only {len(sps)} primes supplied")
    ps = [sp.p for sp in sps]
    cut = math.floor(fp.c * ell)
    if cut == 0:
        logger.warning(f"[ell={ell}] floor(c * ell) = 0; the member is far from the limiting rate")
    p_all = math.prod(ps)
    p_cut = math.prod(ps[:cut])  # empty product is 1
    radicand = math.floor(fp.k * Fraction(p_all, p_cut))
    M = int(integer_nthroot(radicand, fp.s + 1)[0]) if radicand > 0 else 0
    if M < 2:
        raise MTooSmall(f"[ell={ell}] M_ell = {M} < 2")

    spec = CodeSpec(field=fp.field, r=fp.r, s=fp.s, M=M, primes=tuple(sps))
    if not spec.good:
        raise InvariantViolation(f"[ell={ell}] family member with M={M} is not good")
    tail = math.prod(ps[cut:]) ** (fp.r + 1)
    if not tail > _norm_bound(fp.field, fp.r, fp.s, M):
        raise InvariantViolation(f"[ell={ell}] tail primes do not cover the norm bound")
    logger.info(f"[family] ell={ell} M={M} m={spec.m} rate={rate(spec):.4f}")
    return spec


def rate(spec: CodeSpec) -> float:
    """log #C / log #R = r(s+1) log M / ((r+1) log P_ell); float, ~1e-12 relative error."""
    log_p = sum(math.log(sp.p) for sp in spec.primes)
    return spec.size_exponent * math.log(spec.M) / ((spec.r + 1) * log_p)


def family_rate_limit(fp: FamilyParams) -> Fraction:
    """r(1-c)/(r+1), the limiting rate of the family."""
    return Fraction(fp.r) * (1 - fp.c) / (fp.r + 1)


def family_table(fp: FamilyParams, ells: Sequence[int]) -> List[Dict[str, Any]]:
    """One row per ell: M_ell, m, distance lower bound and rate."""
    sps = _split_prefix(fp.field, max(ells))
    rows = []
    for ell in ells:
        spec = design_family(fp, ell, primes=sps)
        rows.append({
            "ell":     ell,
            "p_ell":   spec.primes[-1].p,
            "M":       spec.M,
            "n":       spec.n,
            "m":       spec.m,
            "dist_lb": spec.dist_lb,
            "rate":    rate(spec),
        })
    return rows


# ─── JSON ──────────────────────────────────────────────────────────────

def spec_to_json(spec: CodeSpec) -> Dict[str, Any]:
    return {
        "field":  field_to_json(spec.field),
        "r":      spec.r,
        "s":      spec.s,
        "M":      str(spec.M),
        "primes": [split_prime_to_json(sp) for sp in spec.primes],
        "derived": {
            "n":       spec.n,
            "m":       spec.m,
            "dist_lb": spec.dist_lb,
            "good":    spec.good,
        },
    }


def spec_from_json(obj: Dict[str, Any], *, allow_uncertified: bool = False) -> CodeSpec:
    """Load a CodeSpec; the derived block, if present, must match the recomputation."""
    try:
        field = field_from_json(obj["field"], allow_uncertified=allow_uncertified)
        r, s, M = int(obj["r"]), int(obj["s"]), int(obj["M"])
        sps = [split_prime_from_json(o) for o in obj["primes"]]
    except LrcError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"[spec json] {exc}") from exc
    _validate_inputs(field, r, s, M)
    for sp in sps:
        check_split_prime(field, sp)
    spec = CodeSpec(field=field, r=r, s=s, M=M, primes=tuple(sps))

    derived = obj.get("derived")
    if derived is not None:
        expected = spec_to_json(spec)["derived"]
        for key, val in expected.items():
            if derived.get(key) != val:
                raise SpecMismatch(f"[derived.{key}] file says {derived.get(key)}, recomputed {val}")
    return spec
