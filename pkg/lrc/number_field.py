# lrc/number_field.py

from __future__ import annotations
import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Poly, Symbol, integer_nthroot, nextprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_irreducible_p

from lrc.config import DEFAULTS
from lrc.errors import (
    FieldMismatch,
    FormatError,
    InvalidInput,
    NotIrreducible,
    ZeroDiscriminant,
)

logger = logging.getLogger(__name__)

_X = Symbol("x")


@dataclass(frozen=True)
class NumberField:
    """
    K = Q(alpha), alpha a root of the monic m(x) = b_0 + b_1 x + ... + x^degree.

    Build it with ``nf_new``; the constructor itself does no validation.

    Attributes:
        degree:          delta >= 2
        min_poly_coeffs: (b_0, ..., b_{delta-1}); the leading 1 is implicit
        coeff_bound:     S = max |b_i|
        c_alpha:         integer upper bound for delta^(delta/2) (1+S)^((delta-1)delta/2)
        discriminant:    (-1)^(delta(delta-1)/2) Res(m, m')
        certified_by:    prime p with m irreducible mod p, or None if accepted by override
    """
    degree:          int
    min_poly_coeffs: Tuple[int, ...]
    coeff_bound:     int
    c_alpha:         int
    discriminant:    int
    certified_by:    Optional[int] = dc_field(default=None, compare=False)

    def poly_desc(self) -> List[int]:
        """Coefficients of m(x), highest degree first (leading 1 included)."""
        return [1] + list(reversed(self.min_poly_coeffs))

    def __str__(self) -> str:
        terms = [f"x^{self.degree}"]
        for i in range(self.degree - 1, -1, -1):
            b = self.min_poly_coeffs[i]
            if b == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            sign = "-" if b < 0 else "+"
            mag = abs(b)
            coef = str(mag) if (mag != 1 or i == 0) else ""
            terms.append(f"{sign} {coef}{mono}")
        return " ".join(terms)


@dataclass(frozen=True)
class AlgebraicInt:
    """sum coeffs[i] * alpha^i in Z[alpha]. Coefficients are unbounded."""
    field:  NumberField
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.degree:
            raise InvalidInput(
                f"[AlgebraicInt] expected {self.field.degree} coefficients, got {len(self.coeffs)}"
            )

    def __add__(self, other: AlgebraicInt) -> AlgebraicInt:
        return ai_add(self, other)

    def __sub__(self, other: AlgebraicInt) -> AlgebraicInt:
        return ai_sub(self, other)

    def __mul__(self, other: AlgebraicInt) -> AlgebraicInt:
        return ai_mul(self, other)

    def __neg__(self) -> AlgebraicInt:
        return AlgebraicInt(self.field, tuple(-z for z in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


# ─── field construction ─────────────────────────────────────────────────

def _c_alpha(degree: int, s_bound: int) -> int:
    """Exact C_alpha for even degree, ceil of it for odd degree."""
    tail = (1 + s_bound) ** ((degree - 1) * degree // 2)
    if degree % 2 == 0:
        return degree ** (degree // 2) * tail
    root, exact = integer_nthroot(degree ** degree * tail * tail, 2)
    return int(root) if exact else int(root) + 1


def _discriminant(poly_desc: List[int]) -> int:
    f = Poly(poly_desc, _X)
    delta = f.degree()
    res = int(f.resultant(f.diff(_X)))
    sign = -1 if (delta * (delta - 1) // 2) % 2 else 1
    return sign * res


def _has_rational_root(poly_desc: List[int]) -> bool:
    # monic, so rational roots are integers
    return bool(Poly(poly_desc, _X).ground_roots())


def _eval_monic(coeffs: Sequence[int], c: int) -> int:
    acc = 1
    for b in reversed(coeffs):
        acc = acc * c + b
    return acc


def poly_irreducible_mod_p(poly_desc: Sequence[int], p: int) -> bool:
    """True iff the integer polynomial (highest degree first) is irreducible over F_p."""
    f = gf_from_int_poly([int(c) for c in poly_desc], p)
    if len(f) != len(poly_desc):
        return False  # leading coefficient vanished mod p
    return bool(gf_irreducible_p(f, p, ZZ))


def _irreducibility_certificate(poly_desc: List[int], discriminant: int, tries: int) -> Optional[int]:
    p, seen = 1, 0
    while seen < tries:
        p = int(nextprime(p))
        if discriminant % p == 0:
            continue
        seen += 1
        if poly_irreducible_mod_p(poly_desc, p):
            return p
    return None


def nf_new(min_poly_coeffs: Sequence[Any],
           *,
           allow_uncertified: bool = False,
           certificate_primes: int = DEFAULTS["irreducibility_primes"]) -> NumberField:
    """
    Build the number field of the monic polynomial b_0 + ... + b_{d-1} x^{d-1} + x^d.

    Args:
        min_poly_coeffs:    b_0 .. b_{d-1}; ints or decimal strings
        allow_uncertified:  accept a polynomial no mod-p test could certify irreducible
        certificate_primes: how many primes not dividing the discriminant to try

    Raises:
        InvalidInput:     empty list or degree < 2
        ZeroDiscriminant: m is not squarefree
        NotIrreducible:   m has a rational root, or no certificate and no override
    """
    try:
        coeffs = tuple(int(b) for b in min_poly_coeffs)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"[min_poly] non-integer coefficient: {exc}") from exc
    if len(coeffs) < 2:
        raise InvalidInput(f"[min_poly] degree must be >= 2, got {len(coeffs)}")

    degree = len(coeffs)
    poly_desc = [1] + list(reversed(coeffs))
    disc = _discriminant(poly_desc)
    if disc == 0:
        raise ZeroDiscriminant(f"[min_poly={coeffs}] polynomial is not squarefree")
    cert = _irreducibility_certificate(poly_desc, disc, certificate_primes)
    if cert is None:
        if _has_rational_root(poly_desc):
            raise NotIrreducible(f"[min_poly={coeffs}] polynomial has a rational root")
        logger.warning(f"[min_poly={coeffs}] no mod-p irreducibility certificate "
                       f"among {certificate_primes} primes")
        if not allow_uncertified:
            raise NotIrreducible(
                f"[min_poly={coeffs}] irreducibility not certified; pass allow_uncertified to accept"
            )
    else:
        logger.debug(f"[min_poly={coeffs}] irreducible mod {cert}")

    s_bound = max(abs(b) for b in coeffs)
    return NumberField(
        degree=degree,
        min_poly_coeffs=coeffs,
        coeff_bound=s_bound,
        c_alpha=_c_alpha(degree, s_bound),
        discriminant=disc,
        certified_by=cert,
    )


def min_poly_eval(field: NumberField, c: int) -> int:
    """m(c) over the integers."""
    return _eval_monic(field.min_poly_coeffs, c)


def field_to_json(field: NumberField) -> Dict[str, Any]:
    return {
        "min_poly": [str(b) for b in field.min_poly_coeffs],
        "degree":   field.degree,
    }


def field_from_json(obj: Dict[str, Any], *, allow_uncertified: bool = False) -> NumberField:
    try:
        coeffs = obj["min_poly"]
        degree = int(obj["degree"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"[field json] {exc}") from exc
    if len(coeffs) != degree:
        raise FormatError(f"[field json] degree {degree} but {len(coeffs)} coefficients")
    return nf_new(coeffs, allow_uncertified=allow_uncertified)


# ─── arithmetic in Z[alpha] ─────────────────────────────────────────────

def ai_from_coeffs(field: NumberField, coeffs: Sequence[int]) -> AlgebraicInt:
    return AlgebraicInt(field, tuple(int(z) for z in coeffs))


def ai_from_int(field: NumberField, c: int) -> AlgebraicInt:
    return AlgebraicInt(field, (int(c),) + (0,) * (field.degree - 1))


def ai_alpha(field: NumberField) -> AlgebraicInt:
    return AlgebraicInt(field, (0, 1) + (0,) * (field.degree - 2))


def _check_same_field(a: AlgebraicInt, b: AlgebraicInt) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"[{a.field}] vs [{b.field}] operands live in different fields")


def ai_add(a: AlgebraicInt, b: AlgebraicInt) -> AlgebraicInt:
    _check_same_field(a, b)
    return AlgebraicInt(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def ai_sub(a: AlgebraicInt, b: AlgebraicInt) -> AlgebraicInt:
    _check_same_field(a, b)
    return AlgebraicInt(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def times_alpha(field: NumberField, w: Sequence[int]) -> Tuple[int, ...]:
    """
    w * alpha reduced with m(alpha) = 0:
    w*alpha = -b_0 w_{d-1} + sum_{i>=1} (w_{i-1} - b_i w_{d-1}) alpha^i
    """
    top = w[-1]
    b = field.min_poly_coeffs
    return (-b[0] * top,) + tuple(w[i - 1] - b[i] * top for i in range(1, field.degree))


def _mul_recurrence(a: AlgebraicInt, b: AlgebraicInt) -> Tuple[int, ...]:
    acc = [0] * a.field.degree
    power = b.coeffs
    for i, z in enumerate(a.coeffs):
        if z:
            acc = [x + z * y for x, y in zip(acc, power)]
        if i < a.field.degree - 1:
            power = times_alpha(a.field, power)
    return tuple(acc)


def _mul_poly(a: AlgebraicInt, b: AlgebraicInt) -> Tuple[int, ...]:
    fa = Poly(list(reversed(a.coeffs)), _X)
    fb = Poly(list(reversed(b.coeffs)), _X)
    rem = (fa * fb).rem(Poly(a.field.poly_desc(), _X))
    low_first = [int(c) for c in reversed(rem.all_coeffs())]
    return tuple(low_first + [0] * (a.field.degree - len(low_first)))


def ai_mul(a: AlgebraicInt, b: AlgebraicInt, *, method: str = "recurrence") -> AlgebraicInt:
    """
    Product in Z[alpha], reduced to degree < delta.

    method="recurrence" repeatedly multiplies by alpha; method="poly" multiplies
    the polynomials and divides by m. Both give the same result.
    """
    _check_same_field(a, b)
    if method == "recurrence":
        return AlgebraicInt(a.field, _mul_recurrence(a, b))
    if method == "poly":
        return AlgebraicInt(a.field, _mul_poly(a, b))
    raise InvalidInput(f"[ai_mul] unknown method={method}")


def multiplication_matrix(y: AlgebraicInt) -> List[List[int]]:
    """Columns are the coefficient vectors of y, y*alpha, ..., y*alpha^(d-1)."""
    cols = [y.coeffs]
    for _ in range(y.field.degree - 1):
        cols.append(times_alpha(y.field, cols[-1]))
    d = y.field.degree
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def ai_norm(y: AlgebraicInt) -> int:
    """N(y) = det of the multiplication-by-y matrix (fraction-free Bareiss)."""
    return int(Matrix(multiplication_matrix(y)).det(method="bareiss"))


def norm_bound(field: NumberField, M: int) -> int:
    """C_alpha * (M-1)^delta, bounding |N(y)| whenever every |z_i| < M."""
    if M < 1:
        raise InvalidInput(f"[norm_bound] M must be >= 1, got {M}")
    return field.c_alpha * (M - 1) ** field.degree


def column_bound(field: NumberField, M: int, column: int) -> int:
    """Bound (M-1)(1+S)^column on the entries of column `column` (0-based) of A_y."""
    return (M - 1) * (1 + field.coeff_bound) ** column
