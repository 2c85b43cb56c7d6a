# lrc/prime_tools.py

from __future__ import annotations
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from sympy import Poly, Symbol, isprime, nextprime
from sympy.core.intfunc import igcdex
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_edf_zassenhaus,
    gf_from_int_poly,
    gf_gcd,
    gf_irreducible_p,
    gf_pow_mod,
    gf_sub,
)

from lrc.config import DEFAULTS
from lrc.errors import FormatError, InvalidPrime, NotSplit, SearchLimitExceeded
from lrc.number_field import NumberField, nf_new, poly_irreducible_mod_p

logger = logging.getLogger(__name__)

_X = Symbol("x")


@dataclass(frozen=True)
class SplitPrime:
    """A totally split prime p and the roots beta_1 < ... < beta_delta of m mod p."""
    p:     int
    roots: Tuple[int, ...]


@dataclass(frozen=True)
class FieldConstructionCertificate:
    """
    Witness for a degree-delta polynomial in which every input prime splits.

    f = u1 * sum_i q_i prod_j (x - a_j) + u2 * q_{n+1} * g, with q_i = prod_{j != i} p_j
    over p_1..p_n and the auxiliary prime p_{n+1}. Polynomials are highest degree first.
    """
    delta:           int
    primes:          Tuple[int, ...]
    poly:            Tuple[int, ...]
    aux_prime:       int
    aux_irreducible: Tuple[int, ...]
    bezout:          Tuple[int, int]
    split_witnesses: Tuple[Tuple[int, ...], ...]

    def min_poly_coeffs(self) -> List[int]:
        """b_0 .. b_{delta-1}, the form nf_new expects."""
        return list(reversed(self.poly[1:]))


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


# ─── roots of m modulo p ───────────────────────────────────────────────

def _roots_by_scan(field: NumberField, p: int) -> List[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.ones(p, dtype=np.int64)
    for b in reversed(field.min_poly_coeffs):
        acc = (acc * xs + (b % p)) % p
    return [int(x) for x in np.flatnonzero(acc == 0)]


def _roots_by_gcd(field: NumberField, p: int) -> List[int]:
    f = gf_from_int_poly(field.poly_desc(), p)
    xp = gf_pow_mod([ZZ.one, ZZ.zero], p, f, p, ZZ)
    g = gf_gcd(gf_sub(xp, [ZZ.one, ZZ.zero], p, ZZ), f, p, ZZ)
    if len(g) <= 1:
        return []
    return sorted((-int(lin[1])) % p for lin in gf_edf_zassenhaus(g, 1, p, ZZ))


def roots_mod_p(field: NumberField,
                p: int,
                *,
                scan_limit: int = DEFAULTS["exhaustive_root_scan_limit"]) -> List[int]:
    """
    All x in F_p with m(x) = 0 mod p, ascending.

    Small primes are scanned exhaustively; larger ones go through
    gcd(x^p - x, m) and an equal-degree split of the linear part.
    """
    if p < scan_limit:
        return _roots_by_scan(field, p)
    return _roots_by_gcd(field, p)


def is_totally_split(field: NumberField, p: int, **kwargs) -> bool:
    """p does not divide the discriminant and m has delta distinct roots mod p."""
    if field.discriminant % p == 0:
        return False
    return len(roots_mod_p(field, p, **kwargs)) == field.degree


def split_prime(field: NumberField, p: int, **kwargs) -> SplitPrime:
    """Package p with its roots; raises NotSplit if p is not a totally split prime."""
    if not is_prime(p):
        raise InvalidPrime(f"[p={p}] not prime")
    if field.discriminant % p == 0:
        raise NotSplit(f"[p={p}] divides the discriminant {field.discriminant}")
    roots = roots_mod_p(field, p, **kwargs)
    if len(roots) != field.degree:
        raise NotSplit(f"[p={p}] not totally split in {field} ({len(roots)} roots)")
    return SplitPrime(p, tuple(roots))


def next_split_primes(field: NumberField,
                      count: int,
                      start: int = 2,
                      *,
                      ceiling: int = DEFAULTS["split_search_ceiling"],
                      **kwargs) -> List[SplitPrime]:
    """
    The first `count` totally split primes >= start, ascending, with their roots.

    Raises:
        SearchLimitExceeded: the ceiling is reached before `count` primes are found
    """
    if count < 1:
        raise InvalidPrime(f"[count={count}] must be >= 1")
    found: List[SplitPrime] = []
    p = int(nextprime(start - 1)) if start > 2 else 2
    while len(found) < count:
        if p > ceiling:
            raise SearchLimitExceeded(
                f"[{field}] only {len(found)} of {count} split primes below {ceiling}"
            )
        if field.discriminant % p:
            roots = roots_mod_p(field, p, **kwargs)
            if len(roots) == field.degree:
                found.append(SplitPrime(p, tuple(roots)))
        p = int(nextprime(p))
    logger.debug(f"[{field}] split primes from {start}: {[sp.p for sp in found]}")
    return found


def split_prime_to_json(sp: SplitPrime) -> Dict[str, Any]:
    return {"p": sp.p, "roots": list(sp.roots)}


def split_prime_from_json(obj: Dict[str, Any]) -> SplitPrime:
    try:
        return SplitPrime(int(obj["p"]), tuple(int(b) for b in obj["roots"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"[split prime json] {exc}") from exc


def check_split_prime(field: NumberField, sp: SplitPrime) -> None:
    """Raise NotSplit unless sp.roots are exactly the sorted roots of m mod sp.p."""
    expected = split_prime(field, sp.p)
    if expected.roots != tuple(sp.roots):
        raise NotSplit(f"[p={sp.p}] roots {list(sp.roots)} != {list(expected.roots)}")


# ─── explicit construction of a field with prescribed split primes ───────

def _first_irreducible(delta: int, p: int) -> List[int]:
    # lexicographic over (c_{delta-1}, ..., c_0), monic
    for tail in itertools.product(range(p), repeat=delta):
        g = [1] + list(tail)
        if gf_irreducible_p(g, p, ZZ):
            return g
    raise SearchLimitExceeded(f"[delta={delta}, p={p}] no irreducible polynomial found")


def construct_field(delta: int, primes: Sequence[int]) -> FieldConstructionCertificate:
    """
    Monic degree-delta f, irreducible over Z, with every input prime totally split.

    Uses residues 0..delta-1 as the prescribed roots at every p_i and the smallest
    prime outside the input as the auxiliary prime.

    Raises:
        InvalidPrime: a prime is not prime, repeated, or <= delta
    """
    primes = [int(p) for p in primes]
    if delta < 2:
        raise InvalidPrime(f"[delta={delta}] must be >= 2")
    if not primes:
        raise InvalidPrime("[primes] at least one prime is required")
    if len(set(primes)) != len(primes):
        raise InvalidPrime(f"[primes={primes}] duplicates")
    for p in primes:
        if not is_prime(p):
            raise InvalidPrime(f"[p={p}] not prime")
        if p <= delta:
            raise InvalidPrime(f"[p={p}] must exceed delta={delta}")

    aux = 2
    while aux in primes:
        aux = int(nextprime(aux))
    g = _first_irreducible(delta, aux)

    everyone = primes + [aux]
    total = math.prod(everyone)
    q = [total // p for p in everyone]
    u1, u2, h = igcdex(sum(q[:-1]), q[-1])
    if h != 1:
        raise InvalidPrime(f"[primes={primes}] q-sum not coprime to q_aux")
    u1, u2 = int(u1), int(u2)

    prescribed = [int(c) for c in Poly(math.prod(_X - a for a in range(delta)), _X).all_coeffs()]

    f = [0] * (delta + 1)
    for qi in q[:-1]:
        f = [c + u1 * qi * t for c, t in zip(f, prescribed)]
    f = [c + u2 * q[-1] * t for c, t in zip(f, g)]
    logger.debug(f"[delta={delta}, primes={primes}] aux={aux}, g={g}, f={f}")

    # the auxiliary prime certifies irreducibility, so no override is needed
    field = nf_new(list(reversed(f[1:])))
    witnesses = tuple(tuple(roots_mod_p(field, p)) for p in primes)
    return FieldConstructionCertificate(
        delta=delta,
        primes=tuple(primes),
        poly=tuple(f),
        aux_prime=aux,
        aux_irreducible=tuple(g),
        bezout=(u1, u2),
        split_witnesses=witnesses,
    )


def verify_certificate(cert: FieldConstructionCertificate) -> bool:
    """Recheck every claim of a construction certificate from scratch."""
    everyone = list(cert.primes) + [cert.aux_prime]
    total = math.prod(everyone)
    q = [total // p for p in everyone]
    u1, u2 = cert.bezout
    if u1 * sum(q[:-1]) + u2 * q[-1] != 1:
        return False
    if len(cert.poly) != cert.delta + 1 or cert.poly[0] != 1:
        return False
    if gf_from_int_poly(list(cert.poly), cert.aux_prime) != list(cert.aux_irreducible):
        return False
    if not poly_irreducible_mod_p(cert.aux_irreducible, cert.aux_prime):
        return False
    field = nf_new(cert.min_poly_coeffs())
    for p, roots in zip(cert.primes, cert.split_witnesses):
        if len(set(roots)) != cert.delta or tuple(roots_mod_p(field, p)) != tuple(roots):
            return False
    return True


def certificate_to_json(cert: FieldConstructionCertificate) -> Dict[str, Any]:
    return {
        "delta":           cert.delta,
        "primes":          list(cert.primes),
        "poly":            [str(c) for c in cert.poly],
        "aux_prime":       cert.aux_prime,
        "aux_irreducible": list(cert.aux_irreducible),
        "bezout":          [str(cert.bezout[0]), str(cert.bezout[1])],
        "split_witnesses": [list(w) for w in cert.split_witnesses],
    }
