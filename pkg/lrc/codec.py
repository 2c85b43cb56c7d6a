# lrc/codec.py

from __future__ import annotations
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import galois
import numpy as np
from sympy.ntheory.modular import crt

from lrc.code_params import CodeSpec
from lrc.config import DEFAULTS
from lrc.errors import (
    CapacityExceeded,
    FormatError,
    Inconsistent,
    InsufficientGlobalData,
    InsufficientLocalData,
    InvalidInput,
    NotGood,
    OutOfRange,
)
from lrc.number_field import AlgebraicInt

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MessagePoly:
    """
    An element of A[M]: digits[i][j] = a_{i,j} in [0, M) for i < r, j <= s.

    It stands for sum_i u_i alpha^i with u_i = sum_j a_{i,j} M^j; the alpha^r
    coefficient is always 0.
    """
    M:      int
    digits: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for row in self.digits:
            for a in row:
                if not 0 <= a < self.M:
                    raise InvalidInput(f"[digit={a}] must lie in [0, {self.M})")

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return tuple(sum(a * self.M ** j for j, a in enumerate(row)) for row in self.digits)


@dataclass(frozen=True)
class Codeword:
    """
    ell x (r+1) residues; symbols[i][j] = x mod (p_i, beta_j). mask[i][j] is True when present.
    Erased symbols are stored as 0.
    """
    primes:  Tuple[int, ...]
    symbols: Tuple[Tuple[int, ...], ...]
    mask:    Tuple[Tuple[bool, ...], ...]

    @property
    def full(self) -> bool:
        return all(all(row) for row in self.mask)

    def erase(self, group: int, slot: int) -> Codeword:
        return self.erase_many([(group, slot)])

    def erase_many(self, nodes: Iterable[Tuple[int, int]]) -> Codeword:
        symbols = [list(row) for row in self.symbols]
        mask = [list(row) for row in self.mask]
        for g, k in nodes:
            symbols[g][k] = 0
            mask[g][k] = False
        return Codeword(self.primes,
                        tuple(tuple(row) for row in symbols),
                        tuple(tuple(row) for row in mask))

    def erased(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.mask) for j, ok in enumerate(row) if not ok]


# ─── messages ──────────────────────────────────────────────────────────

def msg_from_int(spec: CodeSpec, value: int) -> MessagePoly:
    """Flat digit k = i(s+1)+j is the k-th least significant base-M digit of value."""
    if not 0 <= value < spec.size:
        raise CapacityExceeded(f"[message={value}] must lie in [0, {spec.size})")
    flat = []
    for _ in range(spec.size_exponent):
        value, a = divmod(value, spec.M)
        flat.append(a)
    width = spec.s + 1
    return MessagePoly(spec.M, tuple(tuple(flat[i * width:(i + 1) * width]) for i in range(spec.r)))


def msg_to_int(msg: MessagePoly) -> int:
    value = 0
    for a in reversed([a for row in msg.digits for a in row]):
        value = value * msg.M + a
    return value


def msg_from_coeffs(spec: CodeSpec, coeffs: Sequence[int]) -> MessagePoly:
    """Message with alpha-coefficients u_0..u_{r-1}, each in [0, M^(s+1))."""
    if len(coeffs) != spec.r:
        raise InvalidInput(f"[coeffs] expected {spec.r} coefficients, got {len(coeffs)}")
    value = 0
    for u in reversed(coeffs):
        if not 0 <= u < spec.coeff_modulus:
            raise OutOfRange(f"[u={u}] must lie in [0, {spec.coeff_modulus})")
        value = value * spec.coeff_modulus + u
    return msg_from_int(spec, value)


def capacity_bits(spec: CodeSpec) -> int:
    """floor(r(s+1) log2 M), computed exactly."""
    return spec.size.bit_length() - 1


def msg_from_bytes(spec: CodeSpec, data: bytes) -> MessagePoly:
    """
    Big-endian payload, then a single 1 bit, then zeros up to capacity_bits.

    Raises:
        CapacityExceeded: 8*len(data) + 1 > capacity_bits(spec)
    """
    cap = capacity_bits(spec)
    nbits = 8 * len(data)
    if nbits + 1 > cap:
        raise CapacityExceeded(f"[{len(data)} bytes] need {nbits + 1} bits, capacity is {cap}")
    value = ((int.from_bytes(data, "big") << 1) | 1) << (cap - nbits - 1)
    return msg_from_int(spec, value)


def msg_to_bytes(spec: CodeSpec, msg: MessagePoly) -> bytes:
    cap = capacity_bits(spec)
    value = msg_to_int(msg)
    if value == 0 or value >= 1 << cap:
        raise FormatError(f"[message={value}] carries no pad marker")
    trailing = (value & -value).bit_length() - 1
    nbits = cap - trailing - 1
    if nbits % 8:
        raise FormatError(f"[message={value}] payload of {nbits} bits is not whole bytes")
    return (value >> (trailing + 1)).to_bytes(nbits // 8, "big")


# ─── reduction and GF(p) linear algebra ────────────────────────────────

def reduce_mod_ideal(x: Union[AlgebraicInt, Sequence[int]], p: int, beta: int) -> int:
    """x mod (p, beta): evaluate the coefficients at beta over F_p."""
    coeffs = x.coeffs if isinstance(x, AlgebraicInt) else x
    acc = 0
    for z in reversed(coeffs):
        acc = (acc * beta + z) % p
    return acc


@lru_cache(maxsize=None)
def _gf(p: int):
    return galois.GF(p)


@lru_cache(maxsize=4096)
def _vandermonde_inverse(p: int, betas: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    GF = _gf(p)
    r = len(betas)
    V = GF([[pow(b, t, p) for t in range(r)] for b in betas])
    inv = np.linalg.inv(V)
    return tuple(tuple(int(x) for x in row) for row in inv)


def _solve_coeffs(p: int, betas: Sequence[int], values: Sequence[int]) -> Tuple[int, ...]:
    """(u_0..u_{r-1}) mod p with sum_t u_t beta^t = value for each (beta, value)."""
    inv = _vandermonde_inverse(p, tuple(betas))
    return tuple(sum(w * c for w, c in zip(row, values)) % p for row in inv)


# ─── encode / repair / decode ──────────────────────────────────────────

def _check_shape(spec: CodeSpec, cw: Codeword) -> None:
    if tuple(sp.p for sp in spec.primes) != tuple(cw.primes):
        raise FormatError(f"[codeword] primes {list(cw.primes)} do not match the spec")
    width = spec.r + 1
    if any(len(row) != width for row in cw.symbols) or any(len(row) != width for row in cw.mask):
        raise FormatError(f"[codeword] every group must hold {width} symbols")


def encode(spec: CodeSpec, msg: MessagePoly) -> Codeword:
    """phi(x) = (x mod p_j^(p_i)), slot j holding the j-th ascending root."""
    if not spec.good:
        raise NotGood("[encode] spec is not a good split code")
    if msg.M != spec.M or len(msg.digits) != spec.r:
        raise InvalidInput("[encode] message shape does not match the spec")
    if any(len(row) != spec.s + 1 for row in msg.digits):
        raise InvalidInput(f"[encode] every message row must hold s+1 = {spec.s + 1} digits")
    x = AlgebraicInt(spec.field, msg.coeffs + (0,))
    symbols = tuple(
        tuple(reduce_mod_ideal(x, sp.p, beta) for beta in sp.roots)
        for sp in spec.primes
    )
    mask = tuple((True,) * (spec.r + 1) for _ in spec.primes)
    return Codeword(tuple(sp.p for sp in spec.primes), symbols, mask)


def encode_many(spec: CodeSpec,
                msgs: Sequence[MessagePoly],
                *,
                threads: int = DEFAULTS["default_threads"]) -> List[Codeword]:
    if threads <= 1:
        return [encode(spec, m) for m in msgs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda m: encode(spec, m), msgs))


def local_recover(spec: CodeSpec, cw: Codeword, group: int, slot: int) -> int:
    """
    Rebuild symbol (group, slot) from the other r symbols of its group.

    Raises:
        InsufficientLocalData: one of the other r slots is erased
    """
    _check_shape(spec, cw)
    if not (0 <= group < spec.ell and 0 <= slot <= spec.r):
        raise InvalidInput(f"[group={group}, slot={slot}] out of range")
    sp = spec.primes[group]
    others = [j for j in range(spec.r + 1) if j != slot]
    if not all(cw.mask[group][j] for j in others):
        present = sum(cw.mask[group][j] for j in others)
        raise InsufficientLocalData(f"[group={group}] {present} of the other {spec.r} slots present")
    u = _solve_coeffs(sp.p, [sp.roots[j] for j in others], [cw.symbols[group][j] for j in others])
    return reduce_mod_ideal(u, sp.p, sp.roots[slot])


def global_decode(spec: CodeSpec, cw: Codeword) -> MessagePoly:
    """
    Erasure decoding: interpolate each group with >= r present slots, CRT the
    coefficients over the solved primes, and re-encode as a consistency check.

    Raises:
        InsufficientGlobalData: product of solved primes <= M^(s+1)
        Inconsistent:           a spare slot or the re-encoding disagrees
        OutOfRange:             a CRT representative is >= M^(s+1)
    """
    _check_shape(spec, cw)
    moduli: List[int] = []
    residues: List[Tuple[int, ...]] = []
    for i, sp in enumerate(spec.primes):
        present = [j for j in range(spec.r + 1) if cw.mask[i][j]]
        if len(present) < spec.r:
            continue
        use = present[:spec.r]
        u = _solve_coeffs(sp.p, [sp.roots[j] for j in use], [cw.symbols[i][j] for j in use])
        for j in present[spec.r:]:
            if reduce_mod_ideal(u, sp.p, sp.roots[j]) != cw.symbols[i][j]:
                raise Inconsistent(f"[group={i}, slot={j}] spare symbol disagrees with interpolation")
        moduli.append(sp.p)
        residues.append(u)

    bound = spec.coeff_modulus
    product = math.prod(moduli)
    if product <= bound:
        raise InsufficientGlobalData(
            f"[decode] solved primes {moduli} multiply to {product} <= M^(s+1) = {bound}"
        )

    coeffs = []
    for t in range(spec.r):
        value, _ = crt(moduli, [res[t] for res in residues])
        value = int(value)
        if value >= bound:
            raise OutOfRange(f"[u_{t}={value}] CRT representative >= M^(s+1) = {bound}")
        coeffs.append(value)
    msg = msg_from_coeffs(spec, coeffs)

    again = encode(spec, msg)
    for i, j in ((i, j) for i in range(spec.ell) for j in range(spec.r + 1)):
        if cw.mask[i][j] and cw.symbols[i][j] != again.symbols[i][j]:
            raise Inconsistent(f"[group={i}, slot={j}] re-encoding disagrees")
    logger.debug(f"[decode] solved groups {moduli}, coeffs {coeffs}")
    return msg


def verify(spec: CodeSpec, cw: Codeword) -> bool:
    """Membership test for a fully present codeword."""
    if not cw.full:
        raise InvalidInput("[verify] codeword has erasures")
    try:
        msg = global_decode(spec, cw)
    except (Inconsistent, OutOfRange, InsufficientGlobalData) as exc:
        logger.debug(f"[verify] rejected: {exc}")
        return False
    return encode(spec, msg).symbols == cw.symbols


# ─── byte payloads over several stripes ────────────────────────────────

def stripe_payload_bytes(spec: CodeSpec) -> int:
    return (capacity_bits(spec) - 1) // 8


def encode_bytes(spec: CodeSpec, data: bytes) -> List[Codeword]:
    """Split data into stripe-sized chunks and encode each; empty data gives one stripe."""
    chunk = stripe_payload_bytes(spec)
    if chunk < 1:
        raise CapacityExceeded(f"[spec] capacity {capacity_bits(spec)} bits holds no whole byte")
    pieces = [data[i:i + chunk] for i in range(0, len(data), chunk)] or [b""]
    return [encode(spec, msg_from_bytes(spec, piece)) for piece in pieces]


def decode_bytes(spec: CodeSpec, cws: Sequence[Codeword]) -> bytes:
    return b"".join(msg_to_bytes(spec, global_decode(spec, cw)) for cw in cws)


# ─── wire format ───────────────────────────────────────────────────────
# "NFLC" | version u8 | ell u16 | r u8 | per group: p u64, r+1 symbols of
# ceil(bits(p)/8) bytes | mask bits row-major, MSB first, zero padded

def _symbol_width(p: int) -> int:
    return (p.bit_length() + 7) // 8


def codeword_to_bytes(cw: Codeword) -> bytes:
    ell = len(cw.primes)
    width = len(cw.symbols[0]) if ell else 0
    if ell >= 1 << 16 or not 1 <= width <= 256:
        raise FormatError(f"[codeword] ell={ell}, r+1={width} do not fit the header")
    out = bytearray(DEFAULTS["codeword_magic"])
    out.append(DEFAULTS["codeword_version"])
    out += ell.to_bytes(2, "big")
    out.append(width - 1)
    for p, row in zip(cw.primes, cw.symbols):
        out += p.to_bytes(8, "big")
        w = _symbol_width(p)
        for c in row:
            out += c.to_bytes(w, "big")
    bits = [ok for row in cw.mask for ok in row]
    for start in range(0, len(bits), 8):
        byte = 0
        for k, ok in enumerate(bits[start:start + 8]):
            byte |= int(ok) << (7 - k)
        out.append(byte)
    return bytes(out)


def codeword_from_bytes(buf: bytes, offset: int = 0) -> Tuple[Codeword, int]:
    """Parse one codeword at `offset`; returns it with the offset just past it."""
    magic = DEFAULTS["codeword_magic"]
    try:
        if buf[offset:offset + 4] != magic:
            raise FormatError(f"[offset={offset}] bad magic {buf[offset:offset + 4]!r}")
        version = buf[offset + 4]
        if version != DEFAULTS["codeword_version"]:
            raise FormatError(f"[offset={offset}] unsupported version {version}")
        ell = int.from_bytes(buf[offset + 5:offset + 7], "big")
        width = buf[offset + 7] + 1
        pos = offset + 8
        primes, symbols = [], []
        for _ in range(ell):
            if pos + 8 > len(buf):
                raise FormatError(f"[offset={pos}] truncated group header")
            p = int.from_bytes(buf[pos:pos + 8], "big")
            pos += 8
            w = _symbol_width(p)
            row = []
            for _ in range(width):
                if pos + w > len(buf):
                    raise FormatError(f"[offset={pos}] truncated symbol")
                row.append(int.from_bytes(buf[pos:pos + w], "big"))
                pos += w
            primes.append(p)
            symbols.append(row)
        nbits = ell * width
        nbytes = (nbits + 7) // 8
        if pos + nbytes > len(buf):
            raise FormatError(f"[offset={pos}] truncated mask")
        bits = [bool(buf[pos + k // 8] >> (7 - k % 8) & 1) for k in range(nbits)]
        pos += nbytes
    except IndexError as exc:
        raise FormatError(f"[offset={offset}] truncated codeword") from exc

    mask = tuple(tuple(bits[i * width:(i + 1) * width]) for i in range(ell))
    for i, p in enumerate(primes):
        for j in range(width):
            if mask[i][j] and symbols[i][j] >= p:
                raise FormatError(f"[group={i}, slot={j}] symbol {symbols[i][j]} >= p={p}")
            if not mask[i][j]:
                symbols[i][j] = 0
    return Codeword(tuple(primes), tuple(tuple(row) for row in symbols), mask), pos


def codewords_to_bytes(cws: Sequence[Codeword]) -> bytes:
    return b"".join(codeword_to_bytes(cw) for cw in cws)


def codewords_from_bytes(buf: bytes) -> List[Codeword]:
    out, pos = [], 0
    while pos < len(buf):
        cw, pos = codeword_from_bytes(buf, pos)
        out.append(cw)
    return out
