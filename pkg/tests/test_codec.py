# tests/test_codec.py

from __future__ import annotations
import math
import random

import pytest

from lrc.codec import (
    Codeword,
    MessagePoly,
    capacity_bits,
    codeword_from_bytes,
    codeword_to_bytes,
    codewords_from_bytes,
    codewords_to_bytes,
    decode_bytes,
    encode,
    encode_bytes,
    encode_many,
    global_decode,
    local_recover,
    msg_from_bytes,
    msg_from_coeffs,
    msg_from_int,
    msg_to_bytes,
    msg_to_int,
    reduce_mod_ideal,
    stripe_payload_bytes,
    verify,
)
from lrc.code_params import design_code
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
from lrc.number_field import ai_from_coeffs

ALPHA_ROWS = ((5, 8, 9, 12), (5, 14, 17, 26), (3, 18, 29, 44))


@pytest.fixture
def alpha_cw(example_spec):
    return encode(example_spec, msg_from_coeffs(example_spec, [0, 1, 0]))


# ─── messages ──────────────────────────────────────────────────────────

def test_digit_order(example_spec):
    msg = msg_from_coeffs(example_spec, [0, 1, 0])
    assert msg.digits == ((0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0))
    assert msg.coeffs == (0, 1, 0)
    assert msg_to_int(msg) == 16
    assert msg_from_int(example_spec, 16) == msg


def test_int_roundtrip(example_spec):
    for v in (0, 1, 15, 16, 255, 4095):
        assert msg_to_int(msg_from_int(example_spec, v)) == v
    with pytest.raises(CapacityExceeded):
        msg_from_int(example_spec, 4096)
    with pytest.raises(OutOfRange):
        msg_from_coeffs(example_spec, [16, 0, 0])
    with pytest.raises(InvalidInput):
        msg_from_coeffs(example_spec, [1, 0])


def test_byte_padding(example_spec):
    assert capacity_bits(example_spec) == 12
    assert stripe_payload_bytes(example_spec) == 1
    empty = msg_from_bytes(example_spec, b"")
    assert msg_to_int(empty) == 1 << 11
    assert msg_to_bytes(example_spec, empty) == b""
    # 'A' = 0x41 -> (0x41 << 1 | 1) << 3 = 1048 = 8 + 1*16 + 4*256
    a = msg_from_bytes(example_spec, b"A")
    assert a.coeffs == (8, 1, 4)
    assert msg_to_bytes(example_spec, a) == b"A"
    with pytest.raises(CapacityExceeded):
        msg_from_bytes(example_spec, b"AB")


def test_bytes_without_marker(example_spec):
    with pytest.raises(FormatError):
        msg_to_bytes(example_spec, msg_from_int(example_spec, 0))
    with pytest.raises(FormatError):
        msg_to_bytes(example_spec, msg_from_int(example_spec, 1 << 10))


# ─── encoding ──────────────────────────────────────────────────────────

def test_encode_small_messages(example_spec, alpha_cw):
    zero = encode(example_spec, msg_from_int(example_spec, 0))
    assert zero.symbols == ((0,) * 4,) * 3
    one = encode(example_spec, msg_from_coeffs(example_spec, [1, 0, 0]))
    assert one.symbols == ((1,) * 4,) * 3
    assert alpha_cw.symbols == ALPHA_ROWS
    assert alpha_cw.primes == (17, 31, 47)
    assert alpha_cw.full


def test_encode_byte_payload(example_spec):
    cw = encode(example_spec, msg_from_bytes(example_spec, b"A"))
    assert cw.symbols == ((11, 0, 1, 1), (20, 0, 3, 10), (0, 6, 17, 41))


def test_encode_requires_good_spec(example_field):
    spec = design_code(example_field, 3, 3, 2, [17])
    with pytest.raises(NotGood):
        encode(spec, msg_from_int(spec, 1))


def test_encode_checks_row_width(example_spec):
    short = MessagePoly(2, ((1, 0, 1), (0, 1, 1), (1, 1, 0)))
    with pytest.raises(InvalidInput):
        encode(example_spec, short)
    ragged = MessagePoly(2, ((1, 0, 1, 0), (0, 1, 1, 0, 1), (1, 1, 0, 0)))
    with pytest.raises(InvalidInput):
        encode(example_spec, ragged)


def test_encode_many_matches_serial(example_spec):
    msgs = [msg_from_int(example_spec, v) for v in range(0, 4096, 97)]
    assert encode_many(example_spec, msgs, threads=4) == [encode(example_spec, m) for m in msgs]


def test_reduction_is_a_homomorphism(example_field):
    rng = random.Random(7)
    for _ in range(200):
        x = ai_from_coeffs(example_field, [rng.randint(-10 ** 6, 10 ** 6) for _ in range(4)])
        y = ai_from_coeffs(example_field, [rng.randint(-10 ** 6, 10 ** 6) for _ in range(4)])
        for p, roots in zip((17, 31, 47), ALPHA_ROWS):
            for beta in roots:
                rx, ry = reduce_mod_ideal(x, p, beta), reduce_mod_ideal(y, p, beta)
                assert reduce_mod_ideal(x + y, p, beta) == (rx + ry) % p
                assert reduce_mod_ideal(x * y, p, beta) == rx * ry % p
                assert reduce_mod_ideal(x.coeffs, p, beta) == rx


# ─── local repair ──────────────────────────────────────────────────────

def test_local_recover_single_slot(example_spec, alpha_cw):
    assert local_recover(example_spec, alpha_cw.erase(0, 3), 0, 3) == 12
    for g in range(3):
        for k in range(4):
            assert local_recover(example_spec, alpha_cw.erase(g, k), g, k) == ALPHA_ROWS[g][k]


def test_local_recover_one_per_group(example_spec, alpha_cw):
    damaged = alpha_cw.erase_many([(0, 1), (1, 3), (2, 0)])
    rebuilt = [list(row) for row in damaged.symbols]
    for g, k in damaged.erased():
        rebuilt[g][k] = local_recover(example_spec, damaged, g, k)
    assert tuple(tuple(row) for row in rebuilt) == ALPHA_ROWS


def test_local_recover_needs_the_rest_of_the_group(example_spec, alpha_cw):
    with pytest.raises(InsufficientLocalData):
        local_recover(example_spec, alpha_cw.erase_many([(0, 0), (0, 1)]), 0, 0)
    with pytest.raises(InvalidInput):
        local_recover(example_spec, alpha_cw, 3, 0)


# ─── global decoding ───────────────────────────────────────────────────

def test_global_decode_full(example_spec, alpha_cw):
    assert global_decode(example_spec, alpha_cw).coeffs == (0, 1, 0)


def test_global_decode_without_a_group(example_spec, alpha_cw):
    damaged = alpha_cw.erase_many([(0, k) for k in range(4)])
    assert global_decode(example_spec, damaged).coeffs == (0, 1, 0)


def test_global_decode_with_two_groups_gone(example_spec):
    msg = msg_from_int(example_spec, 3001)
    cw = encode(example_spec, msg).erase_many([(g, k) for g in (0, 2) for k in range(4)])
    # 31 > 16 alone suffices
    assert global_decode(example_spec, cw) == msg


def test_global_decode_insufficient(example_spec, alpha_cw):
    damaged = alpha_cw.erase_many([(g, k) for g in range(3) for k in (0, 1)])
    with pytest.raises(InsufficientGlobalData):
        global_decode(example_spec, damaged)


def test_global_decode_detects_corruption(example_spec, alpha_cw):
    rows = [list(row) for row in alpha_cw.symbols]
    rows[1][3] = (rows[1][3] + 1) % 31
    bad = Codeword(alpha_cw.primes, tuple(tuple(r) for r in rows), alpha_cw.mask)
    with pytest.raises(Inconsistent):
        global_decode(example_spec, bad)


@pytest.mark.slow
def test_random_group_erasures_decode_or_refuse(example_spec):
    rng = random.Random(4242)
    r = example_spec.r
    decoded = refused = 0
    for _ in range(10_000):
        msg = msg_from_int(example_spec, rng.randrange(example_spec.size))
        nodes = []
        solvable = []
        for g, sp in enumerate(example_spec.primes):
            lost = rng.randint(0, r + 1)
            nodes += [(g, k) for k in rng.sample(range(r + 1), lost)]
            if lost <= 1:
                solvable.append(sp.p)
        cw = encode(example_spec, msg).erase_many(nodes)
        if math.prod(solvable) > example_spec.coeff_modulus:
            assert global_decode(example_spec, cw) == msg
            decoded += 1
        else:
            with pytest.raises(InsufficientGlobalData):
                global_decode(example_spec, cw)
            refused += 1
    assert decoded and refused


@pytest.mark.slow
def test_global_decode_exhaustive(example_spec):
    for v in range(example_spec.size):
        msg = msg_from_int(example_spec, v)
        assert global_decode(example_spec, encode(example_spec, msg)) == msg


def test_verify(example_spec, alpha_cw):
    assert verify(example_spec, alpha_cw)
    assert verify(example_spec, encode(example_spec, msg_from_int(example_spec, 0)))
    rows = [list(row) for row in alpha_cw.symbols]
    rows[0][0] = (rows[0][0] + 1) % 17
    assert not verify(example_spec, Codeword(alpha_cw.primes, tuple(tuple(r) for r in rows), alpha_cw.mask))
    with pytest.raises(InvalidInput):
        verify(example_spec, alpha_cw.erase(0, 0))


def test_shape_mismatch(example_spec, alpha_cw):
    other = Codeword((17, 31, 79), alpha_cw.symbols, alpha_cw.mask)
    with pytest.raises(FormatError):
        global_decode(example_spec, other)


# ─── bytes and wire format ─────────────────────────────────────────────

def test_golden_codeword(alpha_cw, data_dir):
    assert codeword_to_bytes(alpha_cw) == (data_dir / "example_alpha.nflc").read_bytes()


def test_wire_roundtrip_with_erasures(alpha_cw):
    damaged = alpha_cw.erase_many([(0, 3), (2, 1)])
    blob = codeword_to_bytes(damaged)
    assert blob[-2:] == bytes([0b11101111, 0b10110000])
    parsed, pos = codeword_from_bytes(blob)
    assert pos == len(blob)
    assert parsed == damaged
    assert parsed.erased() == [(0, 3), (2, 1)]


def test_wire_rejects_garbage(alpha_cw):
    blob = codeword_to_bytes(alpha_cw)
    with pytest.raises(FormatError):
        codeword_from_bytes(b"XXXX" + blob[4:])
    with pytest.raises(FormatError):
        codeword_from_bytes(blob[:-3])
    with pytest.raises(FormatError):
        codeword_from_bytes(blob[:4] + b"\x02" + blob[5:])
    # symbol 17 is not a residue mod 17
    with pytest.raises(FormatError):
        codeword_from_bytes(blob[:16] + b"\x11" + blob[17:])


def test_file_roundtrip(example_spec):
    data = b"locally recoverable"
    cws = encode_bytes(example_spec, data)
    assert len(cws) == len(data)
    blob = codewords_to_bytes(cws)
    again = codewords_from_bytes(blob)
    assert again == cws
    assert decode_bytes(example_spec, again) == data


def test_file_roundtrip_empty(example_spec):
    cws = encode_bytes(example_spec, b"")
    assert len(cws) == 1
    assert decode_bytes(example_spec, cws) == b""


def test_file_roundtrip_survives_a_lost_group(example_spec):
    data = bytes(range(40))
    cws = [cw.erase_many([(1, k) for k in range(4)]) for cw in encode_bytes(example_spec, data)]
    assert decode_bytes(example_spec, codewords_from_bytes(codewords_to_bytes(cws))) == data
