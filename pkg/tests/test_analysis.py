# tests/test_analysis.py

from __future__ import annotations

import numpy as np
import pytest

from lrc.analysis import (
    analyze,
    brute_injectivity,
    brute_min_distance,
    check_locality,
    codeword_matrix,
    distinct_codewords,
    hamming,
    locality_exhaustive,
    report_table,
)
from lrc.code_params import design_code
from lrc.codec import Codeword, encode, msg_from_int
from lrc.errors import TooLarge


def test_hamming():
    assert hamming([1, 2, 3], [1, 0, 3]) == 1
    assert hamming((), ()) == 0
    with pytest.raises(ValueError):
        hamming([1], [1, 2])


def test_codeword_matrix_matches_encoder(example_spec):
    C = codeword_matrix(example_spec)
    assert C.shape == (4096, 12)
    for v in (0, 16, 1048, 4095):
        cw = encode(example_spec, msg_from_int(example_spec, v))
        assert [int(c) for c in C[v]] == [c for row in cw.symbols for c in row]


def test_example_minimum_distance(example_spec):
    report = brute_min_distance(example_spec)
    assert report.min_distance == 8
    assert report.min_distance >= report.lower_bound
    assert report.lower_bound == 5
    assert report.enumerated == 4096
    i, j = report.witness_pair
    C = codeword_matrix(example_spec)
    assert i < j
    assert hamming(C[i].tolist(), C[j].tolist()) == 8


def test_distance_is_thread_independent(example_spec):
    assert brute_min_distance(example_spec, threads=3) == brute_min_distance(example_spec, threads=1)


def test_example_is_injective(example_spec):
    assert distinct_codewords(example_spec) == 4096
    assert brute_injectivity(example_spec)


def test_size_guard(example_spec):
    with pytest.raises(TooLarge):
        brute_min_distance(example_spec, max_messages=100)
    with pytest.raises(TooLarge):
        distinct_codewords(example_spec, max_messages=100)
    report = brute_min_distance(example_spec, max_messages=100, force=True)
    assert report.min_distance == 8


def test_two_message_toy(eisenstein_field):
    spec = design_code(eisenstein_field, 1, 0, 2, [7, 13])
    assert spec.good and spec.size == 2
    report = brute_min_distance(spec)
    # message 1 maps to all ones, message 0 to all zeros
    assert report.min_distance == 4
    assert report.witness_pair == (0, 1)
    assert brute_injectivity(spec)


def test_under_provisioned_spec_is_still_inspected(example_field):
    spec = design_code(example_field, 3, 3, 2, [17])
    assert not spec.good
    report = brute_min_distance(spec)
    assert report.lower_bound is None
    assert 0 <= report.min_distance <= 4
    assert 1 <= distinct_codewords(spec) <= 4096


def test_check_locality(example_spec):
    cw = encode(example_spec, msg_from_int(example_spec, 1234))
    assert check_locality(example_spec, cw) == []
    rows = [list(row) for row in cw.symbols]
    rows[2][1] = (rows[2][1] + 5) % 47
    bad = Codeword(cw.primes, tuple(tuple(r) for r in rows), cw.mask)
    flagged = check_locality(example_spec, bad)
    assert (2, 1) in flagged
    assert all(g == 2 for g, _ in flagged)


@pytest.mark.slow
def test_locality_exhaustive(example_spec):
    assert locality_exhaustive(example_spec, threads=2)


def test_analyze_report(example_spec):
    report = analyze(example_spec)
    assert report["min_distance"] == 8
    assert report["lower_bound"] == 5
    assert report["distinct"] == report["size"] == 4096
    assert report["m"] == 8
    assert report["min_cover"] == 7
    assert report["ambient_tight"] is False
    table = report_table(report)
    assert list(table.columns) == ["quantity", "value"]
    assert "min_distance" in set(table["quantity"])


def test_wide_primes_use_object_arrays(example_field):
    big = [1099511627791]      # 2^40 + 15, above the int64-safe range
    spec = design_code(example_field, 3, 0, 2, big)
    C = codeword_matrix(spec)
    assert C.dtype == np.dtype(object)
    assert C.shape == (8, 4)
    for v in range(8):
        cw = encode(spec, msg_from_int(spec, v))
        assert [int(c) for c in C[v]] == list(cw.symbols[0])
