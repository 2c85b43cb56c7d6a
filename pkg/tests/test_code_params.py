# tests/test_code_params.py

from __future__ import annotations
import itertools
import json
import math
from fractions import Fraction

import pytest

from lrc.code_params import (
    CodeSpec,
    FamilyParams,
    ambient_distance_report,
    compute_m,
    design_code,
    design_family,
    family_rate_limit,
    family_table,
    good_split_check,
    min_cover_size,
    rate,
    spec_from_json,
    spec_to_json,
)
from lrc.errors import (
    DegreeMismatch,
    FormatError,
    InvalidFamily,
    InvalidInput,
    MTooSmall,
    NotSplit,
    SpecMismatch,
    Unsatisfiable,
)
from lrc.number_field import nf_new
from lrc.prime_tools import SplitPrime

EXAMPLE_FAMILY = dict(r=3, s=3, c=Fraction(1, 2), k=Fraction(1, 25))


def test_example_is_good(example_field):
    good, margin = good_split_check(example_field, 3, 3, 2, [17, 31, 47])
    assert good
    assert margin == Fraction((17 * 31 * 47) ** 4, 250000 * 15 ** 4)


def test_single_prime_is_not_good(example_field):
    good, margin = good_split_check(example_field, 3, 3, 2, [17])
    assert not good
    assert margin < 1


def test_s_zero_is_good(example_field):
    good, _ = good_split_check(example_field, 3, 0, 2, [17, 31, 47])
    assert good


def test_good_split_check_validates(example_field):
    with pytest.raises(DegreeMismatch):
        good_split_check(example_field, 2, 3, 2, [17])
    with pytest.raises(NotSplit):
        good_split_check(example_field, 3, 3, 2, [23])
    with pytest.raises(InvalidInput):
        good_split_check(example_field, 3, 3, 1, [17])
    with pytest.raises(InvalidInput):
        good_split_check(example_field, 3, -1, 2, [17])


def test_example_m_and_bound(example_spec):
    assert example_spec.good
    assert example_spec.n == 12
    assert example_spec.m == 8
    assert example_spec.dist_lb == 5
    assert example_spec.size == 4096
    assert example_spec.coeff_modulus == 16
    # the 8 smallest norms are 17^4 31^4, the 7 smallest fall short
    bound = 250000 * 15 ** 4
    assert 17 ** 4 * 31 ** 4 > bound > 17 ** 4 * 31 ** 3


def test_exhaustive_m_agrees(example_field, eisenstein_field):
    assert compute_m(example_field, 3, 3, 2, [17, 31, 47], exhaustive=True) == 8
    for M, s in [(2, 0), (3, 1), (5, 0)]:
        greedy = compute_m(eisenstein_field, 1, s, M, [7, 13])
        assert greedy == compute_m(eisenstein_field, 1, s, M, [7, 13], exhaustive=True)
    assert compute_m(eisenstein_field, 1, 1, 3, [7, 13]) == 3


@pytest.mark.parametrize("coeffs, r, pool", [
    ([2, 0, -4, 0], 3, [17, 31, 47, 79]),
    ([1, 1], 1, [7, 13, 19, 31, 37, 43, 61, 67]),
])
def test_greedy_m_matches_exhaustive_on_small_instances(coeffs, r, pool):
    field = nf_new(coeffs)
    checked = 0
    for size in range(1, len(pool) + 1):
        for primes in itertools.combinations(pool, size):
            for M, s in [(2, 0), (2, 1), (3, 1)]:
                good, _ = good_split_check(field, r, s, M, primes)
                if not good:
                    with pytest.raises(Unsatisfiable):
                        compute_m(field, r, s, M, primes)
                    continue
                assert compute_m(field, r, s, M, primes) == compute_m(field, r, s, M, primes, exhaustive=True)
                checked += 1
    assert checked > 0


def test_duplicate_primes_are_rejected(example_field):
    with pytest.raises(InvalidInput):
        good_split_check(example_field, 3, 3, 2, [17, 17, 17])
    with pytest.raises(InvalidInput):
        compute_m(example_field, 3, 3, 2, [17, 31, 31])
    with pytest.raises(InvalidInput):
        min_cover_size(example_field, 3, 3, 2, [17, SplitPrime(17, (5, 8, 9, 12))])
    with pytest.raises(InvalidInput):
        design_code(example_field, 3, 3, 2, [47, 17, 47])


def test_min_cover_is_metadata(example_spec):
    cover = min_cover_size(example_spec.field, 3, 3, 2, [17, 31, 47])
    assert cover == 7
    assert cover <= example_spec.m


def test_design_sorts_primes(example_field):
    spec = design_code(example_field, 3, 3, 2, [47, 17, 31])
    assert [sp.p for sp in spec.primes] == [17, 31, 47]
    assert spec.primes[0].roots == (5, 8, 9, 12)


def test_non_good_spec_has_no_m(example_field):
    spec = design_code(example_field, 3, 3, 2, [17])
    assert not spec.good
    assert spec.m is None and spec.dist_lb is None


def test_codespec_rejects_unsorted_primes(example_field):
    with pytest.raises(InvalidInput):
        CodeSpec(field=example_field, r=3, s=3, M=2,
                 primes=(SplitPrime(31, (5, 14, 17, 26)), SplitPrime(17, (5, 8, 9, 12))))
    with pytest.raises(InvalidInput):
        CodeSpec(field=example_field, r=3, s=3, M=2, primes=())


def test_ambient_report(example_spec):
    report = ambient_distance_report(example_spec)
    assert report.lb == 5
    assert report.tight is (17 ** 4 * 31 ** 3 < 16 ** 4)
    assert report.tight is False


def test_rate(example_spec, example_field):
    assert rate(example_spec) == pytest.approx(12 * math.log(2) / (4 * math.log(17 * 31 * 47)))
    assert rate(example_spec) == pytest.approx(0.2053, abs=5e-4)
    single = design_code(example_field, 3, 0, 2, [17])
    assert rate(single) == pytest.approx(3 * math.log(2) / (4 * math.log(17)))


def test_family_params_validation(example_field):
    with pytest.raises(InvalidFamily):
        FamilyParams(field=example_field, r=3, s=3, c=Fraction(1, 2), k=Fraction(1, 10))
    with pytest.raises(InvalidFamily):
        FamilyParams(field=example_field, r=3, s=3, c=Fraction(1), k=Fraction(1, 25))
    with pytest.raises(InvalidFamily):
        FamilyParams(field=example_field, r=3, s=3, c=Fraction(1, 2), k=Fraction(0))
    with pytest.raises(DegreeMismatch):
        FamilyParams(field=example_field, r=2, s=3, c=Fraction(1, 2), k=Fraction(1, 25))


def test_family_member_ell_4(example_field):
    fp = FamilyParams(field=example_field, **EXAMPLE_FAMILY)
    spec = design_family(fp, 4)
    assert [sp.p for sp in spec.primes] == [17, 31, 47, 79]
    assert spec.M == 3
    assert spec.good


def test_family_too_short(example_field):
    fp = FamilyParams(field=example_field, **EXAMPLE_FAMILY)
    with pytest.raises(MTooSmall):
        design_family(fp, 1)


def test_family_rate_approaches_limit(example_field):
    fp = FamilyParams(field=example_field, **EXAMPLE_FAMILY)
    limit = family_rate_limit(fp)
    assert limit == Fraction(3, 8)
    rows = family_table(fp, [8, 16, 32, 64])
    for row in rows:
        assert row["M"] >= 2
    # the shortest member sits below the limit, the rest above it
    assert rows[0]["rate"] < float(limit)
    assert all(row["rate"] > float(limit) for row in rows[1:])
    assert [row["ell"] for row in rows] == [8, 16, 32, 64]
    assert abs(rows[-1]["rate"] - 3 / 8) < 0.1
    # every member is a good split code
    for ell in (8, 16, 32, 64):
        assert design_family(fp, ell).good


def test_spec_json_matches_bundled_file(example_spec, data_dir):
    text = json.dumps(spec_to_json(example_spec), indent=2) + "\n"
    assert text == (data_dir / "example_spec.json").read_text()


def test_spec_json_roundtrip(example_spec, bundled_spec):
    assert bundled_spec == example_spec
    assert spec_from_json(spec_to_json(example_spec)) == example_spec


def test_spec_json_rejects_tampering(example_spec):
    obj = spec_to_json(example_spec)
    obj["derived"]["m"] = 7
    with pytest.raises(SpecMismatch):
        spec_from_json(obj)

    obj = spec_to_json(example_spec)
    obj["primes"][0]["roots"] = [5, 8, 9, 13]
    with pytest.raises(NotSplit):
        spec_from_json(obj)

    obj = spec_to_json(example_spec)
    del obj["r"]
    with pytest.raises(FormatError):
        spec_from_json(obj)
