from fractions import Fraction as F
from math import factorial

import pytest

from hypervanish import (
    PoleError,
    Poly,
    check_certificate,
    evaluate_terminating,
    rf_num,
    rf_sym,
    sym,
)
from hypervanish import saalschutz
from hypervanish.rng import SplitMix64


def direct_sum(a, b, c, m):
    """Independent oracle: the left side summed term by term."""
    total = F(0)
    for k in range(m + 1):
        total += (
            rf_num(-m, k)
            * rf_num(a, k)
            * rf_num(b, k)
            / (F(factorial(k)) * rf_num(c, k) * rf_num(1 - m + a + b - c, k))
        )
    return total


def pole_free(a, b, c, m):
    for value in (c, c - a - b):
        if value.denominator == 1 and -(m - 1) <= value <= 0:
            return False
    return True


def test_rhs_product_examples():
    assert saalschutz.rhs_product(2, 3, 4, 1) == F(-1, 2)
    assert saalschutz.rhs_product(F(1, 2), F(1, 3), F(1, 5), 0) == 1
    assert saalschutz.rhs_product(F(2, 7), 5, F(2, 7), 1) == 0  # (c-a)_1 = 0
    with pytest.raises(PoleError):
        saalschutz.rhs_product(1, 1, 0, 1)  # (c)_1 = 0


def test_verify_numeric_examples():
    report = saalschutz.verify_numeric(2, 3, 4, 1)
    assert report.equal and report.lhs == F(-1, 2) and report.rhs == F(-1, 2)

    report = saalschutz.verify_numeric(F(1, 2), F(1, 3), F(1, 5), 0)
    assert report.equal and report.lhs == 1

    report = saalschutz.verify_numeric(F(1, 2), F(1, 3), F(1, 5), 4)
    assert report.equal
    assert report.lhs == direct_sum(F(1, 2), F(1, 3), F(1, 5), 4)


def test_verify_numeric_random_including_integer_gap():
    # the identity holds at generic points even when a - b is an integer;
    # that restriction only lives inside the polynomial proof
    rng = SplitMix64(101)
    done = 0
    integer_gap_seen = 0
    while done < 500:
        m = rng.randint(0, 10)
        a, b = rng.rational(), rng.rational()
        if rng.randint(0, 3) == 0:
            b = a - rng.randint(0, 4)  # force an integer gap sometimes
        c = rng.rational()
        if not pole_free(a, b, c, m):
            continue
        report = saalschutz.verify_numeric(a, b, c, m)
        assert report.equal
        integer_gap_seen += (a - b).denominator == 1
        done += 1
    assert integer_gap_seen > 10


def test_master_poly_examples():
    c = Poly.variable("c")
    assert saalschutz.master_poly_in_c(F(1, 2), F(1, 3), 1) == (
        c * c - c * F(5, 6) + F(1, 6)
    )
    assert saalschutz.master_poly_in_c(F(3, 7), F(9, 5), 0) == Poly.const(1)
    expected = rf_sym(sym("c") - F(1, 2), 3) * rf_sym(sym("c") - F(1, 3), 3)
    assert saalschutz.master_poly_in_c(F(1, 2), F(1, 3), 3) == expected


def test_master_poly_requires_non_integer_gap():
    with pytest.raises(ValueError):
        saalschutz.master_poly_in_c(F(5, 2), F(1, 2), 2)


def test_master_poly_against_cleared_numeric_oracle():
    # (c)_m (c-a-b)_m * 3F2 evaluated numerically must match the polynomial
    rng = SplitMix64(103)
    for m in range(0, 5):
        a = rng.rational() + F(1, 7)
        b = a - F(1, 2)
        poly = saalschutz.master_poly_in_c(a, b, m)
        done = 0
        while done < 2 * m + 2:
            c = rng.rational()
            if not pole_free(a, b, c, m):
                continue
            cleared = rf_num(c, m) * rf_num(c - a - b, m) * direct_sum(a, b, c, m)
            assert poly.substitute({"c": c}).constant_value() == cleared
            done += 1


def test_master_poly_structure_random():
    rng = SplitMix64(107)
    for _ in range(30):
        m = rng.randint(0, 8)
        a = rng.rational()
        b = rng.rational() + F(1, 3)
        if (a - b).denominator == 1:
            continue
        poly = saalschutz.master_poly_in_c(a, b, m)
        assert poly.degree_in("c") == 2 * m
        assert poly.coefficient_of("c", 2 * m) == Poly.const(1)
        for base in (a, b):
            for i in range(m):
                assert poly.substitute({"c": base - i}).constant_value() == 0
        assert poly == rf_sym(sym("c") - a, m) * rf_sym(sym("c") - b, m)


def test_specializations_certify_and_vanish():
    from hypervanish.prover import is_pole_at

    rng = SplitMix64(109)
    for m in range(1, 5):
        for i in range(m):
            for which in ("a", "b"):
                certificate = saalschutz.prove_specialization(which, i, m)
                assert check_certificate(certificate).accepted
                series = saalschutz.specialized_series(which, i, m)
                done = 0
                while done < 5:
                    env = {"a": rng.rational(), "b": rng.rational()}
                    if is_pole_at(series, env, certificate.n):
                        continue
                    assert evaluate_terminating(series, env) == 0
                    done += 1


def test_specialized_series_requires_valid_range():
    with pytest.raises(ValueError):
        saalschutz.specialized_series("a", 3, 3)
    with pytest.raises(ValueError):
        saalschutz.specialized_series("q", 0, 1)
