from fractions import Fraction as F

import pytest

from hypervanish import (
    HypSeries,
    LinForm,
    MissingBinding,
    NoTermination,
    PoleError,
    SymbolTable,
    UndeclaredSymbol,
    evaluate_terminating,
    is_balanced,
    rf_num,
    sym,
    termination_index,
)
from hypervanish import andrews, saalschutz
from hypervanish.rng import SplitMix64


def simple_series(upper, lower, arg=1, names=(), integers=()):
    return HypSeries(
        upper=tuple(upper),
        lower=tuple(lower),
        arg=F(arg),
        symbols=SymbolTable(names),
        integer_symbols=frozenset(integers),
    )


def test_declarations_are_enforced():
    with pytest.raises(UndeclaredSymbol):
        simple_series([sym("a")], [LinForm(1)], names=())
    with pytest.raises(UndeclaredSymbol):
        simple_series([LinForm(1)], [LinForm(1)], names=(), integers=("m",))


def test_termination_index_examples():
    assert termination_index(andrews.series_in_x(), {"m": F(2)}) == (0, 5)
    assert termination_index(saalschutz.series(), {"m": F(0)}) == (0, 0)
    two_f_one = simple_series([LinForm(1), LinForm(2)], [LinForm(3)])
    with pytest.raises(NoTermination):
        termination_index(two_f_one, {})


def test_termination_prefers_smallest_truncation():
    series = simple_series([LinForm(-5), LinForm(-2)], [LinForm(1), LinForm(7)])
    assert termination_index(series, {}) == (1, 2)


def test_env_validation():
    series = andrews.series_in_x()
    with pytest.raises(ValueError):
        termination_index(series, {"m": F(1, 2)})  # m is integer-declared
    with pytest.raises(ValueError):
        termination_index(series, {"m": F(-1)})
    with pytest.raises(UndeclaredSymbol):
        termination_index(series, {"w": F(1)})
    with pytest.raises(MissingBinding):
        evaluate_terminating(series, {"m": F(1)})


def test_evaluate_terminating_examples():
    two_f_one = simple_series([LinForm(-2), LinForm(1)], [LinForm(1)])
    assert evaluate_terminating(two_f_one, {}) == 0  # (1-1)^2

    assert saalschutz.verify_numeric(2, 3, 4, 1).lhs == F(-1, 2)
    assert evaluate_terminating(
        saalschutz.series(), {"a": F(5), "b": F(1, 7), "c": F(1, 3), "m": F(0)}
    ) == 1


def test_evaluate_matches_direct_summation_oracle():
    # independent oracle: term-by-term products of rising factorials
    rng = SplitMix64(3)
    series = saalschutz.series()
    from math import factorial

    done = 0
    while done < 50:
        a, b, c = rng.rational(), rng.rational(), rng.rational()
        m = rng.randint(0, 6)
        bad = False
        for v in (c, c - a - b):
            if v.denominator == 1 and -(m - 1) <= v <= 0:
                bad = True
        if bad:
            continue
        env = {"a": a, "b": b, "c": c, "m": F(m)}
        expected = F(0)
        for k in range(m + 1):
            expected += (
                rf_num(-m, k)
                * rf_num(a, k)
                * rf_num(b, k)
                / (
                    F(factorial(k))
                    * rf_num(c, k)
                    * rf_num(1 - m + a + b - c, k)
                )
            )
        assert evaluate_terminating(series, env) == expected
        done += 1


def test_pole_within_truncation_range_is_an_error():
    series = simple_series([LinForm(-4), LinForm(1)], [LinForm(-2), LinForm(5)])
    with pytest.raises(PoleError):
        evaluate_terminating(series, {})


def test_numerator_truncating_before_the_pole_is_not_an_error():
    # the -1 upper cuts the sum at k=1; the would-be pole of (-2)_k sits at
    # k=3, outside the evaluated range
    series = simple_series([LinForm(-4), LinForm(-1)], [LinForm(-2), LinForm(5)])
    evaluate_terminating(series, {})


def test_pole_outside_range_is_fine():
    series = simple_series([LinForm(-2), LinForm(1)], [LinForm(-5)])
    evaluate_terminating(series, {})  # (-5)_k is nonzero for k <= 2


def test_is_balanced_examples():
    assert is_balanced(saalschutz.series())
    assert is_balanced(andrews.series_in_x())
    assert is_balanced(andrews.series_in_yz())
    two_f_one = simple_series([LinForm(-2), LinForm(1)], [LinForm(1)])
    assert not is_balanced(two_f_one)
    # parameter sums right but argument not 1
    series = simple_series([LinForm(-1)], [LinForm(0)], arg=2)
    assert not is_balanced(series)


def test_substitution_coherence_between_forms():
    rng = SplitMix64(7)
    in_x = andrews.series_in_x()
    in_yz = andrews.series_in_yz()
    done = 0
    while done < 200:
        m = rng.randint(0, 6)
        y, z = rng.rational(), rng.rational()
        try:
            direct = evaluate_terminating(in_x, {"m": F(m), "x": y + 2 * z, "z": z})
            substituted = evaluate_terminating(in_yz, {"m": F(m), "y": y, "z": z})
        except PoleError:
            continue
        assert direct == substituted
        done += 1


def test_truncation_terms_beyond_n_vanish():
    # once (-n)_k = 0, every later term carries that zero factor
    rng = SplitMix64(13)
    for _ in range(50):
        m = rng.randint(0, 8)
        a, b, c = rng.rational(), rng.rational(), rng.rational()
        uppers = [F(-m), a, b]
        for k in range(m + 1, m + 6):
            numerator = F(1)
            for u in uppers:
                numerator *= rf_num(u, k)
            assert numerator == 0
