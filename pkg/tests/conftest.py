from fractions import Fraction as F

from hypervanish import HypSeries, LinForm, SymbolTable, sym
from hypervanish.rng import SplitMix64
from hypervanish.specparse import SeriesSpec


def random_series_spec(rng: SplitMix64) -> SeriesSpec:
    """Structured random spec for round-trip checks."""
    pool = ["a", "b", "c", "m", "x", "y", "z", "w"]
    names = pool[: rng.randint(1, 5)]
    integer_flags = frozenset(n for n in names if rng.randint(0, 3) == 0)

    def random_form():
        form = LinForm(rng.rational(9, 9) if rng.randint(0, 2) else 0)
        for name in names:
            if rng.randint(0, 1):
                form = form + rng.rational(9, 9) * sym(name)
        return form

    bind = {}
    for name in names:
        if rng.randint(0, 3) == 0:
            bind[name] = (
                F(rng.randint(0, 9)) if name in integer_flags else rng.rational(9, 9)
            )
    series = HypSeries(
        upper=tuple(random_form() for _ in range(rng.randint(0, 4))),
        lower=tuple(random_form() for _ in range(rng.randint(0, 4))),
        arg=rng.rational(9, 9),
        symbols=SymbolTable(names),
        integer_symbols=integer_flags,
    )
    return SeriesSpec(series=series, bind=bind)
