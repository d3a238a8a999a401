"""Terminating hypergeometric series over the rationals.

A series here is the formal sum over k >= 0 of

    (a_1)_k ... (a_p)_k / (k! (b_1)_k ... (b_q)_k) * t^k

with every parameter a rational linear form over declared symbols.  Only
terminating instances are ever evaluated: some upper parameter must be a
nonpositive integer -n, which truncates the sum at k = n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple

from .errors import MissingBinding, NoTermination, PoleError, UndeclaredSymbol
from .poly import LinForm, Rat, SymbolTable, as_rat

Env = Mapping[str, Rat]


@dataclass(frozen=True)
class HypSeries:
    """A pFq specification: upper/lower parameter lists, argument, symbols."""

    upper: Tuple[LinForm, ...]
    lower: Tuple[LinForm, ...]
    arg: Rat
    symbols: SymbolTable
    integer_symbols: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "arg", as_rat(self.arg))
        object.__setattr__(self, "integer_symbols", frozenset(self.integer_symbols))
        used = set()
        for form in self.upper + self.lower:
            used |= form.symbols()
        undeclared = used - set(self.symbols.names)
        if undeclared:
            raise UndeclaredSymbol(f"parameters use undeclared {sorted(undeclared)}")
        stray = self.integer_symbols - set(self.symbols.names)
        if stray:
            raise UndeclaredSymbol(f"integer flags on undeclared {sorted(stray)}")

    def free_symbols(self) -> frozenset:
        used = set()
        for form in self.upper + self.lower:
            used |= form.symbols()
        return frozenset(used)


def check_env(series: HypSeries, env: Env, *, full: bool) -> dict:
    """Validate bindings against the series declarations.

    Integer-declared symbols must bind to nonnegative integers.  With
    ``full`` every symbol used by some parameter must be bound.
    """
    out = {}
    for name, value in env.items():
        if name not in series.symbols:
            raise UndeclaredSymbol(f"binding for undeclared symbol {name!r}")
        value = as_rat(value)
        if name in series.integer_symbols and (value.denominator != 1 or value < 0):
            raise ValueError(f"{name} is integer-declared; got {value}")
        out[name] = value
    if full:
        missing = series.free_symbols() - set(out)
        if missing:
            raise MissingBinding(f"no binding for {sorted(missing)}")
    return out


def termination_index(series: HypSeries, env: Env) -> tuple:
    """Locate the upper parameter that truncates the sum.

    Returns (index, n) where upper[index] evaluates to -n under env.  The
    environment may be partial; a parameter still containing free symbols is
    not a termination candidate.  Among several nonpositive-integer upper
    parameters the smallest n wins (the sum is well defined up to there).
    """
    env = check_env(series, env, full=False)
    best: Optional[tuple] = None
    for i, form in enumerate(series.upper):
        value = form.substitute(env)
        if not value.is_constant():
            continue
        v = value.constant_value()
        if v.denominator == 1 and v <= 0:
            n = int(-v)
            if best is None or n < best[1]:
                best = (i, n)
    if best is None:
        raise NoTermination("no upper parameter is a nonpositive integer")
    return best


def evaluate_terminating(series: HypSeries, env: Env) -> Rat:
    """Exact value of the truncated sum under a full environment.

    A lower parameter equal to an integer in [-(n-1), 0] puts a vanishing
    rising factorial into some term's denominator: that is a pole and an
    error here, regardless of any cancelling numerator zero.
    """
    env = check_env(series, env, full=True)
    _, n = termination_index(series, env)
    uppers = [form.evaluate(env) for form in series.upper]
    lowers = [form.evaluate(env) for form in series.lower]
    for b in lowers:
        if b.denominator == 1 and -(n - 1) <= b <= 0:
            raise PoleError(f"lower parameter {b} vanishes within the range")
    total = Rat(1)
    term = Rat(1)
    for k in range(n):
        for a in uppers:
            term *= a + k
        term *= series.arg
        for b in lowers:
            term /= b + k
        term /= k + 1
        total += term
    return total


def is_balanced(series: HypSeries) -> bool:
    """True when the lower parameters sum to one more than the upper ones,
    as an identity of linear forms, and the argument is 1."""
    if series.arg != 1:
        return False
    total = LinForm(-1)
    for form in series.lower:
        total = total + form
    for form in series.upper:
        total = total - form
    return total == LinForm(0)
