"""The Pfaff-Saalschuetz identity, replayed end to end.

The identity evaluates the balanced terminating 3F2 with upper parameters
-m, a, b and lower parameters c and 1 - m + a + b - c at unit argument:

    3F2(-m, a, b; c, 1-m+a+b-c; 1)
        = (c-a)_m (c-b)_m / ((c)_m (c-a-b)_m).

The replay follows the classical polynomial argument: the specialized series
vanishes for c = a - i and c = b - i with i < m, and clearing denominators
turns the left side into a monic polynomial in c of degree 2m, pinned down
by its leading coefficient and those 2m roots.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PoleError, ProofReplayError
from .poly import LinForm, Poly, Rat, RatLike, SymbolTable, as_rat, sym
from .prover import Certificate, prove_vanishing
from .rising import pascal_row, rf_num, rf_sym
from .series import HypSeries, evaluate_terminating


def series() -> HypSeries:
    """The generic left side, with a, b, c symbolic and m integer-declared."""
    a, b, c, m = sym("a"), sym("b"), sym("c"), sym("m")
    return HypSeries(
        upper=(-m, a, b),
        lower=(c, 1 - m + a + b - c),
        arg=Rat(1),
        symbols=SymbolTable(("a", "b", "c", "m")),
        integer_symbols=frozenset({"m"}),
    )


def specialized_series(which: str, i: int, m: int) -> HypSeries:
    """The left side with c replaced by a - i (or b - i) and m fixed.

    Only a and b stay symbolic, so the vanishing claim is a polynomial
    identity in them.
    """
    if which not in ("a", "b"):
        raise ValueError("which must be 'a' or 'b'")
    if not (0 <= i < m):
        raise ValueError("need 0 <= i < m for the vanishing specialization")
    a, b = sym("a"), sym("b")
    c = (a if which == "a" else b) - i
    return HypSeries(
        upper=(LinForm(-m), a, b),
        lower=(c, 1 - m + a + b - c),
        arg=Rat(1),
        symbols=SymbolTable(("a", "b")),
    )


def prove_specialization(which: str, i: int, m: int, *, seed: int = 0) -> Certificate:
    """Certificate that the c = a - i (or b - i) specialization vanishes."""
    return prove_vanishing(specialized_series(which, i, m), {}, seed=seed)


def rhs_product(a: RatLike, b: RatLike, c: RatLike, m: int) -> Rat:
    """(c-a)_m (c-b)_m / ((c)_m (c-a-b)_m), exactly."""
    a, b, c = as_rat(a), as_rat(b), as_rat(c)
    den = rf_num(c, m) * rf_num(c - a - b, m)
    if den == 0:
        raise PoleError("right side has a vanishing denominator factor")
    return rf_num(c - a, m) * rf_num(c - b, m) / den


@dataclass(frozen=True)
class NumericCheck:
    """Both sides of the identity at one rational point."""

    lhs: Rat
    rhs: Rat

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def verify_numeric(a: RatLike, b: RatLike, c: RatLike, m: int) -> NumericCheck:
    """Evaluate the 3F2 left side by direct summation and compare exactly."""
    a, b, c = as_rat(a), as_rat(b), as_rat(c)
    env = {"a": a, "b": b, "c": c, "m": Rat(m)}
    lhs = evaluate_terminating(series(), env)
    return NumericCheck(lhs=lhs, rhs=rhs_product(a, b, c, m))


def master_poly_in_c(a: RatLike, b: RatLike, m: int) -> Poly:
    """The denominator-cleared left side as a polynomial in c.

    Computes sum over k of C(m,k) (a)_k (b)_k (c+k)_{m-k} (c-a-b)_{m-k} and
    verifies the polynomial argument on the spot: the sum is monic of degree
    2m in c, vanishes at the 2m points c = a - i and c = b - i for
    0 <= i < m, and therefore equals (c-a)_m (c-b)_m.

    Requires a - b to be a non-integer so the 2m points are distinct.
    """
    a, b = as_rat(a), as_rat(b)
    if (a - b).denominator == 1:
        raise ValueError("a - b must not be an integer")
    c = sym("c")
    row = pascal_row(m)
    total = Poly.zero()
    for k in range(m + 1):
        coeff = row[k] * rf_num(a, k) * rf_num(b, k)
        total = total + rf_sym(c + k, m - k) * rf_sym(c - a - b, m - k) * coeff

    if total.degree_in("c") != 2 * m:
        raise ProofReplayError(f"expected degree {2 * m}, got {total.degree_in('c')}")
    if total.coefficient_of("c", 2 * m) != Poly.const(1):
        raise ProofReplayError("leading coefficient in c is not 1")
    for root_base in (a, b):
        for i in range(m):
            value = total.substitute({"c": root_base - i}).constant_value()
            if value != 0:
                raise ProofReplayError(f"no root at c = {root_base - i}")
    if total != rf_sym(c - a, m) * rf_sym(c - b, m):
        raise ProofReplayError("cleared sum differs from (c-a)_m (c-b)_m")
    return total
