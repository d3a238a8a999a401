"""Rising factorials and the two engines behind every vanishing proof.

The rising factorial is (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1.  Two facts
drive everything else here:

  * the nth alternating binomial sum annihilates polynomials of degree
    below n, and
  * when alpha - beta = d is a nonnegative integer, (alpha)_k / (beta)_k is
    a polynomial in k of degree d, explicitly (beta + k)_d / (beta)_d.
"""

from __future__ import annotations

from typing import Union

from .errors import NotIntegerDifference
from .poly import KPolyRat, LinForm, Poly, Rat, RatLike, as_rat, sym


def rf_num(a: RatLike, k: int) -> Rat:
    """(a)_k over the rationals; the empty product (a)_0 is 1."""
    if k < 0:
        raise ValueError("rising factorial needs a nonnegative length")
    a = as_rat(a)
    product = Rat(1)
    for j in range(k):
        product *= a + j
        if product == 0:
            break  # a zero factor freezes the product at 0
    return product


def rf_sym(a: LinForm, k: int) -> Poly:
    """(a)_k with a symbolic linear-form argument, expanded to a Poly."""
    if k < 0:
        raise ValueError("rising factorial needs a nonnegative length")
    product = Poly.const(1)
    for j in range(k):
        product = product * (a + j).to_poly()
    return product


def pascal_row(n: int) -> list:
    """Row n of Pascal's triangle as exact integers, via the recurrence."""
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row


def alt_binom_sum(p: Poly, n: int, ksym: str = "k") -> Union[Rat, Poly]:
    """Sum of (-1)^k C(n, k) p(k) for k = 0..n.

    Returns a rational when p involves only the summation symbol, and a Poly
    in the spectator symbols otherwise.  Identically zero whenever the
    k-degree of p is below n.
    """
    if n < 0:
        raise ValueError("difference order must be nonnegative")
    row = pascal_row(n)
    total = Poly.zero()
    sign = 1
    for k in range(n + 1):
        total = total + p.substitute({ksym: k}) * (sign * row[k])
        sign = -sign
    if p.symbols() <= {ksym}:
        return total.constant_value()
    return total


def poch_ratio_poly(alpha: LinForm, beta: LinForm, ksym: str = "k") -> tuple:
    """Close (alpha)_k / (beta)_k as a polynomial in the summation symbol.

    Requires alpha - beta to be a constant nonnegative integer d.  Returns
    (d, KPolyRat) where the ratio is (beta + k)_d as a Poly over (beta)_d;
    the two agree with the rising-factorial quotient at every nonnegative
    integer k and parameter point where (beta)_d is nonzero.  The numerator
    has k-degree exactly d.
    """
    if ksym in alpha.symbols() or ksym in beta.symbols():
        raise ValueError(f"parameters must not involve the summation symbol {ksym!r}")
    gap = alpha - beta
    if not gap.is_constant():
        raise NotIntegerDifference(f"({alpha}) - ({beta}) is not constant")
    value = gap.constant_value()
    if value.denominator != 1 or value < 0:
        raise NotIntegerDifference(
            f"({alpha}) - ({beta}) = {value} is not a nonnegative integer"
        )
    d = int(value)
    num = rf_sym(beta + sym(ksym), d)
    den = rf_sym(beta, d)
    return d, KPolyRat(num, den, ksym)
