"""Exact scalars, linear forms, and sparse multivariate polynomials.

Everything here is immutable after construction and all arithmetic is exact
over the rationals.  Polynomial terms are stored sparsely as a map from
monomial to coefficient, where a monomial is a name-sorted tuple of
``(symbol, exponent)`` pairs with positive exponents.  The term order used
for leading-term selection (division) and for printing is graded
lexicographic over alphabetically ordered symbol names; it is a genuine
monomial order, so single-divisor division decides exact divisibility.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import DivisionByZeroPoly, DuplicateAbscissa, MissingBinding

# The scalar field everywhere: arbitrary-precision rationals in canonical
# reduced form (Fraction guarantees den > 0 and gcd(num, den) = 1).
Rat = Fraction

RatLike = Union[Rat, int, str]

Monomial = tuple  # tuple[tuple[str, int], ...], name-sorted, exponents > 0

_ONE_MONO: Monomial = ()


def as_rat(value: RatLike) -> Rat:
    """Coerce an int, ``p/q`` string, or Fraction to an exact rational."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, int):
        return Rat(value)
    if isinstance(value, str):
        return Rat(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rat(value: Rat) -> str:
    """Render a rational as reduced ``p/q`` text, suppressing ``/1``."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class SymbolTable:
    """Ordered collection of distinct symbol names.

    The ordering is fixed at construction and shared by every series and
    printer that references the table.
    """

    __slots__ = ("names",)

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol names in {names!r}")
        for name in names:
            if not name.isidentifier() or not name.isascii():
                raise ValueError(f"symbol name must be an ASCII identifier: {name!r}")
        self.names = names

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __iter__(self):
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolTable) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"SymbolTable({list(self.names)!r})"


class LinForm:
    """A rational linear form: constant + sum of coefficient * symbol.

    The container for every series parameter (``x + 2*m + 2``,
    ``1/2*x + 1/2``, ...).  Zero coefficients are never stored.
    """

    __slots__ = ("const", "coeffs")

    def __init__(self, const: RatLike = 0, coeffs: Optional[Mapping[str, RatLike]] = None):
        self.const = as_rat(const)
        cleaned = {}
        if coeffs:
            for name, c in coeffs.items():
                c = as_rat(c)
                if c != 0:
                    cleaned[name] = c
        self.coeffs = cleaned

    def symbols(self) -> frozenset:
        return frozenset(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs

    def constant_value(self) -> Rat:
        if self.coeffs:
            raise ValueError(f"{self} is not constant")
        return self.const

    def coefficient(self, name: str) -> Rat:
        return self.coeffs.get(name, Rat(0))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "LinForm":
        if isinstance(other, LinForm):
            merged = dict(self.coeffs)
            for name, c in other.coeffs.items():
                merged[name] = merged.get(name, Rat(0)) + c
            return LinForm(self.const + other.const, merged)
        return LinForm(self.const + as_rat(other), self.coeffs)

    __radd__ = __add__

    def __neg__(self) -> "LinForm":
        return LinForm(-self.const, {n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other) -> "LinForm":
        return self + (-other if isinstance(other, LinForm) else -as_rat(other))

    def __rsub__(self, other) -> "LinForm":
        return (-self) + as_rat(other)

    def __mul__(self, scalar) -> "LinForm":
        s = as_rat(scalar)
        return LinForm(self.const * s, {n: c * s for n, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "LinForm":
        return self * (Rat(1) / as_rat(scalar))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinForm)
            and self.const == other.const
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.const, tuple(sorted(self.coeffs.items()))))

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, env: Mapping[str, Rat]) -> Rat:
        """Full evaluation; every symbol of the form must be bound."""
        total = self.const
        for name, c in self.coeffs.items():
            if name not in env:
                raise MissingBinding(f"no binding for symbol {name!r}")
            total += c * env[name]
        return total

    def substitute(self, env: Mapping[str, Rat]) -> "LinForm":
        """Partial evaluation: bind a subset of symbols to rationals."""
        const = self.const
        coeffs = {}
        for name, c in self.coeffs.items():
            if name in env:
                const += c * as_rat(env[name])
            else:
                coeffs[name] = c
        return LinForm(const, coeffs)

    def substitute_forms(self, mapping: Mapping[str, "LinForm"]) -> "LinForm":
        """Replace symbols by whole linear forms (e.g. x -> y + 2z)."""
        result = LinForm(self.const)
        for name, c in self.coeffs.items():
            if name in mapping:
                result = result + mapping[name] * c
            else:
                result = result + LinForm(0, {name: c})
        return result

    def to_poly(self) -> "Poly":
        terms = {((name, 1),): c for name, c in self.coeffs.items()}
        if self.const != 0:
            terms[_ONE_MONO] = self.const
        return Poly(terms)

    def __repr__(self) -> str:
        return f"LinForm({self})"

    def __str__(self) -> str:
        from .specparse import format_linform

        return format_linform(self)


def sym(name: str) -> LinForm:
    """The linear form consisting of a single symbol."""
    return LinForm(0, {name: 1})


# -- monomial helpers -------------------------------------------------------


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for name, e in b:
        merged[name] = merged.get(name, 0) + e
    return tuple(sorted(merged.items()))


def _mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """a / b, or None when some exponent would go negative."""
    if not b:
        return a
    rest = dict(a)
    for name, e in b:
        have = rest.get(name, 0) - e
        if have < 0:
            return None
        if have == 0:
            rest.pop(name, None)
        else:
            rest[name] = have
    return tuple(sorted(rest.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _grlex_cmp(a: Monomial, b: Monomial) -> int:
    da, db = _mono_degree(a), _mono_degree(b)
    if da != db:
        return -1 if da < db else 1
    ea, eb = dict(a), dict(b)
    for name in sorted(set(ea) | set(eb)):
        xa, xb = ea.get(name, 0), eb.get(name, 0)
        if xa != xb:
            return 1 if xa > xb else -1
    return 0


_GRLEX_KEY = functools.cmp_to_key(_grlex_cmp)


class Poly:
    """Sparse multivariate polynomial over the rationals.

    The zero polynomial has an empty term map; no zero coefficient is ever
    stored, so equality is plain structural equality of the maps.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Rat]] = None):
        cleaned = {}
        if terms:
            for mono, c in terms.items():
                c = as_rat(c)
                if c != 0:
                    cleaned[mono] = c
        self.terms = cleaned

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(value: RatLike) -> "Poly":
        value = as_rat(value)
        return Poly({_ONE_MONO: value}) if value != 0 else Poly()

    @staticmethod
    def variable(name: str) -> "Poly":
        return Poly({((name, 1),): Rat(1)})

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE_MONO in self.terms)

    def constant_value(self) -> Rat:
        if self.is_zero():
            return Rat(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[_ONE_MONO]

    def symbols(self) -> frozenset:
        return frozenset(name for mono in self.terms for name, _ in mono)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        """Degree in one symbol; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(dict(m).get(name, 0) for m in self.terms)

    def coefficient_of(self, name: str, power: int) -> "Poly":
        """The polynomial coefficient of name**power in the other symbols."""
        out = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            if d.pop(name, 0) == power:
                out[tuple(sorted(d.items()))] = c
        return Poly(out)

    def univariate_coeffs(self, name: str) -> list:
        """Dense coefficient list [c0, c1, ...]; requires a univariate poly."""
        extra = self.symbols() - {name}
        if extra:
            raise ValueError(f"polynomial also involves {sorted(extra)}")
        coeffs = [Rat(0)] * (max(self.degree_in(name), 0) + 1)
        for mono, c in self.terms.items():
            coeffs[dict(mono).get(name, 0)] = c
        return coeffs

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        merged = dict(self.terms)
        for mono, c in other.terms.items():
            prev = merged.get(mono)
            if prev is None:
                merged[mono] = c
            else:
                total = prev + c
                if total == 0:
                    del merged[mono]
                else:
                    merged[mono] = total
        out = Poly.__new__(Poly)
        out.terms = merged
        return out

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            s = as_rat(other)
            if s == 0:
                return Poly()
            out = Poly.__new__(Poly)
            out.terms = {m: c * s for m, c in self.terms.items()}
            return out
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                prev = acc.get(mono)
                if prev is None:
                    acc[mono] = c1 * c2
                else:
                    total = prev + c1 * c2
                    if total == 0:
                        del acc[mono]
                    else:
                        acc[mono] = total
        out = Poly.__new__(Poly)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    # -- evaluation ---------------------------------------------------------

    def substitute(self, env: Mapping[str, RatLike]) -> "Poly":
        """Bind a subset of symbols to rationals; the rest stay symbolic."""
        env = {n: as_rat(v) for n, v in env.items()}
        acc = {}
        for mono, c in self.terms.items():
            coeff = c
            rest = []
            for name, e in mono:
                if name in env:
                    coeff *= env[name] ** e
                else:
                    rest.append((name, e))
            key = tuple(rest)
            prev = acc.get(key)
            if prev is None:
                acc[key] = coeff
            else:
                total = prev + coeff
                if total == 0:
                    del acc[key]
                else:
                    acc[key] = total
        out = Poly.__new__(Poly)
        out.terms = acc
        return out

    def evaluate(self, env: Mapping[str, RatLike]) -> Rat:
        """Full evaluation to a rational; raises MissingBinding otherwise."""
        missing = self.symbols() - set(env)
        if missing:
            raise MissingBinding(f"no binding for {sorted(missing)}")
        return self.substitute(env).constant_value()

    # -- leading term (graded lex) ------------------------------------------

    def leading(self) -> tuple:
        """(monomial, coefficient) with the grlex-largest monomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        best = None
        for mono in self.terms:
            if best is None or _grlex_cmp(mono, best) > 0:
                best = mono
        return best, self.terms[best]

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_GRLEX_KEY, reverse=True):
            c = self.terms[mono]
            factors = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in mono
            )
            if not factors:
                piece = format_rat(c)
            elif c == 1:
                piece = factors
            elif c == -1:
                piece = f"-{factors}"
            else:
                piece = f"{format_rat(c)}*{factors}"
            parts.append(piece)
        text = parts[0]
        for piece in parts[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text


def exact_divide(numerator: Poly, divisor: Poly) -> Optional[Poly]:
    """Quotient q with q * divisor == numerator exactly, else None.

    Greedy leading-term division w.r.t. grlex: with a single divisor the
    remainder is zero iff the quotient exists, so any non-divisible leading
    term proves non-divisibility.
    """
    if divisor.is_zero():
        raise DivisionByZeroPoly("exact division by the zero polynomial")
    lead_mono, lead_coeff = divisor.leading()
    remainder = dict(numerator.terms)
    quotient = {}
    while remainder:
        rem = Poly.__new__(Poly)
        rem.terms = remainder
        mono, coeff = rem.leading()
        q_mono = _mono_div(mono, lead_mono)
        if q_mono is None:
            return None
        q_coeff = coeff / lead_coeff
        quotient[q_mono] = quotient.get(q_mono, Rat(0)) + q_coeff
        for d_mono, d_coeff in divisor.terms.items():
            m = _mono_mul(q_mono, d_mono)
            prev = remainder.get(m)
            total = -q_coeff * d_coeff if prev is None else prev - q_coeff * d_coeff
            if total == 0:
                remainder.pop(m, None)
            else:
                remainder[m] = total
    return Poly(quotient)


def interpolate(
    points: Sequence[tuple],
    degree_bound: int,
    name: str = "k",
) -> Optional[Poly]:
    """Unique polynomial of degree <= degree_bound through the points.

    Newton's divided differences on the first degree_bound + 1 points; any
    remaining point that disagrees makes the data inconsistent and the
    function returns None.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    if len(points) < degree_bound + 1:
        raise ValueError("need at least degree_bound + 1 points")
    xs = [as_rat(x) for x, _ in points]
    ys = [as_rat(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("interpolation abscissas must be distinct")

    n = degree_bound + 1
    # Divided-difference table, consumed in place.
    table = list(ys[:n])
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level])

    x = Poly.variable(name)
    result = Poly.const(table[n - 1])
    for i in range(n - 2, -1, -1):
        result = result * (x - Poly.const(xs[i])) + Poly.const(table[i])

    for xi, yi in zip(xs[n:], ys[n:]):
        if result.substitute({name: xi}).constant_value() != yi:
            return None
    return result


class KPolyRat:
    """A ratio num/den of polynomials where den is free of one distinguished
    symbol (the summation index).

    Not reduced to lowest terms; equality is by cross-multiplication.
    """

    __slots__ = ("num", "den", "ksym")

    def __init__(self, num: Poly, den: Poly, ksym: str = "k"):
        if den.is_zero():
            raise DivisionByZeroPoly("denominator polynomial is zero")
        if ksym in den.symbols():
            raise ValueError(f"denominator must not involve {ksym!r}")
        self.num = num
        self.den = den
        self.ksym = ksym

    def __mul__(self, other: "KPolyRat") -> "KPolyRat":
        if self.ksym != other.ksym:
            raise ValueError("mismatched distinguished symbols")
        return KPolyRat(self.num * other.num, self.den * other.den, self.ksym)

    def equals(self, other: "KPolyRat") -> bool:
        return self.num * other.den == other.num * self.den

    def k_degree(self) -> int:
        return self.num.degree_in(self.ksym)

    def __repr__(self) -> str:
        return f"KPolyRat(({self.num}) / ({self.den}), ksym={self.ksym!r})"
