"""Textual series-spec grammar: parser and canonical printer.

    spec     := decls ";" "upper" ":" linforms ";" "lower" ":" linforms
                ";" "arg" ":" rational [";" "bind" ":" bindings]
    decls    := "sym" decl ("," decl)*
    decl     := symbol [":" "int"]
    linforms := [linform ("," linform)*]
    linform  := term (("+"|"-") term)*
    term     := rational ["*" symbol] | symbol
    rational := ["-"] digits ["/" digits]
    bindings := symbol "=" rational ("," symbol "=" rational)*

Whitespace is insignificant; symbols are ASCII identifiers.  Parsing the
canonical printed form reproduces the parsed value exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Optional

from .errors import ParseError, UndeclaredSymbol
from .poly import LinForm, Rat, SymbolTable, format_rat
from .series import HypSeries

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?\Z")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_DIGITS_RE = re.compile(r"\d+")


def parse_rational(text: str) -> Rat:
    """Strict ``p/q`` (or integer) rational literal."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a p/q rational literal: {text!r}")
    head, _, tail = text.partition("/")
    if tail and int(tail) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Rat(int(head), int(tail) if tail else 1)


@dataclass(frozen=True)
class SeriesSpec:
    """A parsed series spec: the series plus any in-spec bindings."""

    series: HypSeries
    bind: Dict[str, Rat] = field(default_factory=dict)


class _Scanner:
    """Cursor over the spec text with offset-carrying errors."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, expected: str):
        raise ParseError(self.pos, expected)

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, literal: str):
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            self.fail(f"'{literal}'")
        self.pos += len(literal)

    def try_take(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def ident(self) -> str:
        self.skip_ws()
        m = _IDENT_RE.match(self.text, self.pos)
        if not m:
            self.fail("symbol name")
        self.pos = m.end()
        return m.group()

    def rational(self) -> Rat:
        self.skip_ws()
        start = self.pos
        negative = self.try_take("-")
        self.skip_ws()
        m = _DIGITS_RE.match(self.text, self.pos)
        if not m:
            self.pos = start
            self.fail("rational")
        numerator = int(m.group())
        self.pos = m.end()
        denominator = 1
        if self.try_take("/"):
            self.skip_ws()
            m = _DIGITS_RE.match(self.text, self.pos)
            if not m or int(m.group()) == 0:
                self.fail("positive denominator")
            denominator = int(m.group())
            self.pos = m.end()
        return Rat(-numerator if negative else numerator, denominator)


def _parse_linform(scanner: _Scanner, declared: Optional[set]) -> LinForm:
    form = _parse_term(scanner, declared)
    while True:
        if scanner.try_take("+"):
            form = form + _parse_term(scanner, declared)
        elif _minus_ahead(scanner):
            scanner.take("-")
            form = form - _parse_term(scanner, declared)
        else:
            return form


def _minus_ahead(scanner: _Scanner) -> bool:
    # A '-' here is a separator only if a term follows; "a+" style danglers
    # must fail at the term, not be swallowed silently.
    return scanner.peek() == "-"


def _parse_term(scanner: _Scanner, declared: Optional[set]) -> LinForm:
    scanner.skip_ws()
    ch = scanner.peek()
    if ch.isdigit() or ch == "-":
        coeff = scanner.rational()
        if scanner.try_take("*"):
            name = _symbol(scanner, declared)
            return LinForm(0, {name: coeff})
        return LinForm(coeff)
    name = _symbol(scanner, declared)
    return LinForm(0, {name: 1})


def _symbol(scanner: _Scanner, declared: Optional[set]) -> str:
    at = scanner.pos
    name = scanner.ident()
    if declared is not None and name not in declared:
        raise UndeclaredSymbol(f"undeclared symbol {name!r} at offset {at}")
    return name


def parse_linform(text: str, declared: Optional[set] = None) -> LinForm:
    """Parse one linear form; with ``declared=None`` any symbol is accepted."""
    scanner = _Scanner(text)
    form = _parse_linform(scanner, declared)
    if not scanner.at_end():
        scanner.fail("end of linear form")
    return form


def parse_series_spec(text: str) -> SeriesSpec:
    """Parse a full series spec; see the module docstring for the grammar."""
    scanner = _Scanner(text)
    scanner.take("sym")
    names = []
    integer_flags = set()
    while True:
        name = scanner.ident()
        if name in names:
            raise ParseError(scanner.pos, f"fresh symbol (duplicate {name!r})")
        names.append(name)
        if scanner.try_take(":"):
            scanner.take("int")
            integer_flags.add(name)
        if not scanner.try_take(","):
            break
    declared = set(names)

    scanner.take(";")
    scanner.take("upper")
    scanner.take(":")
    upper = _parse_linform_list(scanner, declared)
    scanner.take(";")
    scanner.take("lower")
    scanner.take(":")
    lower = _parse_linform_list(scanner, declared)
    scanner.take(";")
    scanner.take("arg")
    scanner.take(":")
    arg = scanner.rational()

    bind: Dict[str, Rat] = {}
    if scanner.try_take(";"):
        if not scanner.at_end():
            scanner.take("bind")
            scanner.take(":")
            while True:
                name = _symbol(scanner, declared)
                scanner.take("=")
                bind[name] = scanner.rational()
                if not scanner.try_take(","):
                    break
    if not scanner.at_end():
        scanner.fail("end of spec")

    series = HypSeries(
        upper=tuple(upper),
        lower=tuple(lower),
        arg=arg,
        symbols=SymbolTable(names),
        integer_symbols=frozenset(integer_flags),
    )
    return SeriesSpec(series=series, bind=bind)


def _parse_linform_list(scanner: _Scanner, declared: set) -> list:
    forms = []
    if scanner.peek() == ";":
        return forms  # empty parameter list
    forms.append(_parse_linform(scanner, declared))
    while scanner.try_take(","):
        forms.append(_parse_linform(scanner, declared))
    return forms


# -- canonical printing ------------------------------------------------------


def format_linform(form: LinForm, table: Optional[SymbolTable] = None) -> str:
    """Canonical text for a linear form: symbol terms in table (or sorted)
    order, then the constant; reparsing reproduces the form exactly."""
    if table is not None:
        order = [n for n in table.names if n in form.coeffs]
    else:
        order = sorted(form.coeffs)
    pieces = []
    for name in order:
        c = form.coeffs[name]
        if c == 1:
            pieces.append(name)
        else:
            pieces.append(f"{format_rat(c)}*{name}")
    if form.const != 0 or not pieces:
        pieces.append(format_rat(form.const))
    text = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            text += f" - {piece[1:]}"
        else:
            text += f" + {piece}"
    return text


def format_series_spec(spec: SeriesSpec) -> str:
    """Canonical one-line rendering of a parsed spec."""
    series = spec.series
    decls = ", ".join(
        f"{name}:int" if name in series.integer_symbols else name
        for name in series.symbols.names
    )
    upper = ", ".join(format_linform(f, series.symbols) for f in series.upper)
    lower = ", ".join(format_linform(f, series.symbols) for f in series.lower)
    text = f"sym {decls}; upper: {upper}; lower: {lower}; arg: {format_rat(series.arg)}"
    if spec.bind:
        binds = ", ".join(
            f"{name}={format_rat(spec.bind[name])}"
            for name in series.symbols.names
            if name in spec.bind
        )
        text += f"; bind: {binds}"
    return text
