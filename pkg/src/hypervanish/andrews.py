"""Replay of the balanced 5F4 vanishing identity.

The identity: for every nonnegative integer m,

    5F4(-2m-1, x+2m+2, x-z+1/2, x+m+1, z+m+1;
        x/2+1/2, x/2+1, 2z+2m+2, 2x-2z+1; 1) = 0.

Substituting x = y + 2z gives an equivalent form whose parameters are linear
in (y, z).  The replay establishes it in two layers:

  * integer layer: for each y in {0, ..., 2m+1} the summand splits into two
    Pochhammer-ratio products P1 * P2, each pair chosen by a case split
    (y <= m vs y > m for P1, y even vs odd for P2) so that every ratio is a
    polynomial in the summation index; the product has degree 2m < 2m+1 and
    the alternating sum annihilates it.
  * polynomial layer: multiplying the sum by (y+z+1)_m (y+2z+1)_m makes
    every term a polynomial in y of degree at most 2m (the per-term factors
    Q1, Q2 below, each of y-degree exactly m).  A polynomial of degree at
    most 2m vanishing at the 2m+2 integer points is identically zero.

All case splits come out of the two duplication formulas

    (a)_{2n}   = 2^{2n}   (a/2)_{n}   (a/2 + 1/2)_n,
    (a)_{2n+1} = 2^{2n+1} (a/2)_{n+1} (a/2 + 1/2)_n,

and every cancellation is verified here by exact polynomial division.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Mapping, Optional, Tuple, Union

from .errors import HypervanishError, ProofReplayError
from .poly import (
    KPolyRat,
    LinForm,
    Poly,
    Rat,
    RatLike,
    SymbolTable,
    as_rat,
    exact_divide,
    format_rat,
    sym,
)
from .prover import (
    CERTIFICATE_VERSION,
    Certificate,
    CheckResult,
    check_certificate,
    prove_vanishing,
    sample_spot_checks,
)
from .rising import alt_binom_sum, pascal_row, poch_ratio_poly, rf_sym
from .series import HypSeries, evaluate_terminating
from .specparse import format_linform, parse_linform, parse_rational

HALF = Rat(1, 2)

SPOT_CHECKS_COMPOSITE = 20


def series_in_x(m: Optional[int] = None) -> HypSeries:
    """The 5F4 in its original parameters; m symbolic when not given."""
    x, z = sym("x"), sym("z")
    mm = sym("m") if m is None else LinForm(_check_m(m))
    return HypSeries(
        upper=(
            -2 * mm - 1,
            x + 2 * mm + 2,
            x - z + HALF,
            x + mm + 1,
            z + mm + 1,
        ),
        lower=(
            x / 2 + HALF,
            x / 2 + 1,
            2 * z + 2 * mm + 2,
            2 * x - 2 * z + 1,
        ),
        arg=Rat(1),
        symbols=SymbolTable(("m", "x", "z") if m is None else ("x", "z")),
        integer_symbols=frozenset({"m"}) if m is None else frozenset(),
    )


def series_in_yz(m: Optional[int] = None) -> HypSeries:
    """The equivalent form after the substitution x = y + 2z."""
    y, z = sym("y"), sym("z")
    mm = sym("m") if m is None else LinForm(_check_m(m))
    return HypSeries(
        upper=(
            -2 * mm - 1,
            y + 2 * z + 2 * mm + 2,
            y + z + HALF,
            y + 2 * z + mm + 1,
            z + mm + 1,
        ),
        lower=(
            y / 2 + z + HALF,
            y / 2 + z + 1,
            2 * z + 2 * mm + 2,
            2 * y + 2 * z + 1,
        ),
        arg=Rat(1),
        symbols=SymbolTable(("m", "y", "z") if m is None else ("y", "z")),
        integer_symbols=frozenset({"m"}) if m is None else frozenset(),
    )


def _check_m(m: int) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ValueError("m must be a nonnegative integer")
    return m


@dataclass(frozen=True)
class AndrewsInstance:
    """Both parameter forms for one m, with the substitution verified."""

    m: int
    in_x: HypSeries
    in_yz: HypSeries

    @staticmethod
    def build(m: int) -> "AndrewsInstance":
        in_x = series_in_x(m)
        in_yz = series_in_yz(m)
        mapping = {"x": sym("y") + 2 * sym("z")}
        for got, want in zip(
            tuple(f.substitute_forms(mapping) for f in in_x.upper + in_x.lower),
            in_yz.upper + in_yz.lower,
        ):
            if got != want:
                raise ProofReplayError(f"substitution mismatch: {got} != {want}")
        return AndrewsInstance(m=m, in_x=in_x, in_yz=in_yz)


def sum_numeric(m: int, x: RatLike, z: RatLike) -> Rat:
    """Exact value of the original sum; the identity asserts 0."""
    return evaluate_terminating(series_in_x(m), {"x": as_rat(x), "z": as_rat(z)})


def sum_numeric_yz(m: int, y: RatLike, z: RatLike) -> Rat:
    """Exact value of the substituted sum; the identity asserts 0."""
    return evaluate_terminating(series_in_yz(m), {"y": as_rat(y), "z": as_rat(z)})


# -- integer layer ------------------------------------------------------------


def build_P1P2(y: int, m: int) -> KPolyRat:
    """The summand at integer y as one Pochhammer-ratio product in k.

    Pairs the four non-terminating upper parameters with the four lower ones
    so that each difference is a nonnegative integer: the first split sends
    y+2z+2m+2 and y+2z+m+1 against 2z+2m+2 and 2y+2z+1 (order depending on
    y <= m), the second sends y+z+1/2 and z+m+1 against the two half
    parameters (order depending on the parity of y).  The numerator k-degree
    is exactly 2m.
    """
    _check_m(m)
    if not (0 <= y <= 2 * m + 1):
        raise ValueError(f"y must lie in 0..{2 * m + 1}")
    z = sym("z")
    top = 2 * z + (y + 2 * m + 2)       # y+2z+2m+2 at this y
    mid = 2 * z + (y + m + 1)           # y+2z+m+1
    half_up = z + (y + HALF)            # y+z+1/2
    plain_up = z + (m + 1)              # z+m+1
    low_2z = 2 * z + (2 * m + 2)        # 2z+2m+2
    low_2y2z = 2 * z + (2 * y + 1)      # 2y+2z+1
    low_h1 = z + (Rat(y, 2) + HALF)     # y/2+z+1/2
    low_h2 = z + (Rat(y, 2) + 1)        # y/2+z+1

    if y <= m:
        pairs = [(top, low_2z), (mid, low_2y2z)]
    else:
        pairs = [(top, low_2y2z), (mid, low_2z)]
    if y % 2 == 0:
        pairs += [(half_up, low_h1), (plain_up, low_h2)]
    else:
        pairs += [(half_up, low_h2), (plain_up, low_h1)]

    product = KPolyRat(Poly.const(1), Poly.const(1), "k")
    degree = 0
    for alpha, beta in pairs:
        d, ratio = poch_ratio_poly(alpha, beta, "k")
        product = product * ratio
        degree += d
    if degree != 2 * m or product.k_degree() != 2 * m:
        raise ProofReplayError(f"P1*P2 degree is {degree}, expected {2 * m}")
    return product


def integer_y_vanish(m: int, *, seed: int = 0) -> List[Certificate]:
    """Prove the substituted identity at every y in {0, ..., 2m+1}.

    Each point is established twice: once by the explicit P1*P2 product and
    the alternating sum (which must be the zero polynomial in z), and once
    through the general prover, which emits the replayable certificate.
    """
    _check_m(m)
    n = 2 * m + 1
    target = series_in_yz(m)
    certificates = []
    for y in range(2 * m + 2):
        ratio = build_P1P2(y, m)
        annihilated = alt_binom_sum(ratio.num, n, ratio.ksym)
        zero = annihilated == 0 if isinstance(annihilated, Rat) else annihilated.is_zero()
        if not zero:
            raise ProofReplayError(f"alternating sum at y={y} is {annihilated}")
        certificates.append(prove_vanishing(target, {"y": Rat(y)}, seed=seed + y))
    return certificates


# -- polynomial layer ---------------------------------------------------------


def build_Q1(k: int, m: int) -> Poly:
    """(y+z+1)_m (y+z+1/2)_k / (2y+2z+1)_k, closed as a Poly in (y, z).

    For k <= m:       2^{-2k}   (y+z+1+k)_{m-k}     (2y+2z+1+k)_k
    for k >= m+1:     2^{-2m-1} (2y+2z+1+k)_{2m+1-k} (y+z+m+3/2)_{k-m-1}

    The y-degree is exactly m in both branches.  The closed form is checked
    against the defining ratio by exact division.
    """
    _check_m(m)
    if not (0 <= k <= 2 * m + 1):
        raise ValueError(f"k must lie in 0..{2 * m + 1}")
    y, z = sym("y"), sym("z")
    yz = y + z
    if k <= m:
        closed = rf_sym(yz + (k + 1), m - k) * rf_sym(2 * yz + (k + 1), k) * Rat(1, 4**k)
    else:
        closed = (
            rf_sym(2 * yz + (k + 1), 2 * m + 1 - k)
            * rf_sym(yz + (m + Rat(3, 2)), k - m - 1)
            * Rat(1, 2 * 4**m)
        )
    numerator = rf_sym(yz + 1, m) * rf_sym(yz + HALF, k)
    denominator = rf_sym(2 * yz + 1, k)
    quotient = exact_divide(numerator, denominator)
    if quotient is None or quotient != closed:
        raise ProofReplayError(f"Q1 closed form fails the division check at k={k}, m={m}")
    if closed.degree_in("y") != m:
        raise ProofReplayError(f"Q1 y-degree is {closed.degree_in('y')}, expected {m}")
    return closed


def build_Q2(k: int, m: int) -> Poly:
    """(y+2z+1)_m (y+2z+2m+2)_k (y+2z+m+1)_k / ((y/2+z+1/2)_k (y/2+z+1)_k),
    closed as a Poly in (y, z).

    The even duplication formula turns the half-parameter denominator into
    2^{-2k} (y+2z+1)_{2k}, after which

    for k <= m:       2^{2k} (y+2z+1+2k)_{m-k}    (y+2z+2m+2)_k
    for k >= m+1:     2^{2k} (y+2z+2m+2)_{k-m-1}  (y+2z+1+2k)_{2m+1-k}

    The y-degree is exactly m in both branches.  The closed form is checked
    by exact division against 2^{2k} (y+2z+1)_{m+k} (y+2z+2m+2)_k over
    (y+2z+1)_{2k}.
    """
    _check_m(m)
    if not (0 <= k <= 2 * m + 1):
        raise ValueError(f"k must lie in 0..{2 * m + 1}")
    y, z = sym("y"), sym("z")
    y2z = y + 2 * z
    if k <= m:
        closed = rf_sym(y2z + (2 * k + 1), m - k) * rf_sym(y2z + (2 * m + 2), k) * (4**k)
    else:
        closed = (
            rf_sym(y2z + (2 * m + 2), k - m - 1)
            * rf_sym(y2z + (2 * k + 1), 2 * m + 1 - k)
            * (4**k)
        )
    numerator = rf_sym(y2z + 1, m + k) * rf_sym(y2z + (2 * m + 2), k) * (4**k)
    denominator = rf_sym(y2z + 1, 2 * k)
    quotient = exact_divide(numerator, denominator)
    if quotient is None or quotient != closed:
        raise ProofReplayError(f"Q2 closed form fails the division check at k={k}, m={m}")
    if closed.degree_in("y") != m:
        raise ProofReplayError(f"Q2 y-degree is {closed.degree_in('y')}, expected {m}")
    return closed


def alt_form_constant_q1(k: int, m: int) -> Poly:
    """Match Q1 against its rising-factorial-in-y form and return the y-free
    factor in front.

    The alternative expression is C1 (z+m+1)_y (z+k+1/2)_y over
    (z+k/2+1/2)_y (z+k/2+1)_y; pairing upper to lower by the parity of k
    makes each ratio a polynomial in y, and evaluating at y = 0 (all four
    rising factorials are empty products there) pins the constant down.
    """
    q1 = build_Q1(k, m)
    if k % 2 == 0:
        pairs = [
            (sym("z") + (k + HALF), sym("z") + (Rat(k, 2) + HALF)),
            (sym("z") + (m + 1), sym("z") + (Rat(k, 2) + 1)),
        ]
    else:
        pairs = [
            (sym("z") + (k + HALF), sym("z") + (Rat(k, 2) + 1)),
            (sym("z") + (m + 1), sym("z") + (Rat(k, 2) + HALF)),
        ]
    return _match_alt_form(q1, pairs, k, m)


def alt_form_constant_q2(k: int, m: int) -> Poly:
    """Match Q2 against C2 (2z+m+k+1)_y (2z+2m+k+2)_y over
    (2z+2k+1)_y (2z+2m+2)_y, pairing by k <= m versus k > m."""
    q2 = build_Q2(k, m)
    z2 = 2 * sym("z")
    if k <= m:
        pairs = [
            (z2 + (m + k + 1), z2 + (2 * k + 1)),
            (z2 + (2 * m + k + 2), z2 + (2 * m + 2)),
        ]
    else:
        pairs = [
            (z2 + (m + k + 1), z2 + (2 * m + 2)),
            (z2 + (2 * m + k + 2), z2 + (2 * k + 1)),
        ]
    return _match_alt_form(q2, pairs, k, m)


def _match_alt_form(q: Poly, pairs, k: int, m: int) -> Poly:
    num = Poly.const(1)
    den = Poly.const(1)
    degree = 0
    for alpha, beta in pairs:
        d, ratio = poch_ratio_poly(alpha, beta, "y")
        num = num * ratio.num
        den = den * ratio.den
        degree += d
    if degree != m:
        raise ProofReplayError(f"alternative form degree {degree}, expected {m}")
    constant = q.substitute({"y": 0})
    if q * den != constant * num:
        raise ProofReplayError(f"alternative form mismatch at k={k}, m={m}")
    return constant


def master_poly_and_prove(m: int, *, seed: int = 0) -> Tuple[Poly, dict]:
    """Assemble the cleared sum as a polynomial in (y, z) and conclude.

    With the y-free denominator (2z+2m+2)_k cleared by the global factor
    (2z+2m+2)_{2m+1}, the k-th term of the substituted sum times
    (y+z+1)_m (y+2z+1)_m becomes

        (-1)^k C(2m+1, k) (z+m+1)_k (2z+2m+2+k)_{2m+1-k} Q1(k) Q2(k),

    a polynomial of y-degree at most 2m.  The assembled sum must vanish at
    y = 0..2m+1 (independently certified), hence be identically zero; that
    is asserted structurally and recorded in a composite certificate.
    """
    _check_m(m)
    n = 2 * m + 1
    z = sym("z")
    row = pascal_row(n)
    master = Poly.zero()
    degrees = []
    sign = 1
    for k in range(n + 1):
        q1 = build_Q1(k, m)
        q2 = build_Q2(k, m)
        degrees.append({"k": k, "q1": q1.degree_in("y"), "q2": q2.degree_in("y")})
        term = (
            rf_sym(z + (m + 1), k)
            * rf_sym(2 * z + (2 * m + 2 + k), n - k)
            * q1
            * q2
            * (sign * row[k])
        )
        if term.degree_in("y") > 2 * m:
            raise ProofReplayError(f"term k={k} has y-degree above {2 * m}")
        master = master + term
        sign = -sign

    if master.degree_in("y") > 2 * m:
        raise ProofReplayError("master polynomial exceeds the degree bound")
    lemma3 = integer_y_vanish(m, seed=seed)
    for y in range(2 * m + 2):
        if not master.substitute({"y": y}).is_zero():
            raise ProofReplayError(f"master polynomial does not vanish at y={y}")
    if not master.is_zero():
        raise ProofReplayError("master polynomial is not structurally zero")

    target = series_in_yz(m)
    spots = sample_spot_checks(target, {}, n=n, seed=seed, count=SPOT_CHECKS_COMPOSITE)
    doc = {
        "version": CERTIFICATE_VERSION,
        "series": {
            "upper": [format_linform(f, target.symbols) for f in target.upper],
            "lower": [format_linform(f, target.symbols) for f in target.lower],
            "arg": format_rat(target.arg),
        },
        "env": {},
        "n": n,
        "spot_checks": spots,
        "conclusion": "vanishes",
        "lemma3": [cert.to_dict() for cert in lemma3],
        "lemma4": {"degrees": degrees},
        "master": {
            "y_degree_bound": 2 * m,
            "vanishing_points": list(range(2 * m + 2)),
            "zero": True,
        },
    }
    return master, doc


def check_proof(doc: Union[Mapping, str]) -> CheckResult:
    """Independently replay a composite proof document.

    Verifies each per-y certificate, recomputes the Q1/Q2 degrees, rebuilds
    the master polynomial from scratch, and re-evaluates the spot checks.
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except ValueError:
            return CheckResult(False, "Malformed")
    try:
        if doc["version"] != CERTIFICATE_VERSION or doc["conclusion"] != "vanishes":
            return CheckResult(False, "Malformed")
        n = doc["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1 or n % 2 == 0:
            return CheckResult(False, "Malformed")
        m = (n - 1) // 2
        expected = series_in_yz(m)
        stated_upper = [parse_linform(t) for t in doc["series"]["upper"]]
        stated_lower = [parse_linform(t) for t in doc["series"]["lower"]]
        if tuple(stated_upper) != expected.upper or tuple(stated_lower) != expected.lower:
            return CheckResult(False, "Malformed")
        if parse_rational(doc["series"]["arg"]) != 1 or doc["env"] != {}:
            return CheckResult(False, "Malformed")
        lemma3 = doc["lemma3"]
        master_doc = doc["master"]
        degrees = doc["lemma4"]["degrees"]
        spot_checks = [
            ({k: parse_rational(v) for k, v in item["env"].items()}, parse_rational(item["value"]))
            for item in doc["spot_checks"]
        ]
    except (KeyError, TypeError, ValueError, HypervanishError):
        return CheckResult(False, "Malformed")

    if master_doc.get("y_degree_bound") != 2 * m or master_doc.get("zero") is not True:
        return CheckResult(False, "BadDegree")
    if master_doc.get("vanishing_points") != list(range(2 * m + 2)):
        return CheckResult(False, "BadDegree")

    if len(lemma3) != 2 * m + 2:
        return CheckResult(False, "BadPairing")
    for y, inner in enumerate(lemma3):
        try:
            if inner["env"] != {"y": str(y)} or inner["series"] != doc["series"]:
                return CheckResult(False, "BadPairing")
        except (KeyError, TypeError):
            return CheckResult(False, "Malformed")
        inner_result = check_certificate(inner)
        if not inner_result:
            return inner_result

    if len(degrees) != 2 * m + 2:
        return CheckResult(False, "BadDegree")
    try:
        for k, entry in enumerate(degrees):
            q1 = build_Q1(k, m)
            q2 = build_Q2(k, m)
            if entry != {"k": k, "q1": q1.degree_in("y"), "q2": q2.degree_in("y")}:
                return CheckResult(False, "BadDegree")
    except HypervanishError:
        return CheckResult(False, "BadDegree")

    master, _ = _rebuild_master(m)
    if not master.is_zero():
        return CheckResult(False, "BadSum")

    target = series_in_yz(m)
    free = {"y", "z"}
    for spot_env, claimed in spot_checks:
        if set(spot_env) != free:
            return CheckResult(False, "Malformed")
        try:
            value = evaluate_terminating(target, spot_env)
        except HypervanishError:
            return CheckResult(False, "BadSum")
        if value != claimed:
            return CheckResult(False, "BadSum")
    return CheckResult(True)


def _rebuild_master(m: int) -> Tuple[Poly, List[dict]]:
    """The bare master assembly, without the certified integer layer."""
    n = 2 * m + 1
    z = sym("z")
    row = pascal_row(n)
    master = Poly.zero()
    degrees = []
    sign = 1
    for k in range(n + 1):
        q1 = build_Q1(k, m)
        q2 = build_Q2(k, m)
        degrees.append({"k": k, "q1": q1.degree_in("y"), "q2": q2.degree_in("y")})
        master = master + (
            rf_sym(z + (m + 1), k)
            * rf_sym(2 * z + (2 * m + 2 + k), n - k)
            * q1
            * q2
            * (sign * row[k])
        )
        sign = -sign
    return master, degrees
