"""Vanishing prover for balanced terminating series, with certificates.

The argument: drop the terminating upper parameter, so the k-th term carries
the weight (-1)^k C(n, k); pair every remaining upper parameter with a lower
parameter at a constant nonnegative integer gap d; the paired ratios multiply
into a polynomial in k of degree D = sum of the gaps, and balance forces
D = n - 1 < n, so the alternating sum annihilates it.  A certificate records
the pairing, the degrees, and numeric spot checks, and can be replayed from
its stored data alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    DegreeTooHigh,
    HypervanishError,
    NoTermination,
    NotBalanced,
    PairingNotFound,
    PoleError,
    ProofReplayError,
)
from .poly import LinForm, Poly, Rat, SymbolTable, format_rat
from .rising import alt_binom_sum, pascal_row, poch_ratio_poly
from .rng import SplitMix64
from .series import HypSeries, check_env, evaluate_terminating, is_balanced
from .specparse import format_linform, parse_linform, parse_rational

PairEntry = Tuple[int, int, int]  # (upper index, lower index, gap d)

CERTIFICATE_VERSION = 1

SPOT_CHECK_COUNT = 20
_SPOT_MAX_TRIES = 2000
_INT_SAMPLE_MAX = 12


def find_pairing(
    uppers: Sequence[LinForm], lowers: Sequence[LinForm]
) -> Optional[List[PairEntry]]:
    """Perfect matching of uppers to lowers along edges where the difference
    is a constant nonnegative integer; None when no perfect matching exists.

    Kuhn's augmenting-path search: complete for this edge relation, unlike
    greedy pairing, which can strand a vertex on adversarial instances.
    """
    if len(uppers) != len(lowers):
        return None
    gaps: List[Dict[int, int]] = []
    for alpha in uppers:
        row: Dict[int, int] = {}
        for j, beta in enumerate(lowers):
            diff = alpha - beta
            if diff.is_constant():
                value = diff.constant_value()
                if value.denominator == 1 and value >= 0:
                    row[j] = int(value)
        gaps.append(row)

    matched_lower: Dict[int, int] = {}

    def augment(i: int, visited: set) -> bool:
        for j in gaps[i]:
            if j in visited:
                continue
            visited.add(j)
            if j not in matched_lower or augment(matched_lower[j], visited):
                matched_lower[j] = i
                return True
        return False

    for i in range(len(uppers)):
        if not augment(i, set()):
            return None
    pairing = [(i, j, gaps[i][j]) for j, i in matched_lower.items()]
    pairing.sort()
    return pairing


def fresh_symbol(base: str, used) -> str:
    name = base
    while name in used:
        name += "_"
    return name


@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    reason: Optional[str] = None  # BadPairing | BadDegree | BadSum | Malformed

    def __bool__(self) -> bool:
        return self.accepted


@dataclass
class Certificate:
    """Replayable record of one vanishing proof.

    All rationals are stored as exact ``p/q`` strings so a replay is
    bit-exact.  ``pairing`` indexes into the stored parameter lists; the one
    upper index it leaves uncovered is the terminating parameter.
    """

    upper: List[str]
    lower: List[str]
    arg: str
    env: Dict[str, str]
    n: int
    pairing: List[Dict[str, int]]
    total_degree: int
    spot_checks: List[dict]
    conclusion: str = "vanishes"
    version: int = CERTIFICATE_VERSION
    extensions: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        doc = {
            "version": self.version,
            "series": {"upper": list(self.upper), "lower": list(self.lower), "arg": self.arg},
            "env": dict(self.env),
            "n": self.n,
            "pairing": [dict(entry) for entry in self.pairing],
            "total_degree": self.total_degree,
            "spot_checks": [
                {"env": dict(item["env"]), "value": item["value"]}
                for item in self.spot_checks
            ],
            "conclusion": self.conclusion,
        }
        doc.update(self.extensions)
        return doc

    @staticmethod
    def from_dict(doc: Mapping) -> "Certificate":
        known = {
            "version", "series", "env", "n", "pairing", "total_degree",
            "spot_checks", "conclusion",
        }
        series = doc["series"]
        return Certificate(
            upper=list(series["upper"]),
            lower=list(series["lower"]),
            arg=series["arg"],
            env=dict(doc["env"]),
            n=doc["n"],
            pairing=[dict(entry) for entry in doc["pairing"]],
            total_degree=doc["total_degree"],
            spot_checks=[dict(item) for item in doc["spot_checks"]],
            conclusion=doc["conclusion"],
            version=doc["version"],
            extensions={k: doc[k] for k in doc if k not in known},
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @staticmethod
    def from_json(text: str) -> "Certificate":
        return Certificate.from_dict(json.loads(text))


def prove_vanishing(
    series: HypSeries,
    env: Optional[Mapping[str, Rat]] = None,
    *,
    seed: int = 0,
    spot_check_count: int = SPOT_CHECK_COUNT,
) -> Certificate:
    """Certify that a balanced terminating series sums to exactly zero.

    ``env`` may be partial; unbound symbols stay as spectators and "vanishes"
    means the alternating sum is the zero polynomial in them.  When several
    upper parameters terminate, each is tried as the designated one until a
    pairing certifies.
    """
    env = check_env(series, env or {}, full=False)
    if not is_balanced(series):
        raise NotBalanced("series is not balanced (parameter sums or argument)")
    candidates = _termination_candidates(series, env)
    if not candidates:
        raise NoTermination("no upper parameter is a nonpositive integer")
    failure: Optional[HypervanishError] = None
    for term_idx, n in candidates:
        try:
            return _prove_with_terminator(
                series, env, term_idx, n, seed=seed, spot_check_count=spot_check_count
            )
        except (PairingNotFound, DegreeTooHigh) as exc:
            failure = exc
    raise failure


def _termination_candidates(series: HypSeries, env) -> List[Tuple[int, int]]:
    found = []
    for i, form in enumerate(series.upper):
        value = form.substitute(env)
        if value.is_constant():
            v = value.constant_value()
            if v.denominator == 1 and v <= 0:
                found.append((i, int(-v)))
    found.sort(key=lambda item: (item[1], item[0]))
    return found


def _prove_with_terminator(
    series: HypSeries,
    env: dict,
    term_idx: int,
    n: int,
    *,
    seed: int,
    spot_check_count: int,
) -> Certificate:
    upper_indices = [i for i in range(len(series.upper)) if i != term_idx]
    rem_upper = [series.upper[i].substitute(env) for i in upper_indices]
    rem_lower = [form.substitute(env) for form in series.lower]
    if len(rem_upper) != len(rem_lower):
        raise PairingNotFound(
            f"{len(rem_upper)} non-terminating uppers vs {len(rem_lower)} lowers"
        )
    matching = find_pairing(rem_upper, rem_lower)
    if matching is None:
        raise PairingNotFound("no perfect matching with integer gaps")

    used = set(series.symbols.names)
    for form in rem_upper + rem_lower:
        used |= form.symbols()
    ksym = fresh_symbol("k", used)

    numerator = Poly.const(1)
    total = 0
    for i, j, d in matching:
        gap, ratio = poch_ratio_poly(rem_upper[i], rem_lower[j], ksym)
        if gap != d:
            raise ProofReplayError("pairing gap disagrees with closed form")
        numerator = numerator * ratio.num
        total += d

    degree = numerator.degree_in(ksym)
    if degree >= n:
        raise DegreeTooHigh(f"summand degree {degree} >= difference order {n}")
    if degree != total or total != n - 1:
        # Balance forces the gap sum to n - 1; anything else is a bug here.
        raise ProofReplayError(
            f"gap sum {total} and numerator degree {degree} must equal n-1={n - 1}"
        )

    result = alt_binom_sum(numerator, n, ksym)
    vanished = result == 0 if isinstance(result, Rat) else result.is_zero()
    if not vanished:
        raise ProofReplayError("alternating sum of the summand is not zero")

    spot_checks = sample_spot_checks(
        series, env, n=n, seed=seed, count=spot_check_count
    )
    pairing = [
        {"upper": upper_indices[i], "lower": j, "d": d} for i, j, d in matching
    ]
    # a binding for a declared-but-unused symbol carries no claim; keep the
    # stored environment to what the parameters mention
    used = series.free_symbols()
    return Certificate(
        upper=[format_linform(f, series.symbols) for f in series.upper],
        lower=[format_linform(f, series.symbols) for f in series.lower],
        arg=format_rat(series.arg),
        env={
            name: format_rat(value)
            for name, value in sorted(env.items())
            if name in used
        },
        n=n,
        pairing=pairing,
        total_degree=degree,
        spot_checks=spot_checks,
    )


def is_pole_at(series: HypSeries, env: Mapping[str, Rat], n: int) -> bool:
    """True when some lower parameter makes a denominator factor vanish
    within a sum truncated at k = n, i.e. equals an integer in [-(n-1), 0]."""
    for form in series.lower:
        value = form.evaluate(env)
        if value.denominator == 1 and -(n - 1) <= value <= 0:
            return True
    return False


def sample_spot_checks(
    series: HypSeries, env: Mapping[str, Rat], *, n: int, seed: int, count: int
) -> List[dict]:
    """Random full environments with the exact series value at each; always
    zero for a certified series.

    Draws are rejected when they are poles with respect to the designated
    termination order n.  (A draw can make another upper parameter a larger
    nonpositive integer, truncating the evaluated sum earlier; that changes
    nothing pole-free, since the skipped terms carry a vanished rising
    factorial, but it can hide a pole of the full-length sum, so the pole
    test must use n, not the evaluation's own truncation point.)
    """
    free = sorted(series.free_symbols() - set(env))
    if not free:
        value = evaluate_terminating(series, env)
        if value != 0:
            raise ProofReplayError(f"series evaluates to {value}, not zero")
        return [{"env": {}, "value": format_rat(value)}]
    rng = SplitMix64(seed)
    checks = []
    tries = 0
    while len(checks) < count:
        tries += 1
        if tries > _SPOT_MAX_TRIES:
            raise ProofReplayError("pole rejection exhausted the sampling budget")
        draw = {}
        for name in free:
            if name in series.integer_symbols:
                draw[name] = Rat(rng.randint(0, _INT_SAMPLE_MAX))
            else:
                draw[name] = rng.rational()
        full_env = {**env, **draw}
        if is_pole_at(series, full_env, n):
            continue
        try:
            value = evaluate_terminating(series, full_env)
        except PoleError:
            continue
        if value != 0:
            raise ProofReplayError(f"series evaluates to {value} at {draw}")
        checks.append(
            {"env": {s: format_rat(v) for s, v in draw.items()}, "value": format_rat(value)}
        )
    return checks


# -- independent replay -------------------------------------------------------


def check_certificate(cert: Union[Certificate, Mapping, str]) -> CheckResult:
    """Replay a certificate from its stored data alone.

    Recomputes the pairing gaps, the degree bookkeeping, and the alternating
    sum from scratch; re-evaluates every spot check.  Accepts exactly when
    all stored claims replay.  Rejections carry one reason code: Malformed,
    BadPairing, BadDegree, or BadSum.
    """
    try:
        doc = _as_document(cert)
        parsed = _parse_certificate(doc)
    except Exception:
        return CheckResult(False, "Malformed")

    reason = _check_pairing(parsed)
    if reason is None:
        reason = _check_degree(parsed)
    if reason is None:
        reason = _check_sum(parsed)
    if reason is None:
        return CheckResult(True)
    return CheckResult(False, reason)


def _as_document(cert: Union[Certificate, Mapping, str]) -> Mapping:
    if isinstance(cert, Certificate):
        return cert.to_dict()
    if isinstance(cert, str):
        return json.loads(cert)
    return cert


@dataclass
class _ParsedCertificate:
    upper: List[LinForm]
    lower: List[LinForm]
    arg: Rat
    env: Dict[str, Rat]
    n: int
    pairing: List[PairEntry]
    total_degree: int
    spot_checks: List[tuple]
    series: HypSeries


def _parse_certificate(doc: Mapping) -> _ParsedCertificate:
    if doc["version"] != CERTIFICATE_VERSION:
        raise ValueError("unsupported version")
    if doc["conclusion"] != "vanishes":
        raise ValueError("unknown conclusion")
    series_doc = doc["series"]
    upper = [parse_linform(text) for text in series_doc["upper"]]
    lower = [parse_linform(text) for text in series_doc["lower"]]
    arg = parse_rational(series_doc["arg"])
    declared = set()
    for form in upper + lower:
        declared |= form.symbols()
    env = {}
    for name, text in doc["env"].items():
        if name not in declared:
            raise ValueError(f"env binds unknown symbol {name!r}")
        env[name] = parse_rational(text)
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    pairing = []
    for entry in doc["pairing"]:
        i, j, d = entry["upper"], entry["lower"], entry["d"]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (i, j, d)):
            raise ValueError("pairing entries must be integers")
        if not (0 <= i < len(upper) and 0 <= j < len(lower)):
            raise ValueError("pairing index out of range")
        pairing.append((i, j, d))
    total_degree = doc["total_degree"]
    if not isinstance(total_degree, int) or isinstance(total_degree, bool):
        raise ValueError("total_degree must be an integer")
    free = declared - set(env)
    spot_checks = []
    for item in doc["spot_checks"]:
        spot_env = {name: parse_rational(text) for name, text in item["env"].items()}
        if set(spot_env) != free:
            raise ValueError("spot check must bind exactly the free symbols")
        spot_checks.append((spot_env, parse_rational(item["value"])))
    table = SymbolTable(sorted(declared))
    series = HypSeries(upper=tuple(upper), lower=tuple(lower), arg=arg, symbols=table)
    return _ParsedCertificate(
        upper, lower, arg, env, n, pairing, total_degree, spot_checks, series
    )


def _check_pairing(parsed: _ParsedCertificate) -> Optional[str]:
    covered_upper = [i for i, _, _ in parsed.pairing]
    covered_lower = [j for _, j, _ in parsed.pairing]
    if len(set(covered_upper)) != len(covered_upper):
        return "BadPairing"
    if sorted(covered_lower) != list(range(len(parsed.lower))):
        return "BadPairing"
    uncovered = set(range(len(parsed.upper))) - set(covered_upper)
    if len(uncovered) != 1:
        return "BadPairing"
    terminator = parsed.upper[uncovered.pop()].substitute(parsed.env)
    if not terminator.is_constant() or terminator.constant_value() != -parsed.n:
        return "BadPairing"
    for i, j, d in parsed.pairing:
        if d < 0:
            return "BadPairing"
        gap = (parsed.upper[i] - parsed.lower[j]).substitute(parsed.env)
        if not gap.is_constant() or gap.constant_value() != d:
            return "BadPairing"
    return None


def _check_degree(parsed: _ParsedCertificate) -> Optional[str]:
    if parsed.total_degree != sum(d for _, _, d in parsed.pairing):
        return "BadDegree"
    if parsed.total_degree > parsed.n - 1:
        return "BadDegree"
    return None


def _check_sum(parsed: _ParsedCertificate) -> Optional[str]:
    used = set(parsed.series.symbols.names)
    ksym = fresh_symbol("k", used)
    numerator = Poly.const(1)
    try:
        for i, j, d in parsed.pairing:
            _, ratio = poch_ratio_poly(
                parsed.upper[i].substitute(parsed.env),
                parsed.lower[j].substitute(parsed.env),
                ksym,
            )
            numerator = numerator * ratio.num
    except HypervanishError:
        return "BadSum"

    # Alternating sum with the argument weight; identically zero required.
    row = pascal_row(parsed.n)
    total = Poly.zero()
    sign = 1
    weight = Rat(1)
    for k in range(parsed.n + 1):
        total = total + numerator.substitute({ksym: k}) * (sign * row[k] * weight)
        sign = -sign
        weight *= parsed.arg
    if not total.is_zero():
        return "BadSum"

    for spot_env, claimed in parsed.spot_checks:
        try:
            value = evaluate_terminating(parsed.series, {**parsed.env, **spot_env})
        except HypervanishError:
            return "BadSum"
        if value != claimed:
            return "BadSum"
    return None
