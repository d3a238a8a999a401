"""Acceptance suite: one test per criterion, exact equality throughout.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
PASS lines and timings on the console.
"""

import copy
import time
from fractions import Fraction as F
from math import factorial

from conftest import random_series_spec

from hypervanish import (
    Poly,
    alt_binom_sum,
    check_certificate,
    evaluate_terminating,
    poch_ratio_poly,
    rf_num,
    rf_sym,
    sym,
)
from hypervanish import andrews, cli, saalschutz
from hypervanish.poly import LinForm
from hypervanish.prover import is_pole_at
from hypervanish.rng import SplitMix64
from hypervanish.specparse import format_series_spec, parse_series_spec


def report(criterion, started):
    print(f"PASS criterion {criterion} ({time.perf_counter() - started:.2f}s)")


def test_criterion_1_saalschutz_numeric_suite():
    started = time.perf_counter()
    rng = SplitMix64(1001)
    for m in range(26):
        done = 0
        while done < 100:
            a, b, c = rng.rational(), rng.rational(), rng.rational()
            bad = any(
                v.denominator == 1 and -(m - 1) <= v <= 0 for v in (c, c - a - b)
            )
            if bad:
                continue
            outcome = saalschutz.verify_numeric(a, b, c, m)
            assert outcome.equal, (a, b, c, m)
            done += 1
    report("1 (Pfaff-Saalschutz numeric, m<=25 x 100 samples)", started)


def test_criterion_2_saalschutz_symbolic_replay():
    started = time.perf_counter()
    rng = SplitMix64(1002)
    c = sym("c")
    for m in range(13):
        done = 0
        while done < 20:
            a, b = rng.rational(), rng.rational()
            if (a - b).denominator == 1:
                continue
            poly = saalschutz.master_poly_in_c(a, b, m)
            assert poly.degree_in("c") == 2 * m
            assert poly.coefficient_of("c", 2 * m) == Poly.const(1)
            for base in (a, b):
                for i in range(m):
                    assert poly.substitute({"c": base - i}).constant_value() == 0
            assert poly == rf_sym(c - a, m) * rf_sym(c - b, m)
            done += 1
    report("2 (Saalschutz symbolic replay, m<=12 x 20 samples)", started)


def test_criterion_3_andrews_numeric_suite():
    started = time.perf_counter()
    rng = SplitMix64(1003)
    for m in range(16):
        series = andrews.series_in_x(m)
        n = 2 * m + 1
        done = 0
        while done < 30:
            env = {"x": rng.rational(), "z": rng.rational()}
            if is_pole_at(series, env, n):
                continue
            assert evaluate_terminating(series, env) == 0, (m, env)
            done += 1
    report("3 (Andrews numeric, m<=15 x 30 samples)", started)


def test_criterion_4_andrews_full_proof_replay():
    started = time.perf_counter()
    for m in range(9):
        certificates = andrews.integer_y_vanish(m)
        assert len(certificates) == 2 * m + 2
        for certificate in certificates:
            assert certificate.conclusion == "vanishes"
        for y in range(2 * m + 2):
            assert andrews.build_P1P2(y, m).k_degree() == 2 * m
        for k in range(2 * m + 2):
            # builders verify degree and the exact-division cross-checks
            assert andrews.build_Q1(k, m).degree_in("y") == m
            assert andrews.build_Q2(k, m).degree_in("y") == m
        master, doc = andrews.master_poly_and_prove(m)
        assert master.is_zero()
        assert doc["master"]["zero"] is True
    report("4 (Andrews full proof replay, m<=8)", started)


def test_criterion_5_lemma_property_suites():
    started = time.perf_counter()
    rng = SplitMix64(1005)
    k = Poly.variable("k")

    for _ in range(1000):  # difference operator annihilates low degrees
        n = rng.randint(1, 12)
        degree = rng.randint(0, n - 1)
        p = Poly.zero()
        for power in range(degree + 1):
            p = p + k**power * rng.rational(20, 20)
        assert alt_binom_sum(p, n) == 0

    for _ in range(1000):  # and sends monic degree-n to (-1)^n n!
        n = rng.randint(0, 10)
        p = k**n
        for power in range(n):
            p = p + k**power * rng.rational(20, 20)
        assert alt_binom_sum(p, n) == F((-1) ** n * factorial(n))

    for _ in range(1000):  # ratio closed form against numeric quotients
        while True:
            beta = rng.rational(20, 20)
            if beta.denominator > 1:
                break
        d = rng.randint(0, 8)
        alpha = LinForm(beta + d)
        got_d, ratio = poch_ratio_poly(alpha, LinForm(beta))
        assert got_d == d and ratio.k_degree() == d
        den = ratio.den.constant_value()
        assert den == rf_num(beta, d)
        for j in range(d + 4):
            lhs = den * rf_num(alpha.constant_value(), j)
            rhs = ratio.num.substitute({"k": j}).constant_value() * rf_num(beta, j)
            assert lhs == rhs

    for _ in range(1000):  # shift formula
        u = rng.rational(20, 20)
        i, j = rng.randint(0, 20), rng.randint(0, 20)
        assert rf_num(u, i + j) == rf_num(u, i) * rf_num(u + i, j)

    half = F(1, 2)
    for _ in range(1000):  # both duplication formulas, symbolically
        name = ("y", "z", "c")[rng.randint(0, 2)]
        a = rng.nonzero_rational(8, 8) * sym(name) + rng.rational(8, 8)
        n = rng.randint(0, 15)
        assert rf_sym(a, 2 * n) == rf_sym(a / 2, n) * rf_sym(a / 2 + half, n) * F(4**n)
        assert rf_sym(a, 2 * n + 1) == rf_sym(a / 2, n + 1) * rf_sym(a / 2 + half, n) * F(
            2 * 4**n
        )
    report("5 (lemma property suites, 1000 instances each)", started)


def tamper_documents(documents):
    """Deterministic single-field mutations of claim-bearing fields."""
    for doc in documents:
        yield mutate(doc, lambda d: d.update(version=d["version"] + 1))
        yield mutate(doc, lambda d: d.update(n=d["n"] + 1))
        yield mutate(doc, lambda d: d.update(total_degree=d["total_degree"] + 1))
        yield mutate(doc, lambda d: d.update(conclusion="refuted"))
        yield mutate(doc, lambda d: d["series"].update(arg="2"))
        for i in range(len(doc["series"]["upper"])):
            yield mutate(doc, lambda d, i=i: d["series"]["upper"].__setitem__(
                i, d["series"]["upper"][i] + " + 1"))
        for i in range(len(doc["series"]["lower"])):
            yield mutate(doc, lambda d, i=i: d["series"]["lower"].__setitem__(
                i, d["series"]["lower"][i] + " + 1"))
        for name in doc["env"]:
            yield mutate(doc, lambda d, name=name: d["env"].update(
                {name: d["env"][name] + "1"}))
        for i in range(len(doc["pairing"])):
            for field in ("upper", "lower", "d"):
                yield mutate(doc, lambda d, i=i, f=field: d["pairing"][i].update(
                    {f: d["pairing"][i][f] + 1}))
        yield mutate(doc, lambda d: d["spot_checks"][0].update(value="1"))


def mutate(doc, action):
    out = copy.deepcopy(doc)
    action(out)
    return out


def test_criterion_6_prover_soundness_and_certificates():
    started = time.perf_counter()
    certificates = []
    for m in range(1, 11):
        for i in range(m):
            for which in ("a", "b"):
                certificates.append(saalschutz.prove_specialization(which, i, m))
    for m in range(7):
        certificates.extend(andrews.integer_y_vanish(m))

    for certificate in certificates:
        assert certificate.total_degree == certificate.n - 1  # balanced gap sum
        assert check_certificate(certificate).accepted

    documents = [certificates[i].to_dict() for i in range(0, len(certificates), 9)]
    tampered = 0
    for bad in tamper_documents(documents):
        outcome = check_certificate(bad)
        assert not outcome.accepted, bad
        assert outcome.reason in {"Malformed", "BadPairing", "BadDegree", "BadSum"}
        tampered += 1
        if tampered == 100:
            break
    assert tampered == 100
    report(
        f"6 (prover soundness: {len(certificates)} certificates, 100 tampers)",
        started,
    )


def test_criterion_7_cli_contract(tmp_path, capsys):
    started = time.perf_counter()

    rng = SplitMix64(1007)
    for _ in range(200):  # grammar round trip
        spec = random_series_spec(rng)
        text = format_series_spec(spec)
        reparsed = parse_series_spec(text)
        assert reparsed.series == spec.series and reparsed.bind == spec.bind

    def run(*argv):
        code = cli.main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    # golden equality of seeded randomized reports across consecutive runs
    first = run("saalschutz", "--m", "4", "--samples", "25", "--seed", "9")
    second = run("saalschutz", "--m", "4", "--samples", "25", "--seed", "9")
    assert first == second and first[0] == 0
    first = run("andrews", "--m", "3", "--samples", "10", "--seed", "9")
    second = run("andrews", "--m", "3", "--samples", "10", "--seed", "9")
    assert first == second and first[0] == 0

    # exit statuses: success, verification failure, usage/parse error
    code, out, _ = run("saalschutz", "--a", "2", "--b", "3", "--c", "4", "--m", "1")
    assert code == 0 and out == "lhs=-1/2 rhs=-1/2 equal\n"
    code, out, _ = run("andrews", "--m", "1", "--x", "1/5", "--z", "1/7")
    assert code == 0 and out == "0\n"

    spec_text = "sym a, b; upper: -3, a, b; lower: a-1, b-1; arg: 1"
    cert_path = tmp_path / "cert.json"
    code, _, _ = run("prove-vanish", spec_text, "--out", str(cert_path))
    assert code == 0
    code, out, _ = run("check-cert", str(cert_path))
    assert code == 0 and out == "accept\n"

    import json

    doc = json.loads(cert_path.read_text())
    doc["total_degree"] = 4
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(doc))
    code, out, _ = run("check-cert", str(bad_path))
    assert code == 1 and out == "reject BadDegree\n"

    code, _, err = run("eval", "sym a; upper: a+; lower: a; arg: 1")
    assert code == 2 and err.startswith("error: ParseError:")

    report("7 (CLI contract: round trips, golden reports, exit codes)", started)
