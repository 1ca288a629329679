"""Acceptance suite: one test per criterion, each printing a single pass/fail line.

Run with ``pytest tests/test_acceptance.py -v``; every check is an exact equality over Q.
"""

import random
import time

import pytest

from generators import dependent_pair, rand_poly, rand_rational, rand_tame
from golden_cases import CASES, golden_path
from oracles import brute_force_membership, in_span, terms_of
from retractlab import (
    Endomorphism,
    Polynomial,
    apply,
    check_fixed,
    compose,
    estimate_N,
    is_automorphism,
    is_coordinate,
    is_elementary_reduced,
    is_retract_generator,
    is_test_polynomial,
    iterate,
    jacobian_det,
    lemma_check,
    pair_jacobian,
    parse_polynomial,
    phi_infinity_probe,
    retract_membership,
    su_lower_bound,
    subalgebra_membership,
)
from retractlab.cli import run
from retractlab.estimates import su_hypothesis_failure
from retractlab.poly import compose_univariate, univariate

P = parse_polynomial
E = Endomorphism.parse


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return emit


def test_c1_tame_round_trip(report):
    rng = random.Random(1)
    start = time.perf_counter()
    bad = []
    for idx in range(200):
        phi = rand_tame(rng, max_steps=6)
        v = is_automorphism(phi)
        if not (v.is_yes and v.certificate.replay() == phi):
            bad.append(idx)
    elapsed = time.perf_counter() - start
    report(1, not bad and elapsed < 60,
           f"tame round-trip, 200 automorphisms, {len(bad)} failures, {elapsed:.1f} s")


def _nonconstant_jacobian(rng):
    while True:
        phi = Endomorphism(rand_poly(rng, rng.randint(1, 3), 4), rand_poly(rng, rng.randint(1, 3), 4))
        if not jacobian_det(phi).is_constant():
            return phi


def _zero_jacobian(rng):
    h = rand_poly(rng, rng.randint(1, 2), 3, min_degree=1)
    if h.is_constant():
        h = h + P("x")
    i, j = rng.randint(1, 3), rng.randint(1, 3)
    return Endomorphism(h**i * rand_rational(rng, nonzero=True) + rand_rational(rng),
                        h**j * rand_rational(rng, nonzero=True) + rand_rational(rng))


def test_c2_non_automorphism_soundness(report):
    rng = random.Random(2)
    bad = []
    for _ in range(50):
        phi = _nonconstant_jacobian(rng)
        v = is_automorphism(phi)
        if not (v.is_no and v.reason == "non-constant Jacobian"):
            bad.append(phi)
    for _ in range(20):
        phi = _zero_jacobian(rng)
        v = is_automorphism(phi)
        if not (jacobian_det(phi).is_zero() and v.is_no and v.reason == "non-injective"):
            bad.append(phi)
    report(2, not bad, f"non-automorphism soundness, 50 + 20 maps, {len(bad)} failures")


def test_c3_chain_rule_growth(report):
    rng = random.Random(3)
    bad, count = [], 0
    while count < 20:
        phi = Endomorphism(rand_poly(rng, rng.randint(1, 2), 3), rand_poly(rng, rng.randint(1, 2), 3))
        if jacobian_det(phi).degree < 1:
            continue
        count += 1
        for k in range(1, 5):
            if jacobian_det(iterate(phi, k)).degree < k:
                bad.append((phi, k))
    report(3, not bad, f"deg D(phi^k) >= k for 20 maps, k = 1..4, {len(bad)} failures")


def _independent_pair(rng):
    while True:
        n = rng.randint(2, 3)
        p, q = rand_poly(rng, n, 3), rand_poly(rng, rng.randint(n + 1, 4), 4)
        if not pair_jacobian(p, q).is_zero() and is_elementary_reduced(p, q):
            return p, q


def _random_w(rng):
    while True:
        terms = {(rng.randint(0, 3), rng.randint(0, 3)): rand_rational(rng, nonzero=True)
                 for _ in range(rng.randint(1, 4))}
        w = Polynomial(terms)
        if w.degree >= 2:
            return w


def test_c4_lemma_suite(report):
    rng = random.Random(4)
    bad, su_checked = [], 0
    for idx in range(50):
        p, q = dependent_pair(rng) if idx % 2 == 0 else _independent_pair(rng)
        w = _random_w(rng)
        check = lemma_check(w, p, q)
        value = w.subs(p, q)
        est = estimate_N(p, q)
        if not (check.holds and value.degree > min(est.n, est.k) and check.degree == value.degree):
            bad.append(("lemma", p, q, w))
        if su_hypothesis_failure(w, p, q) is None:
            su_checked += 1
            if value.degree < su_lower_bound(w, p, q):
                bad.append(("su", p, q, w))
    report(4, not bad and su_checked > 0,
           f"lemma on 50 pairs, bound checked on {su_checked}, {len(bad)} violations")


def test_c5_retract_suite(report):
    rng = random.Random(5)
    bad = []
    for _ in range(50):
        u = rand_poly(rng, rng.randint(0, 3), 4)
        p = P("x") + P("y") * u
        v = is_retract_generator(p)
        if not v.is_yes:
            bad.append((p, "generator"))
            continue
        pi = v.certificate.retraction
        if not (compose(pi, pi) == pi and apply(pi, p) == p):
            bad.append((p, "retraction"))
        rep = is_test_polynomial(p)
        w = rep.witness
        if not (rep.verdict.is_no and check_fixed(w, p) and jacobian_det(w).is_zero()):
            bad.append((p, "witness"))
    report(5, not bad, f"x + y*u for 50 random u, {len(bad)} failures")


RETRACT_GENERATORS = ["x", "x*y", "x + y*x", "x + x*y + x^3", "x + y^2", "x + y*(x^2 - y)", "y + x*y^2"]
OUTER = ["t^2", "t^2 + t", "t^3 - t", "2*t^3 + t^2 + 1", "t^2 - 3*t + 1/2", "t^3"]


def _corpus():
    rng = random.Random(6)
    corpus = [(P("x*y"), univariate([0, 1]))]
    while len(corpus) < 20:
        q = P(rng.choice(RETRACT_GENERATORS))
        g = parse_polynomial(rng.choice(OUTER), ("t", "_"))
        if all(compose_univariate(g, q) != compose_univariate(g2, q2) for q2, g2 in corpus):
            corpus.append((q, g))
    return corpus


def test_c6_retract_membership_consistency(report):
    bad = []
    for q, g in _corpus():
        p = compose_univariate(g, q)
        if not retract_membership(p).is_yes:
            bad.append((p, "membership"))
        if not is_test_polynomial(p).verdict.is_no:
            bad.append((p, "test"))
    v = is_coordinate(P("x*y"))
    origin = v.is_no and "origin" in v.reason and v.bounds is None
    report(6, not bad and origin, f"20 curated g(q), {len(bad)} failures, x*y origin obstruction {origin}")


def test_c7_subalgebra_oracle(report):
    rng = random.Random(7)
    bad, members = [], 0
    for idx in range(100):
        u, v = rand_poly(rng, rng.randint(1, 3), 3), rand_poly(rng, rng.randint(1, 3), 3)
        if idx % 2:
            f = rand_poly(rng, rng.randint(1, 6), 5)
        else:
            top = max(1, 6 // max(u.degree, v.degree))
            f = rand_poly(rng, top, 4).subs(u, v)
        expr = subalgebra_membership(f, u, v)
        oracle = brute_force_membership(f, u, v)
        if (expr is None) != (oracle is None) or (expr is not None and expr.subs(u, v) != f):
            bad.append((f, u, v))
        members += expr is not None
    report(7, not bad, f"100 instances ({members} members) agree with the oracle, {len(bad)} failures")


PROBE_FIXED = [("x", "y^2", "x^3 - x"), ("y", "x", "x*y + x + y"), ("x", "x*y", "x^2 + 1"),
               ("x + y*x", "y^2", "3"), ("x*y", "y", "y^4 - y")]


def test_c8_phi_infinity_probe(report):
    ok = True
    a = phi_infinity_probe(E("x", "y^2"), 4, 3)
    ok &= [b.to_str() for b in a.basis] == ["1", "x", "x^2", "x^3", "x^4"] and all(a.exact)
    b = phi_infinity_probe(E("x^2", "y^2"), 3, 2)
    ok &= [t.to_str() for t in b.basis] == ["1"] and all(b.exact)
    fixed_ok = True
    for fx, fy, p in PROBE_FIXED:
        phi, p = E(fx, fy), P(p)
        assert check_fixed(phi, p)
        basis = [terms_of(t) for t in phi_infinity_probe(phi, max(p.degree, 1), 3).basis]
        fixed_ok &= in_span(terms_of(p), basis)
    report(8, ok and fixed_ok, f"probe examples {ok}, fixed points contained {fixed_ok}")


def test_c9_cli_determinism(report):
    golden_ok, verify_ok = True, True
    for name, argv in CASES.items():
        first, second = run(argv), run(argv)
        golden_ok &= first == second and first[0] == 0
        golden_ok &= first[1] + "\n" == golden_path(name).read_text()
        code, text = run(argv + ["--verify"])
        verify_ok &= code == 0 and '"verified": true' in text
    rng = random.Random(9)
    trips = 0
    for _ in range(500):
        f = rand_poly(rng, rng.randint(0, 6), rng.randint(1, 8), height=7)
        trips += P(f.to_str()) == f and P(f.to_str()).to_str() == f.to_str()
    report(9, golden_ok and verify_ok and trips == 500,
           f"{len(CASES)} goldens stable {golden_ok}, --verify {verify_ok}, round trip {trips}/500")
