"""Retracts of Q[x, y], functional decomposition and test-polynomial certification.

``q`` generates a retract exactly when there are univariate ``g1, g2`` with
``q(g1(t), g2(t)) = t``; the retraction is then ``x -> g1(q), y -> g2(q)``.
A polynomial lies in a proper retract iff it is ``g(q)`` for such a ``q``,
and it is a test polynomial iff it lies in none.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .endo import Endomorphism, check_fixed, compose, jacobian_det
from .errors import ConstantGenerator, ConstantInput, DegreeMismatch, NotInRetract, StepCapExceeded
from .groebner import FOUND, INFEASIBLE, solve_rational
from .limits import StepBudget
from .poly import (
    ONE,
    ZERO,
    X,
    Y,
    Polynomial,
    Q,
    compose_univariate,
    exact_divide,
    format_univariate,
    proportional,
    univariate,
)
from .reduction import invert_automorphism, is_coordinate
from .verdict import Verdict

DEFAULT_B_PARAM = 4
T = X  # the auxiliary variable t lives in the x slot

# per-system step allowance for the nonlinear parametrization search
SEARCH_BUDGET = 200_000


@dataclass(frozen=True)
class RetractCertificate:
    generator: Polynomial
    g1: Polynomial
    g2: Polynomial

    @property
    def retraction(self) -> Endomorphism:
        return Endomorphism(compose_univariate(self.g1, self.generator),
                            compose_univariate(self.g2, self.generator))

    def parametrization_holds(self) -> bool:
        return self.generator.subs(self.g1, self.g2) == T

    def to_json(self):
        return {
            "generator": self.generator.to_str(),
            "g1": format_univariate(self.g1),
            "g2": format_univariate(self.g2),
            "retraction": self.retraction.to_json(),
        }


@dataclass(frozen=True)
class TestPolyReport:
    verdict: Verdict
    witness: Endomorphism | None = None
    retract_found: RetractCertificate | None = None
    outer: Polynomial | None = None  # g with p = g(generator)
    branches: tuple = field(default=())

    __test__ = False  # not a pytest class


# -- univariate membership and decomposition ----------------------------------------


def univariate_membership(f: Polynomial, q: Polynomial):
    """Return g with ``f == g(q)`` if f lies in Q[q], else None."""
    if q.is_constant():
        raise ConstantGenerator("q must be non-constant")
    m = q.degree
    lead_q = q.leading_form()
    powers = {0: ONE}
    coeffs: dict = {}
    rem = f
    while not rem.is_constant():
        d = rem.degree
        if d % m:
            return None
        k = d // m
        if k not in powers:
            powers[k] = q**k
        c = proportional(rem.leading_form(), lead_q**k)
        if c is None:
            return None
        coeffs[k] = c
        rem = rem - powers[k] * c
    coeffs[0] = coeffs.get(0, Q(0)) + rem.constant_term()
    return Polynomial({(k, 0): c for k, c in coeffs.items()})


def _homogeneous_root(form: Polynomial, d: int, e: int):
    """The monic homogeneous h of degree e with h**d == form (form monic), or None."""
    top_y = form.degree_in(1)
    if top_y % d:
        return None
    # dehomogenize at x = 1: form(1, z) has degree top_y in z
    f = Polynomial({(j, 0): c for (i, j), c in form.items()})
    s = top_y // d
    r = Polynomial.monomial(s, 0)
    for i in range(1, s + 1):
        diff = f - r**d
        c = diff.coefficient(top_y - i, 0)
        if c:
            r = r + Polynomial.monomial(s - i, 0, c / d)
    if r**d != f:
        return None
    return Polynomial({(e - j, j): c for (j, _), c in r.items()})


def decompose_poly(p: Polynomial, d: int):
    """Find (g, q) with ``p == g(q)``, ``deg g == d``, q monic with zero constant term."""
    if p.is_constant():
        raise ConstantInput("p must be non-constant")
    if d < 2:
        raise ValueError("d must be >= 2")
    n = p.degree
    if n % d:
        raise DegreeMismatch(f"{d} does not divide deg p = {n}")
    e = n // d
    lc = p.leading_form().leading_coefficient()
    scaled = p * (1 / lc)
    h = _homogeneous_root(scaled.leading_form(), d, e)
    if h is None:
        return None
    dh = h ** (d - 1) * d
    approx = h
    # scaled = Q**d + (terms of degree <= (d-2)e) after a Tschirnhaus shift,
    # so the layers of degree de-1 .. de-e pin down Q one layer at a time
    for i in range(1, e + 1):
        deg = d * e - i
        diff = scaled.homogeneous_part(deg) - (approx**d).homogeneous_part(deg)
        if diff:
            layer = exact_divide(diff, dh)
            if layer is None:
                return None
            approx = approx + layer
    q = approx - approx.constant_term()
    g = univariate_membership(p, q)
    if g is None or g.degree != d:
        return None
    return g, q


def _divisors(n: int):
    return [k for k in range(1, n + 1) if n % k == 0]


def composite_obstruction(q: Polynomial):
    """If q = g(h) with deg g >= 2, return (g, h); such q never generate retracts."""
    for d in _divisors(q.degree)[1:]:
        found = decompose_poly(q, d)
        if found is not None:
            return d, found
    return None


# -- retract generators ---------------------------------------------------------------


def _cert_from_automorphism(q: Polynomial, decomposition) -> RetractCertificate:
    inv = invert_automorphism(decomposition)
    return RetractCertificate(q, inv.imgx.subs(T, 0), inv.imgy.subs(T, 0))


def is_retract_generator(q: Polynomial, bound: int = DEFAULT_B_PARAM, budget: StepBudget | None = None) -> Verdict:
    if q.is_constant():
        raise ConstantInput("q must be non-constant")
    budget = budget or StepBudget()
    if q.subs(X, 0) == X:
        return Verdict.yes(RetractCertificate(q, T, ZERO), reason="q(t, 0) = t")
    if q.subs(0, Y) == Y:
        return Verdict.yes(RetractCertificate(q, ZERO, T), reason="q(0, t) = t")
    coord = is_coordinate(q)
    if coord.is_yes:
        cert = _cert_from_automorphism(q, coord.certificate["decomposition"])
        return Verdict.yes(cert, reason="q is a coordinate")
    obstruction = composite_obstruction(q)
    if obstruction is not None:
        d, (g, h) = obstruction
        name = "even-power obstruction" if d % 2 == 0 else "composite obstruction"
        return Verdict.no(
            f"{name}: q = g(h) with deg g = {d}, so q(g1(t), g2(t)) has t-degree "
            f"divisible by {d} and never equals t",
            certificate={"g": g, "h": h},
        )
    return _parametrization_search(q, bound, budget)


def _parametrization_search(q: Polynomial, bound: int, budget: StepBudget) -> Verdict:
    tiers = []
    general_open = True
    for b in range(1, bound + 1):
        searches = [("graph-x", _graph_search, 0), ("graph-y", _graph_search, 1)]
        if general_open:
            searches.append(("general", _general_search, None))
        for name, search, arg in searches:
            sub = StepBudget(min(SEARCH_BUDGET, budget.cap - budget.used))
            try:
                status, cert = search(q, b, sub) if arg is None else search(q, b, arg, sub)
            except StepCapExceeded:
                status, cert = "budget", None
                if name == "general":
                    general_open = False
            budget.tick(sub.used)
            tiers.append({"search": name, "degree": b, "status": status})
            if cert is not None:
                return Verdict.yes(cert, reason=f"{name} parametrization of degree {b}",
                                   bounds={"B_param": bound, "tiers": tiers})
    return Verdict.inconclusive({"B_param": bound, "tiers": tiers},
                                reason=f"no parametrization found with deg g1, deg g2 <= {bound}")


# Sparse arithmetic on dicts keyed by exponent tuples, for polynomials whose
# coefficients are themselves polynomials in the search unknowns.


def _dmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _dadd_scaled(acc: dict, a: dict, c) -> None:
    for m, v in a.items():
        s = acc.get(m, 0) + c * v
        if s:
            acc[m] = s
        else:
            acc.pop(m, None)


def _dpowers(a: dict, n: int, nv: int) -> list:
    out = [{(0,) * nv: Q(1)}]
    for _ in range(n):
        out.append(_dmul(out[-1], a))
    return out


def _substitute_generic(q: Polynomial, gx: dict, gy: dict, nv: int) -> dict:
    px = _dpowers(gx, q.degree_in(0), nv)
    py = _dpowers(gy, q.degree_in(1), nv)
    acc: dict = {}
    for (i, j), c in q.items():
        _dadd_scaled(acc, _dmul(px[i], py[j]), c)
    return acc


def _coefficients_in_last(p: dict) -> dict:
    """Split a dict polynomial by the exponent of its last variable."""
    out: dict = {}
    for m, c in p.items():
        out.setdefault(m[-1], {})[m[:-1]] = c
    return out


def _unit(nv: int, idx: int) -> tuple:
    return tuple(1 if k == idx else 0 for k in range(nv))


def _graph_search(q: Polynomial, b: int, axis: int, budget: StepBudget):
    """Curves y = h(x) (axis 0) or x = h(y) (axis 1) on which q is affine."""
    # variables: w, h_b, ..., h_0, s  (s is the curve parameter)
    nv = b + 3
    hvars = {j: 1 + (b - j) for j in range(b + 1)}
    param = {_unit(nv, nv - 1): Q(1)}
    h = {}
    for j, var in hvars.items():
        m = list(_unit(nv, var))
        m[-1] = j
        h[tuple(m)] = Q(1)
    gx, gy = (param, h) if axis == 0 else (h, param)
    by_power = _coefficients_in_last(_substitute_generic(q, gx, gy, nv))
    lin = by_power.get(1, {})
    equations = [c for k, c in by_power.items() if k >= 2]
    # w * (coefficient of s) = 1 forces q to be non-constant along the curve
    rab = {tuple(a + bb for a, bb in zip(m, _unit(nv - 1, 0))): c for m, c in lin.items()}
    rab[(0,) * (nv - 1)] = rab.get((0,) * (nv - 1), 0) - 1
    equations.append(rab)
    status, point = solve_rational(equations, nv - 1, budget)
    if status != FOUND:
        return status, None
    hpoly = Polynomial({(j, 0): point[var] for j, var in hvars.items()})
    # along the curve q = lam*s + mu; reparametrize by t = lam*s + mu
    along = q.subs(T, hpoly) if axis == 0 else q.subs(hpoly, T)
    lam, mu = along.coefficient(1, 0), along.coefficient(0, 0)
    s_of_t = (T - mu) * (1 / lam)
    other = compose_univariate(hpoly, s_of_t)
    g1, g2 = (s_of_t, other) if axis == 0 else (other, s_of_t)
    cert = RetractCertificate(q, g1, g2)
    return (FOUND, cert) if cert.parametrization_holds() else ("unknown", None)


def _general_search(q: Polynomial, b: int, budget: StepBudget):
    """Dense ansatz g1 = sum a_i t^i, g2 = sum c_i t^i with q(g1, g2) = t."""
    nv = 2 * b + 3
    gx, gy = {}, {}
    for i in range(b + 1):
        mx = list(_unit(nv, b - i))
        mx[-1] = i
        gx[tuple(mx)] = Q(1)
        my = list(_unit(nv, 2 * b + 1 - i))
        my[-1] = i
        gy[tuple(my)] = Q(1)
    by_power = _coefficients_in_last(_substitute_generic(q, gx, gy, nv))
    equations = []
    for k in set(by_power) | {1}:
        eq = dict(by_power.get(k, {}))
        if k == 1:
            zero = (0,) * (nv - 1)
            eq[zero] = eq.get(zero, 0) - 1
            if not eq[zero]:
                del eq[zero]
        if eq:
            equations.append(eq)
    status, point = solve_rational(equations, nv - 1, budget)
    if status != FOUND:
        return status, None
    g1 = univariate([point[b - i] for i in range(b + 1)])
    g2 = univariate([point[2 * b + 1 - i] for i in range(b + 1)])
    cert = RetractCertificate(q, g1, g2)
    return (FOUND, cert) if cert.parametrization_holds() else ("unknown", None)


# -- membership in retracts and test polynomials ------------------------------------


def retract_membership(p: Polynomial, bound: int = DEFAULT_B_PARAM, budget: StepBudget | None = None) -> Verdict:
    """Decide whether p lies in a proper retract; Yes carries (certificate, g) with p = g(q)."""
    if p.is_constant():
        raise ConstantInput("p must be non-constant")
    budget = budget or StepBudget()
    branches = []
    saw_inconclusive = False
    for d in _divisors(p.degree):
        if d == 1:
            g, q = T, p
        else:
            found = decompose_poly(p, d)
            if found is None:
                branches.append({"d": d, "outcome": "no", "reason": f"p is not g(q) with deg g = {d}"})
                continue
            g, q = found
        try:
            verdict = is_retract_generator(q, bound, budget)
        except StepCapExceeded:
            verdict = Verdict.inconclusive({"B_param": bound}, reason="step cap")
        record = {"d": d, "generator": q.to_str(), "outcome": verdict.outcome}
        if verdict.reason:
            record["reason"] = verdict.reason
        if verdict.bounds:
            record["bounds"] = verdict.bounds
        branches.append(record)
        if verdict.is_yes:
            return Verdict.yes((verdict.certificate, g), bounds={"B_param": bound}, branches=branches)
        if verdict.is_inconclusive:
            saw_inconclusive = True
    if saw_inconclusive:
        return Verdict.inconclusive({"B_param": bound}, reason="some branch exhausted its bounds",
                                    branches=branches)
    return Verdict.no("every divisor branch is refuted", branches=branches)


def construct_degenerate_fixer(cert: RetractCertificate, p: Polynomial) -> Endomorphism:
    """The retraction onto Q[q]; it fixes p and has zero Jacobian."""
    if univariate_membership(p, cert.generator) is None:
        raise NotInRetract(f"{p} is not a polynomial in {cert.generator}")
    return cert.retraction


def is_test_polynomial(p: Polynomial, bound: int = DEFAULT_B_PARAM) -> TestPolyReport:
    if p.is_constant():
        raise ConstantInput("constants are fixed by every endomorphism")
    membership = retract_membership(p, bound)
    branches = tuple(membership.flags.get("branches", ()))
    if membership.is_yes:
        cert, g = membership.certificate
        witness = construct_degenerate_fixer(cert, p)
        verdict = Verdict.no(f"p = g(q) lies in the proper retract Q[q], q = {cert.generator}",
                             bounds=membership.bounds)
        return TestPolyReport(verdict, witness, cert, g, branches)
    if membership.is_no:
        verdict = Verdict.yes({"note": "every divisor branch refuted; p lies in no proper retract"},
                              bounds={"B_param": bound})
        return TestPolyReport(verdict, branches=branches)
    return TestPolyReport(Verdict.inconclusive(membership.bounds, reason=membership.reason), branches=branches)


def witness_is_valid(witness: Endomorphism, p: Polynomial) -> bool:
    return check_fixed(witness, p) and jacobian_det(witness).is_zero()


def retraction_is_idempotent(pi: Endomorphism) -> bool:
    return compose(pi, pi) == pi
