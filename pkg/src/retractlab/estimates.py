"""Degree estimates for two-generated subalgebras and the bounded phi-infinity probe.

For algebraically independent ``p, q`` with ``n = deg p <= m = deg q`` and
``k = deg D(p, q)`` put

    N(p, q) = m*n/gcd(n, m) - m - n + k + 2.

When the leading forms of ``p`` and ``q`` are dependent, ``N`` controls how
much cancellation can happen in ``w(p, q)``.  Expressions ``w`` in the two
generators are ordinary :class:`Polynomial` objects whose first variable
stands for ``p`` and second for ``q`` (printed as ``s`` and ``t``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .endo import Endomorphism, is_injective, iterate, pair_jacobian
from .errors import ConstantInput, DependentPair, HypothesisViolation, NonInjective
from .linalg import intersect, nullspace, row_space_basis
from .poly import Polynomial, Q
from .reduction import elementary_reduce, is_elementary_reduced

GEN_NAMES = ("s", "t")


@dataclass(frozen=True)
class DegreeEstimate:
    n: int
    m: int
    g: int
    k: int
    N: int
    swapped: bool = False

    def y_branch(self, t_degree: int):
        """``(b, r)`` with ``t_degree = (n/g)*b + r`` and ``0 <= r < n/g``."""
        return divmod(t_degree, self.n // self.g)

    def x_branch(self, s_degree: int):
        """``(b1, r1)`` with ``s_degree = (m/g)*b1 + r1`` and ``0 <= r1 < m/g``."""
        return divmod(s_degree, self.m // self.g)

    def to_json(self):
        return {"n": self.n, "m": self.m, "g": self.g, "k": self.k, "N": self.N}


def _check_pair(p: Polynomial, q: Polynomial):
    if p.is_constant() or q.is_constant():
        raise ConstantInput("p and q must be non-constant")
    jac = pair_jacobian(p, q)
    if jac.is_zero():
        raise DependentPair("p and q are algebraically dependent (zero Jacobian)")
    return jac


def _ordered(w, p, q):
    """Swap so that ``deg p <= deg q``; the generators of ``w`` swap along."""
    if p.degree <= q.degree:
        return w, p, q, False
    if w is not None:
        w = Polynomial({(j, i): c for (i, j), c in w.items()})
    return w, q, p, True


def estimate_N(p: Polynomial, q: Polynomial) -> DegreeEstimate:
    jac = _check_pair(p, q)
    _, p, q, swapped = _ordered(None, p, q)
    n, m, k = p.degree, q.degree, jac.degree
    g = gcd(n, m)
    return DegreeEstimate(n, m, g, k, m * n // g - m - n + k + 2, swapped)


def leading_forms_dependent(p: Polynomial, q: Polynomial) -> bool:
    # homogeneous forms are algebraically dependent iff their Jacobian vanishes
    return pair_jacobian(p.leading_form(), q.leading_form()).is_zero()


def _is_linear_in_generators(w: Polynomial) -> bool:
    return w.degree <= 1


def su_hypothesis_failure(w: Polynomial, p: Polynomial, q: Polynomial):
    """Name of the first unmet hypothesis of :func:`su_lower_bound`, or None."""
    _check_pair(p, q)
    w, p, q, _ = _ordered(w, p, q)
    n, m = p.degree, q.degree
    if n == m:
        return "deg p < deg q"
    if m % n == 0:
        return "deg p does not divide deg q"
    if not leading_forms_dependent(p, q):
        return "leading forms algebraically dependent"
    if _is_linear_in_generators(w):
        return "w not a linear combination of the generators"
    return None


def su_lower_bound(w: Polynomial, p: Polynomial, q: Polynomial) -> int:
    """Lower bound for ``deg w(p, q)`` when the leading forms of p, q are dependent.

    With ``deg_t w = (n/g)*b + r`` the bound is ``b*N + m*r``; if ``w`` does not
    involve ``t`` and ``deg_s w = (m/g)*b1 + r1`` it is ``b1*N + n*r1``.
    """
    failed = su_hypothesis_failure(w, p, q)
    if failed:
        raise HypothesisViolation(failed)
    est = estimate_N(p, q)
    w, _, _, _ = _ordered(w, p, q)
    t_deg = w.degree_in(1)
    if t_deg > 0:
        b, r = est.y_branch(t_deg)
        return b * est.N + est.m * r
    b1, r1 = est.x_branch(w.degree_in(0))
    return b1 * est.N + est.n * r1


def substitute_generators(w: Polynomial, p: Polynomial, q: Polynomial) -> Polynomial:
    return w.subs(p, q)


@dataclass(frozen=True)
class LemmaCheck:
    holds: bool
    degree: int
    n: int
    k: int

    def to_json(self):
        return {"holds": self.holds, "deg_w_pq": self.degree, "n": self.n, "k": self.k,
                "min_n_k": min(self.n, self.k)}


def lemma_check(w: Polynomial, p: Polynomial, q: Polynomial) -> LemmaCheck:
    """Expand ``w(p, q)`` and compare its degree with ``min(n, k)``."""
    jac = _check_pair(p, q)
    w, p, q, _ = _ordered(w, p, q)
    n, m = p.degree, q.degree
    if not is_elementary_reduced(p, q):
        raise HypothesisViolation("pair elementary reduced")
    if n == m:
        raise HypothesisViolation("deg p < deg q")
    if n < 2:
        raise HypothesisViolation("deg p >= 2 and deg q >= 2")
    if _is_linear_in_generators(w):
        raise HypothesisViolation("w not a linear combination of the generators")
    d = substitute_generators(w, p, q).degree
    k = jac.degree
    return LemmaCheck(d > min(n, k), d, n, k)


def verify_lemma_instance(w: Polynomial, p: Polynomial, q: Polynomial) -> bool:
    return lemma_check(w, p, q).holds


# -- phi-infinity probe ------------------------------------------------------------


def _monomials_up_to(D: int):
    """Monomials of degree <= D, highest first in canonical print order."""
    return [(i, d - i) for d in range(D, -1, -1) for i in range(0, d + 1)]


@dataclass(frozen=True)
class ProbeResult:
    basis: tuple
    exact: tuple
    D: int
    K: int

    def to_json(self):
        return {"basis": [b.to_str() for b in self.basis],
                "per_k": [{"k": i + 1, "exact": e} for i, e in enumerate(self.exact)]}


def _pair_exact(p: Polynomial, q: Polynomial) -> bool:
    if not leading_forms_dependent(p, q):
        return True
    n, m = sorted((p.degree, q.degree))
    return n != m and m % n != 0


def subalgebra_slice(u: Polynomial, v: Polynomial, D: int):
    """Degree <= D part of Q[u, v] as row vectors over :func:`_monomials_up_to`.

    Returns ``(basis_rows, exact)``.  Products of the reduced generators are
    enumerated up to ``2*D + deg p + deg q``.
    """
    reduced = elementary_reduce(u, v)
    p, q = reduced.first, reduced.second
    n, m = p.degree, q.degree
    cap = 2 * D + n + m
    products = []
    p_pows = [Polynomial.constant(1)]
    while n * len(p_pows) <= cap:
        p_pows.append(p_pows[-1] * p)
    q_pow = Polynomial.constant(1)
    j = 0
    while m * j <= cap:
        for i, pp in enumerate(p_pows):
            if n * i + m * j > cap:
                break
            products.append(pp * q_pow)
        q_pow = q_pow * q
        j += 1
    low = _monomials_up_to(D)
    low_index = {mono: idx for idx, mono in enumerate(low)}
    high = sorted({mono for f in products for mono, _ in f.items() if mono not in low_index})
    high_index = {mono: idx for idx, mono in enumerate(high)}
    # combinations whose terms above degree D cancel
    rows = [[Q(0)] * len(products) for _ in high]
    for col, f in enumerate(products):
        for mono, c in f.items():
            if mono in high_index:
                rows[high_index[mono]][col] = c
    combos = nullspace(rows, len(products)) if high else [
        [Q(1) if i == col else Q(0) for i in range(len(products))] for col in range(len(products))
    ]
    vectors = []
    for z in combos:
        vec = [Q(0)] * len(low)
        for col, coef in enumerate(z):
            if coef:
                for mono, c in products[col].items():
                    if mono in low_index:
                        vec[low_index[mono]] += coef * c
        vectors.append(vec)
    return row_space_basis(vectors, len(low)), _pair_exact(p, q)


def phi_infinity_probe(phi: Endomorphism, D: int, K: int) -> ProbeResult:
    """Basis of the polynomials of degree <= D lying in the image of every phi^k, k <= K."""
    if not is_injective(phi):
        raise NonInjective("phi must be injective (nonzero Jacobian)")
    if D < 0 or K < 1:
        raise ValueError("need D >= 0 and K >= 1")
    low = _monomials_up_to(D)
    space = None
    exact = []
    for k in range(1, K + 1):
        it = iterate(phi, k)
        rows, ok = subalgebra_slice(it.imgx, it.imgy, D)
        exact.append(ok)
        space = rows if space is None else intersect(space, rows, len(low))
    basis = [Polynomial({mono: c for mono, c in zip(low, row) if c}) for row in space]
    basis.sort(key=lambda f: (f.degree, [(-i - j, -j) for (i, j), _ in f.sorted_terms()]))
    return ProbeResult(tuple(basis), tuple(exact), D, K)
