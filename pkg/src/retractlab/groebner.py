"""A small Buchberger engine over Q.

Polynomials are dicts ``exponent-tuple -> coefficient`` wrapped in
:class:`MultiPoly` at the API boundary.  The tag-variable membership test
works in Q[x, y, s, t]; the same engine also serves the lexicographic
systems solved by the retract parametrization search.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConstantGenerator, OrderMismatch
from .limits import StepBudget
from .poly import Polynomial, Q


class TermOrder:
    """A monomial order on ``nvars`` variables given by a sort key (larger = bigger)."""

    def __init__(self, name: str, nvars: int, key):
        self.name = name
        self.nvars = nvars
        self.key = lru_cache(maxsize=None)(key)

    def __repr__(self):
        return f"TermOrder({self.name!r}, {self.nvars})"

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.name, self.nvars) == (other.name, other.nvars)

    def __hash__(self):
        return hash((self.name, self.nvars))


def grevlex(nvars: int) -> TermOrder:
    return TermOrder("grevlex", nvars, lambda m: (sum(m),) + tuple(-e for e in reversed(m)))


def lex(nvars: int) -> TermOrder:
    return TermOrder("lex", nvars, lambda m: m)


def _elim_key(m):
    return (m[0] + m[1], -m[1], -m[0], m[2] + m[3], -m[3], -m[2])


class MonomialOrder4(enum.Enum):
    GradedRevLex4 = "grevlex4"
    Eliminate_xy_then_st = "elim_xy_st"

    @property
    def term_order(self) -> TermOrder:
        return _ORDERS4[self]


_ORDERS4 = {
    MonomialOrder4.GradedRevLex4: grevlex(4),
    MonomialOrder4.Eliminate_xy_then_st: TermOrder("elim_xy_st", 4, _elim_key),
}


def _as_term_order(order) -> TermOrder:
    return order.term_order if isinstance(order, MonomialOrder4) else order


# -- dict-level kernels ---------------------------------------------------------


def _is_unit_basis(basis) -> bool:
    return len(basis) == 1 and len(basis[0]) == 1 and not any(next(iter(basis[0])))


def _lead(p: dict, key):
    return max(p, key=key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_scaled_shift(p: dict, c, shift, g: dict) -> None:
    """In place: p -= c * x^shift * g."""
    for m, gc in g.items():
        nm = tuple(a + b for a, b in zip(m, shift))
        v = p.get(nm, 0) - c * gc
        if v:
            p[nm] = v
        else:
            p.pop(nm, None)


def _monic(p: dict, key) -> dict:
    lc = p[_lead(p, key)]
    if lc == 1:
        return p
    inv = 1 / lc
    return {m: c * inv for m, c in p.items()}


class _DivisorIndex:
    """Memoized "first basis element whose lead divides m" for an append-only basis."""

    def __init__(self, leads: list):
        self.leads = leads
        self.cache: dict = {}

    def find(self, m):
        checked, hit = self.cache.get(m, (0, -1))
        if hit >= 0:
            return hit
        leads = self.leads
        for idx in range(checked, len(leads)):
            if _divides(leads[idx], m):
                self.cache[m] = (idx, idx)
                return idx
        self.cache[m] = (len(leads), -1)
        return -1


def _reduce(f: dict, basis: list, leads: list, key, budget: StepBudget, index=None) -> dict:
    """Full normal form of ``f`` modulo ``basis`` (monic, with precomputed leads)."""
    index = index or _DivisorIndex(leads)
    p = dict(f)
    rem: dict = {}
    # max-heap of monomials present in p; stale entries are skipped on pop
    heap = [(_neg_key(key, m), m) for m in p]
    heapq.heapify(heap)
    while heap:
        _, lm = heapq.heappop(heap)
        c = p.get(lm)
        if c is None:
            continue
        budget.tick()
        idx = index.find(lm)
        if idx >= 0:
            g, lg = basis[idx], leads[idx]
            budget.tick(len(g))
            shift = tuple(a - b for a, b in zip(lm, lg))
            for m, gc in g.items():
                nm = tuple(a + b for a, b in zip(m, shift))
                old = p.get(nm)
                if old is None:
                    p[nm] = -c * gc
                    heapq.heappush(heap, (_neg_key(key, nm), nm))
                else:
                    v = old - c * gc
                    if v:
                        p[nm] = v
                    else:
                        del p[nm]
        else:
            rem[lm] = c
            del p[lm]
    return rem


_NEG_CACHE: dict = {}


def _neg_key(key, m):
    k = (key, m)
    v = _NEG_CACHE.get(k)
    if v is None:
        if len(_NEG_CACHE) > 500_000:
            _NEG_CACHE.clear()
        v = _NEG_CACHE[k] = _negate(key(m))
    return v


def _negate(k):
    return tuple(-x for x in k)


def _spoly(f: dict, lf, g: dict, lg):
    lcm = _lcm(lf, lg)
    s: dict = {}
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    for m, c in f.items():
        s[tuple(a + b for a, b in zip(m, sf))] = c
    _sub_scaled_shift(s, Q(1), sg, g)
    return s


def buchberger_dicts(gens, order: TermOrder, budget: StepBudget | None = None) -> list:
    """Reduced Gröbner basis of dict polynomials, sorted by decreasing lead."""
    budget = budget or StepBudget()
    key = order.key
    basis = [_monic({m: Q(c) for m, c in g.items() if c}, key) for g in gens if any(g.values())]
    if not basis:
        return []
    leads = [_lead(g, key) for g in basis]
    index = _DivisorIndex(leads)
    pending: set = set()
    heap: list = []

    def add_pair(i, j):
        pending.add((i, j))
        # normal strategy: smallest lcm first, ties by index
        heapq.heappush(heap, (key(_lcm(leads[i], leads[j])), i, j))

    for j in range(len(basis)):
        for i in range(j):
            add_pair(i, j)
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        lcm = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leads
        if any(
            l not in (i, j)
            and _divides(leads[l], lcm)
            and (min(i, l), max(i, l)) not in pending
            and (min(j, l), max(j, l)) not in pending
            for l in range(len(basis))
        ):
            continue  # chain criterion
        budget.tick()
        h = _reduce(_spoly(basis[i], li, basis[j], lj), basis, leads, key, budget, index)
        if h:
            h = _monic(h, key)
            basis.append(h)
            leads.append(_lead(h, key))
            if not any(leads[-1]):
                return [{leads[-1]: Q(1)}]
            n = len(basis) - 1
            for k in range(n):
                add_pair(k, n)
    return _interreduce(basis, leads, key, budget)


def _interreduce(basis, leads, key, budget):
    keep = []
    for idx, lm in enumerate(leads):
        redundant = False
        for jdx, other in enumerate(leads):
            if jdx == idx:
                continue
            if _divides(other, lm) and (other != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(idx)
    minimal = [basis[i] for i in keep]
    mleads = [leads[i] for i in keep]
    out = []
    for idx, g in enumerate(minimal):
        others = [h for k, h in enumerate(minimal) if k != idx]
        oleads = [l for k, l in enumerate(mleads) if k != idx]
        lm = mleads[idx]
        tail = {m: c for m, c in g.items() if m != lm}
        red = _reduce(tail, others, oleads, key, budget)
        red[lm] = g[lm]
        out.append(_monic(red, key))
    out.sort(key=lambda g: key(_lead(g, key)), reverse=True)
    return out


# -- public API -----------------------------------------------------------------


@dataclass(frozen=True)
class MultiPoly:
    terms: dict
    order: object = MonomialOrder4.GradedRevLex4

    def __post_init__(self):
        object.__setattr__(self, "terms", {tuple(m): Q(c) for m, c in self.terms.items() if c})

    @property
    def nvars(self) -> int:
        return _as_term_order(self.order).nvars

    def is_zero(self) -> bool:
        return not self.terms

    def leading_monomial(self):
        return _lead(self.terms, _as_term_order(self.order).key) if self.terms else None

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms and self.order == other.order

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @classmethod
    def from_polynomial(cls, p: Polynomial, order=MonomialOrder4.GradedRevLex4) -> "MultiPoly":
        return cls({(i, j, 0, 0): c for (i, j), c in p.items()}, order)

    def to_str(self, names=("x", "y", "s", "t")) -> str:
        if not self.terms:
            return "0"
        key = _as_term_order(self.order).key
        parts = []
        for idx, m in enumerate(sorted(self.terms, key=key, reverse=True)):
            c = self.terms[m]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            a = -c if c < 0 else c
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            sign = "-" if c < 0 else "+"
            parts.append((f"-{body}" if c < 0 else body) if idx == 0 else f" {sign} {body}")
        return "".join(parts)

    def __str__(self):
        return self.to_str()


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: object

    def __len__(self):
        return len(self.generators)

    def is_unit(self) -> bool:
        return _is_unit_basis([g.terms for g in self.generators])


def buchberger(gens, order=MonomialOrder4.GradedRevLex4, budget: StepBudget | None = None) -> GroebnerBasis:
    """Reduced, monic Gröbner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens or all(g.is_zero() for g in gens):
        raise ValueError("need at least one nonzero generator")
    tord = _as_term_order(order)
    basis = buchberger_dicts([g.terms for g in gens], tord, budget)
    return GroebnerBasis(tuple(MultiPoly(b, order) for b in basis), order)


def normal_form(f: MultiPoly, gb: GroebnerBasis, budget: StepBudget | None = None) -> MultiPoly:
    if f.order != gb.order:
        raise OrderMismatch(f"{f.order} vs {gb.order}")
    key = _as_term_order(gb.order).key
    basis = [g.terms for g in gb.generators]
    leads = [_lead(g, key) for g in basis]
    return MultiPoly(_reduce(f.terms, basis, leads, key, budget or StepBudget()), gb.order)


def spoly_reduces_to_zero(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion, checked on every pair without shortcuts."""
    key = _as_term_order(gb.order).key
    basis = [g.terms for g in gb.generators]
    leads = [_lead(g, key) for g in basis]
    budget = StepBudget()
    for j in range(len(basis)):
        for i in range(j):
            if _reduce(_spoly(basis[i], leads[i], basis[j], leads[j]), basis, leads, key, budget):
                return False
    return True


def ideal_is_unit(polys, budget: StepBudget | None = None) -> bool:
    """Whether bivariate polynomials generate the unit ideal (no common zero over C)."""
    dicts = [{(i, j): c for (i, j), c in p.items()} for p in polys if p]
    if not dicts:
        return False
    gb = buchberger_dicts(dicts, grevlex(2), budget)
    return _is_unit_basis(gb)


def subalgebra_membership(f: Polynomial, u: Polynomial, v: Polynomial, budget: StepBudget | None = None):
    """Express ``f`` as a polynomial in ``u`` and ``v`` if possible.

    Returns a :class:`Polynomial` in the tag variables (printed with names
    ``s, t``) such that ``expr(u, v) == f``, or None when f is not in Q[u, v].
    """
    if u.is_constant() or v.is_constant():
        raise ConstantGenerator("subalgebra generators must be non-constant")
    order = MonomialOrder4.Eliminate_xy_then_st
    gens = [
        MultiPoly({**{(i, j, 0, 0): c for (i, j), c in u.items()}, (0, 0, 1, 0): -1}, order),
        MultiPoly({**{(i, j, 0, 0): c for (i, j), c in v.items()}, (0, 0, 0, 1): -1}, order),
    ]
    gb = buchberger(gens, order, budget)
    nf = normal_form(MultiPoly.from_polynomial(f, order), gb, budget)
    if any(m[0] or m[1] for m in nf.terms):
        return None
    expr = Polynomial({(m[2], m[3]): c for m, c in nf.terms.items()})
    return expr


# -- rational points of zero-dimensional-ish systems -----------------------------


def rational_roots(coeffs) -> list:
    """Distinct rational roots of ``sum coeffs[i] z**i`` in increasing order."""
    import sympy

    if not any(coeffs):
        raise ValueError("zero polynomial")
    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * z**i for i, c in enumerate(coeffs))
    roots = sympy.Poly(expr, z, domain="QQ").ground_roots()
    return sorted(Q(int(r.p), int(r.q)) for r in roots)


FOUND, INFEASIBLE, UNKNOWN = "found", "infeasible", "unknown"
_FREE_TRIALS = (0, 1, -1, 2, -2)


def solve_rational(equations, nvars: int, budget: StepBudget | None = None):
    """Look for a rational point of a polynomial system.

    ``equations`` are dicts on ``nvars``-tuples.  Returns ``(status, point)``
    where status is ``found`` (point is a list of values), ``infeasible``
    (no complex solution, or finitely many and none rational), or
    ``unknown`` (positive-dimensional and the trial specializations failed).
    """
    budget = budget or StepBudget()
    eqs = [e for e in equations if e]
    if nvars == 0:
        return (INFEASIBLE, None) if eqs else (FOUND, [])
    if not eqs:
        return FOUND, [Q(0)] * nvars
    gb = buchberger_dicts(eqs, lex(nvars), budget)
    if _is_unit_basis(gb):
        return INFEASIBLE, None
    if _rootless_univariate(gb, nvars):
        return INFEASIBLE, None
    last = nvars - 1
    univ = [g for g in gb if all(all(e == 0 for e in m[:last]) for m in g)]
    if univ:
        g = univ[0]
        deg = max(m[last] for m in g)
        coeffs = [Q(0)] * (deg + 1)
        for m, c in g.items():
            coeffs[m[last]] = c
        candidates = rational_roots(coeffs)
        exhaustive = True
    else:
        candidates = [Q(v) for v in _FREE_TRIALS]
        exhaustive = False
    status = INFEASIBLE
    for val in candidates:
        sub = [_specialize_last(g, val) for g in gb]
        st, point = solve_rational(sub, last, budget)
        if st == FOUND:
            return FOUND, point + [val]
        if st == UNKNOWN:
            status = UNKNOWN
    if not exhaustive:
        status = UNKNOWN
    return status, None


def _rootless_univariate(gb, nvars: int) -> bool:
    """Whether some basis element is univariate in one unknown with no rational root."""
    for g in gb:
        used = {i for m in g for i in range(nvars) if m[i]}
        if len(used) == 1:
            (i,) = used
            coeffs = [Q(0)] * (max(m[i] for m in g) + 1)
            for m, c in g.items():
                coeffs[m[i]] = c
            if not rational_roots(coeffs):
                return True
    return False


def _specialize_last(p: dict, val) -> dict:
    out: dict = {}
    for m, c in p.items():
        nm = m[:-1]
        v = out.get(nm, 0) + c * val ** m[-1]
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out
