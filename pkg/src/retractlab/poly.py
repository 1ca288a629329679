"""Sparse bivariate polynomials over the rationals.

A :class:`Polynomial` is an immutable map ``Monomial -> coefficient`` with no
zero entries, so structural equality is mathematical equality.  Univariate
polynomials in an auxiliary variable ``t`` are represented as polynomials in
``x`` alone and printed with a different variable name.
"""

from __future__ import annotations

import enum
from typing import Iterable, Mapping, NamedTuple

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

NEG_INF = float("-inf")


def to_q(value):
    """Coerce ints, Fractions, strings like ``"3/2"`` and mpq to the coefficient type."""
    if isinstance(value, str):
        return Q(value.strip())
    return Q(value)


def format_q(c) -> str:
    c = Q(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Monomial(NamedTuple):
    xexp: int
    yexp: int

    @property
    def degree(self) -> int:
        return self.xexp + self.yexp

    def __mul__(self, other):  # type: ignore[override]
        return Monomial(self.xexp + other.xexp, self.yexp + other.yexp)

    def divides(self, other: "Monomial") -> bool:
        return self.xexp <= other.xexp and self.yexp <= other.yexp


class MonomialOrder(enum.Enum):
    GradedRevLex = "grevlex"
    PureLexYoverX = "purelex"
    LexElimination = "lex"

    def key(self, m: Monomial):
        """Sort key; a larger key means a larger monomial."""
        if self is MonomialOrder.PureLexYoverX:
            return (m.yexp, m.xexp)
        if self is MonomialOrder.LexElimination:
            return (m.xexp, m.yexp)
        # with two variables graded revlex coincides with graded lex x > y
        return (m.xexp + m.yexp, -m.yexp)


def _print_key(m: Monomial):
    # canonical printing order: graded, then pure lex (y > x) within a degree
    return (m.xexp + m.yexp, m.yexp)


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Q(c)
                if c:
                    clean[Monomial(*mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # trusted constructor: keys are Monomials, values nonzero Q
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = to_q(c)
        return cls._raw({Monomial(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "Polynomial":
        return cls({(i, j): c})

    @classmethod
    def coerce(cls, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        return cls.constant(value)

    # -- basic accessors -------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, i: int, j: int):
        return self._terms.get(Monomial(i, j), Q(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def constant_term(self):
        return self._terms.get(Monomial(0, 0), Q(0))

    @property
    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(m.xexp + m.yexp for m in self._terms)

    def degree_in(self, var: int):
        """Degree in x (var=0) or y (var=1); NEG_INF for zero."""
        if not self._terms:
            return NEG_INF
        return max(m[var] for m in self._terms)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self._terms.items() if m.xexp + m.yexp == d})

    def leading_form(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.homogeneous_part(self.degree)

    def leading_monomial(self, order: MonomialOrder = MonomialOrder.PureLexYoverX):
        if not self._terms:
            return None
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = MonomialOrder.PureLexYoverX):
        m = self.leading_monomial(order)
        return Q(0) if m is None else self._terms[m]

    # -- ring structure --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = Polynomial.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_q(other)
            if not c:
                return Polynomial()
            return Polynomial._raw({m: a * c for m, a in self._terms.items()})
        if len(self._terms) > len(other._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out: dict = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return Polynomial._raw({Monomial(*k): c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        return self * to_q(c)

    def monic(self, order: MonomialOrder = MonomialOrder.PureLexYoverX) -> "Polynomial":
        lc = self.leading_coefficient(order)
        return self if not lc or lc == 1 else self * (1 / lc)

    # -- calculus and substitution ----------------------------------------

    def diff(self, var: int) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            e = m[var]
            if e:
                nm = Monomial(m.xexp - 1, m.yexp) if var == 0 else Monomial(m.xexp, m.yexp - 1)
                out[nm] = c * e
        return Polynomial._raw(out)

    def partials(self):
        return self.diff(0), self.diff(1)

    def subs(self, a, b) -> "Polynomial":
        """Return ``self(a, b)``: substitute polynomials (or scalars) for x and y."""
        a = Polynomial.coerce(a)
        b = Polynomial.coerce(b)
        if not self._terms:
            return self
        maxi = max(m.xexp for m in self._terms)
        maxj = max(m.yexp for m in self._terms)
        apow = _powers(a, maxi)
        bpow = _powers(b, maxj)
        # group by y exponent so each b-power is multiplied once
        by_j: dict = {}
        for (i, j), c in self._terms.items():
            by_j.setdefault(j, []).append((i, c))
        result = Polynomial()
        for j, row in by_j.items():
            acc = Polynomial()
            for i, c in row:
                acc = acc + apow[i] * c
            result = result + acc * bpow[j]
        return result

    __call__ = subs

    def evaluate(self, x, y):
        x, y = to_q(x), to_q(y)
        return sum((c * x ** m.xexp * y ** m.yexp for m, c in self._terms.items()), Q(0))

    # -- printing ---------------------------------------------------------

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda mc: _print_key(mc[0]), reverse=True)

    def to_str(self, names: tuple[str, str] = ("x", "y")) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            mono = _mono_str(m, names)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_q(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_q(a)}*{mono}"
            if idx == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


def _mono_str(m: Monomial, names) -> str:
    parts = []
    for e, name in ((m.xexp, names[0]), (m.yexp, names[1])):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _powers(p: Polynomial, n: int) -> list:
    out = [Polynomial.constant(1)]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


X = Polynomial.monomial(1, 0)
Y = Polynomial.monomial(0, 1)
ONE = Polynomial.constant(1)
ZERO = Polynomial()


def degree_data(p: Polynomial):
    """Return ``(total_degree, leading_form, purelex_lead)`` for ``p``."""
    return p.degree, p.leading_form(), p.leading_monomial(MonomialOrder.PureLexYoverX)


def partial_derivatives(p: Polynomial):
    return p.partials()


def ring_op(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {op!r}")


def exact_divide(a: Polynomial, b: Polynomial):
    """Return ``a / b`` if ``b`` divides ``a`` exactly, else None."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    order = MonomialOrder.GradedRevLex
    lm_b = b.leading_monomial(order)
    lc_b = b._terms[lm_b]
    quotient: dict = {}
    rem = a
    while rem:
        lm_r = rem.leading_monomial(order)
        if not lm_b.divides(lm_r):
            return None
        mono = Monomial(lm_r.xexp - lm_b.xexp, lm_r.yexp - lm_b.yexp)
        c = rem._terms[lm_r] / lc_b
        quotient[mono] = c
        rem = rem - Polynomial._raw({mono: c}) * b
    return Polynomial._raw(quotient)


def proportional(a: Polynomial, b: Polynomial):
    """Return c with ``a == c*b`` (b nonzero), or None."""
    if b.is_zero() or len(a) != len(b):
        return None
    m = next(iter(b._terms))
    ca = a._terms.get(m)
    if ca is None:
        return None
    c = ca / b._terms[m]
    return c if a == b * c else None


# -- univariate helpers (polynomials in x only, printed in t) ------------------

T_NAMES = ("t", "_")


def univariate(coeffs: Iterable) -> Polynomial:
    """Build ``sum coeffs[i] * t**i`` as a polynomial in x."""
    return Polynomial({(i, 0): c for i, c in enumerate(coeffs)})


def is_univariate(p: Polynomial) -> bool:
    return all(m.yexp == 0 for m in p._terms)


def compose_univariate(g: Polynomial, q: Polynomial) -> Polynomial:
    """Return ``g(q)`` for a univariate ``g``."""
    if not g:
        return g
    result = Polynomial()
    for i in range(g.degree_in(0), -1, -1):
        result = result * q + g.coefficient(i, 0)
    return result


def format_univariate(g: Polynomial) -> str:
    return g.to_str(T_NAMES)
