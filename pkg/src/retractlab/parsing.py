"""Recursive-descent parser for the polynomial expression grammar.

    expr     := term (("+"|"-") term)*
    term     := factor ("*" factor)*
    factor   := ("+"|"-") factor | base ("^" nat)?
    base     := rational | VAR | "(" expr ")"
    rational := int ("/" nat)?

Whitespace is insignificant and multiplication must be explicit.
"""

from __future__ import annotations

from .errors import ParseError
from .poly import Polynomial, Q

_SINGLE = set("+-*^/()")


def _tokenize(text: str, names):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j], i + 1))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word not in names:
                raise ParseError(f"unknown identifier {word!r}", i + 1)
            tokens.append(("var", word, i + 1))
            i = j
        elif ch in _SINGLE:
            tokens.append((ch, ch, i + 1))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i + 1)
    tokens.append(("end", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, text, names):
        self.names = names
        self.tokens = _tokenize(text, names)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            wanted = "a natural number" if kind == "num" else repr(kind)
            raise ParseError(f"expected {wanted}, found {what}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 1)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.factor()
        tok = self.peek()
        if tok[0] in ("num", "var", "("):
            raise ParseError("implicit multiplication is not allowed, use '*'", tok[2])
        return value

    def factor(self):
        kind = self.peek()[0]
        if kind in ("+", "-"):
            self.take()
            inner = self.factor()
            return -inner if kind == "-" else inner
        value = self.base()
        if self.peek()[0] == "^":
            self.take()
            exp = self.take("num")
            value = value ** int(exp[1])
        return value

    def base(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            num = int(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("num")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("zero denominator", den_tok[2])
                return Polynomial.constant(Q(num, den))
            return Polynomial.constant(num)
        if tok[0] == "var":
            self.take()
            idx = self.names.index(tok[1])
            return Polynomial.monomial(1, 0) if idx == 0 else Polynomial.monomial(0, 1)
        if tok[0] == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"expected a number, variable or '(', found {what}", tok[2])


def parse_polynomial(text: str, names: tuple[str, str] = ("x", "y")) -> Polynomial:
    """Parse ``text`` into a canonical :class:`Polynomial`.

    ``names`` renames the two variables, e.g. ``("s", "t")`` for expressions
    in subalgebra tags or ``("t", "_")`` for univariate output.
    """
    return _Parser(text, tuple(names)).parse()


def parse_univariate(text: str) -> Polynomial:
    return parse_polynomial(text, ("t", "_"))
