"""Recursive-descent parser for the polynomial expression grammar.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := var | coeff | '(' expr ')'
    coeff  := int | int '/' uint | '(' int ('+'|'-') int '*i' ')'

A leading unary minus is accepted at the start of an expression and after
'(' so that printed output always parses back.  Gaussian coefficients may
have rational parts, e.g. (1/2-3/4*i).
"""

from __future__ import annotations

from fractions import Fraction

from .fields import GAUSSIAN_RATIONALS, FieldTag, GaussRat
from .mpoly import VARS, MPoly


class PolySyntaxError(ValueError):
    """Syntax error carrying the 0-based character offset."""

    def __init__(self, message, pos, text=""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class _Parser:
    def __init__(self, text, field):
        self.text = text
        self.field = field
        self.toks = self._lex(text)
        self.i = 0

    def _lex(self, text):
        toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                toks.append(("int", int(text[i:j]), i))
                i = j
            elif ch in "+-*/^()":
                toks.append((ch, ch, i))
                i += 1
            elif ch in VARS or ch == "i":
                if i + 1 < n and (text[i + 1].isalnum() or text[i + 1] == "_"):
                    raise PolySyntaxError(f"unknown identifier starting with {ch!r}", i, text)
                toks.append(("var" if ch != "i" else "i", ch, i))
                i += 1
            else:
                raise PolySyntaxError(f"unexpected character {ch!r}", i, text)
        toks.append(("end", None, n))
        return toks

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolySyntaxError(f"expected {want}, found {got}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self):
        p = self.expr()
        self.take("end")
        return p

    def expr(self):
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        b = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            b = b ** tok[1]
        return b

    def base(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "var":
            self.take()
            return MPoly.var(self.field, tok[1])
        if kind == "int":
            self.take()
            num = tok[1]
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("int")
                if den_tok[1] == 0:
                    raise PolySyntaxError("zero denominator", den_tok[2], self.text)
                return self._const(Fraction(num, den_tok[1]), tok[2])
            return self._const(num, tok[2])
        if kind == "(":
            g = self._try_gaussian()
            if g is not None:
                return g
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "i":
            raise PolySyntaxError("bare 'i' outside a Gaussian coefficient", tok[2], self.text)
        got = "end of input" if kind == "end" else repr(tok[1])
        raise PolySyntaxError(f"expected a variable, number or '(', found {got}", tok[2], self.text)

    def _const(self, value, pos):
        try:
            return MPoly.const(self.field, value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PolySyntaxError(f"coefficient not representable in {self.field.name}: {exc}", pos, self.text) from None

    def _rat(self, k):
        """Read [-]int[/uint] starting at lookahead offset k; returns (value, new offset) or None."""
        sign = 1
        if self.peek(k)[0] == "-":
            sign = -1
            k += 1
        if self.peek(k)[0] != "int":
            return None
        v = Fraction(self.peek(k)[1])
        k += 1
        if self.peek(k)[0] == "/" and self.peek(k + 1)[0] == "int":
            if self.peek(k + 1)[1] == 0:
                raise PolySyntaxError("zero denominator", self.peek(k + 1)[2], self.text)
            v = v / self.peek(k + 1)[1]
            k += 2
        return sign * v, k

    def _try_gaussian(self):
        # '(' [rat ('+'|'-')] rat '*' 'i' ')'
        start = self.peek()[2]
        k = 1
        re = Fraction(0)
        first = self._rat(k)
        if first is None:
            return None
        val, k2 = first
        if self.peek(k2)[0] in "+-" and self.peek(k2)[0] != "end":
            sign = 1 if self.peek(k2)[0] == "+" else -1
            second = self._rat(k2 + 1)
            if second is None:
                return None
            im, k3 = second
            re, im = val, sign * im
        else:
            im, k3 = val, k2
        if not (self.peek(k3)[0] == "*" and self.peek(k3 + 1)[0] == "i" and self.peek(k3 + 2)[0] == ")"):
            return None
        self.i += k3 + 3
        if self.field.kind != GAUSSIAN_RATIONALS and not self.field.is_finite:
            raise PolySyntaxError(f"Gaussian coefficient not representable in {self.field.name}", start, self.text)
        return self._const(GaussRat(re, im), start)


def parse_poly(text: str, field: FieldTag) -> MPoly:
    """Parse an expression string into a canonical MPoly over field."""
    if not isinstance(text, str):
        raise TypeError("polynomial text must be a string")
    return _Parser(text, field).parse()
