"""Text syntax for elements of k and of k[t, 1/t].

Grammar: integers, ``u1`` .. ``u9``, ``t``, ``a`` (generator of F_q when
h > 1), ``+ - * / ^`` and parentheses.  Exponents are integers; negative
exponents are accepted only on monomials in t, so ``t^-3`` is fine and
``u1^-1`` must be written ``1/u1``.
"""

from __future__ import annotations

import re

from .errors import InputError, ParseError
from .kfield import KElem, KField, LaurentK

_TOKEN = re.compile(r"\s*(?:(\d+)|(u[1-9])|(t)|(a)|([-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        pos = m.end()
        num, var, t, a, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif var is not None:
            out.append(("u", int(var[1])))
        elif t is not None:
            out.append(("t", None))
        elif a is not None:
            out.append(("a", None))
        else:
            out.append(("op", op))
    return out


class _Parser:
    def __init__(self, K: KField, text: str):
        self.K = K
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> LaurentK:
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if not w:
                    raise ParseError("division by zero")
                try:
                    v = v / w
                except InputError as exc:
                    raise ParseError(str(exc)) from None
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def exponent(self):
        sign = 1
        paren = False
        if self.peek() == ("op", "("):
            self.take()
            paren = True
        while self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        kind, val = self.take()
        if kind != "int":
            raise ParseError(f"exponent must be an integer in {self.text!r}")
        if paren:
            self.expect(")")
        return sign * val

    def power(self):
        base, is_t_monomial = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            n = self.exponent()
            if n < 0 and not is_t_monomial:
                raise ParseError("negative exponents are only allowed on powers of t")
            return base ** n
        return base

    def atom(self):
        K = self.K
        kind, val = self.take()
        if kind == "int":
            return LaurentK.monomial(K.from_int(val), 0), False
        if kind == "u":
            try:
                return LaurentK.monomial(K.u(val), 0), False
            except InputError as exc:
                raise ParseError(str(exc)) from None
        if kind == "t":
            return LaurentK.t(K), True
        if kind == "a":
            try:
                return LaurentK.monomial(K.generator(), 0), False
            except InputError as exc:
                raise ParseError(str(exc)) from None
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect(")")
            st = v.single_term()
            t_mono = st is not None and st[1] == K.one()
            return v, t_mono
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_laurent(K: KField, text: str) -> LaurentK:
    return _Parser(K, str(text)).parse()


def parse_k(K: KField, text: str) -> KElem:
    v = parse_laurent(K, text)
    if not v:
        return K.zero()
    if v.degrees() != [0]:
        raise ParseError(f"{text!r} involves t; an element of k was expected")
    return v.coeff(0)
