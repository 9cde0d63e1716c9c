"""Integer-coefficient polynomial lifts used by the characteristic-zero oracles.

A :class:`ZPoly` is a polynomial over Z in a fixed number of variables.  The
Teichmüller-naive lift sends each F_p coefficient to its representative in
{0, ..., p-1}.
"""

from __future__ import annotations

from .errors import InputError
from .fields import ZZ


class ZPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = ZPoly.const(self.nvars, other)
        return isinstance(other, ZPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _co(self, other):
        if isinstance(other, ZPoly):
            return other
        if isinstance(other, int):
            return ZPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return ZPoly(self.nvars, ZZ.padd(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return ZPoly(self.nvars, ZZ.pneg(self.terms))

    def __sub__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ZPoly(self.nvars, ZZ.pscale(self.terms, other))
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return ZPoly(self.nvars, ZZ.pmul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n == 0:
            return ZPoly.const(self.nvars, 1)
        if not self.terms:
            return self
        return ZPoly(self.nvars, ZZ.ppow(self.terms, n))

    def derivative(self, i: int):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return ZPoly(self.nvars, out)

    def substitute_powers(self, q: int):
        """Replace every variable x by x^q."""
        return ZPoly(self.nvars, {tuple(x * q for x in e): c for e, c in self.terms.items()})

    def reduce_mod(self, p: int):
        return {e: c % p for e, c in self.terms.items() if c % p}

    def __repr__(self):
        return f"ZPoly({self.terms})"


def lift_k(a, nvars: int | None = None) -> ZPoly:
    """Teichmüller-naive lift of a polynomial element of k (prime field only)."""
    K = a.K
    if K.h != 1:
        raise InputError("integer lifts are only implemented for prime fields (h = 1)")
    if not a.is_polynomial():
        raise InputError("integer lifts are only implemented for polynomial elements of k")
    nv = K.r if nvars is None else nvars
    pad = (0,) * (nv - K.r)
    return ZPoly(nv, {e + pad: c for e, c in a.num.items()})


def lift_laurent(f) -> ZPoly:
    """Lift of f in k[1/t] to Z[u_1..u_r, S] with S = 1/t (last variable)."""
    K = f.K
    if K.h != 1 or not f.is_polynomial():
        raise InputError("integer lifts need h = 1 and polynomial coefficients")
    out = {}
    for e, c in f.num.items():
        if e[-1] > 0:
            raise InputError("the lift domain holds only non-positive powers of t")
        out[e[:-1] + (-e[-1],)] = c
    return ZPoly(K.r + 1, out)
