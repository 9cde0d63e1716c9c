"""The function field k = F_q(u_1, ..., u_r) and Laurent polynomials over it.

:class:`KElem` keeps every element as a reduced fraction num/den with den
monic, so equal field elements are equal as Python objects.  :class:`LaurentK`
stores a finite Laurent polynomial in t over k as a flat numerator in the
variables (u_1, ..., u_r, t) over a common monic denominator in u alone.
"""

from __future__ import annotations

from functools import total_ordering
from itertools import product

from . import mpoly
from .errors import DivisionByZero, InputError, NotAPthPower
from .fields import FiniteField

INF = float("inf")


class KField:
    """Parameters of k: the prime p, F_q = F_{p^h}, and r p-basis variables."""

    def __init__(self, p: int, h: int = 1, r: int = 0, ext_poly=None):
        if r < 0 or r > 9:
            raise InputError("number of variables r must satisfy 0 <= r <= 9")
        self.F = FiniteField(p, h, ext_poly)
        self.p, self.h, self.q, self.r = p, h, self.F.q, r
        self.ext_poly = self.F.ext_poly
        self._one_u = {(0,) * r: 1}
        self._zero_exp = (0,) * r

    @property
    def params(self):
        return {"p": self.p, "h": self.h, "r": self.r}

    def __eq__(self, other):
        return isinstance(other, KField) and self.F == other.F and self.r == other.r

    def __hash__(self):
        return hash((self.F, self.r))

    def __repr__(self):
        return f"KField(p={self.p}, h={self.h}, r={self.r})"

    # constructors
    def zero(self):
        return KElem(self, {}, self._one_u, _trusted=True)

    def one(self):
        return KElem(self, dict(self._one_u), self._one_u, _trusted=True)

    def const(self, c):
        """The constant with F_q-encoding ``c`` (see :class:`FiniteField`)."""
        return KElem(self, {self._zero_exp: c} if c else {}, self._one_u, _trusted=True)

    def from_int(self, n: int):
        return self.const(self.F.from_int(n))

    def u(self, i: int):
        """The variable u_i (1-based)."""
        if not 1 <= i <= self.r:
            raise InputError(f"u{i} is not a variable of k (r = {self.r})")
        e = [0] * self.r
        e[i - 1] = 1
        return KElem(self, {tuple(e): 1}, self._one_u, _trusted=True)

    def generator(self):
        return self.const(self.F.generator())

    def poly(self, num: dict):
        return KElem(self, num, self._one_u, _trusted=True)

    def fraction(self, num: dict, den: dict):
        return KElem(self, num, den)

    def coerce(self, x):
        if isinstance(x, KElem):
            if x.K != self:
                raise InputError("elements of different fields")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into k")

    def monomials(self):
        """The p-basis exponents s in [0, p-1]^r, in lexicographic order."""
        return list(product(range(self.p), repeat=self.r))


def _ext(d):
    return {e + (0,): c for e, c in d.items()}


def _is_one(d):
    return len(d) == 1 and next(iter(d.values())) == 1 and not any(next(iter(d)))


@total_ordering
class KElem:
    """An element num/den of k in canonical form."""

    __slots__ = ("K", "num", "den", "_hash")

    def __init__(self, K: KField, num: dict, den: dict, _trusted: bool = False):
        self.K = K
        if not _trusted:
            if not den:
                raise DivisionByZero("zero denominator")
            F = K.F
            if not num:
                den = K._one_u
            elif not _is_one(den):
                g = mpoly.gcd(num, den, F)
                if not mpoly.is_constant(g):
                    num = mpoly.divide_exact(num, g, F)
                    den = mpoly.divide_exact(den, g, F)
                _, lc = mpoly.lead(den)
                if lc != 1:
                    inv = F.inv(lc)
                    num = F.pscale(num, inv)
                    den = F.pscale(den, inv)
        self.num = num
        self.den = den
        self._hash = None

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return _is_one(self.den)

    def is_constant(self):
        return self.is_polynomial() and (not self.num or mpoly.is_constant(self.num))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.K.from_int(other)
        if not isinstance(other, KElem):
            return NotImplemented
        return self.K == other.K and self.num == other.num and self.den == other.den

    def __lt__(self, other):
        # an arbitrary but deterministic total order, used only for sorting output
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (sorted(self.num.items()), sorted(self.den.items()))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # -- arithmetic -----------------------------------------------------------
    def _co(self, other):
        if isinstance(other, KElem):
            return other
        if isinstance(other, int):
            return self.K.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        F, K = self.K.F, self.K
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if _is_one(self.den):
                return KElem(K, F.padd(self.num, other.num), self.den, _trusted=True)
            return KElem(K, F.padd(self.num, other.num), self.den)
        if _is_one(self.den):
            return KElem(K, F.padd(F.pmul(self.num, other.den), other.num), other.den, _trusted=True)
        if _is_one(other.den):
            return KElem(K, F.padd(self.num, F.pmul(other.num, self.den)), self.den, _trusted=True)
        num = F.padd(F.pmul(self.num, other.den), F.pmul(other.num, self.den))
        return KElem(K, num, F.pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return KElem(self.K, self.K.F.pneg(self.num), self.den, _trusted=True)

    def __sub__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        F, K = self.K.F, self.K
        if not self.num or not other.num:
            return K.zero()
        if _is_one(self.den) and _is_one(other.den):
            return KElem(K, F.pmul(self.num, other.num), self.den, _trusted=True)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g = mpoly.gcd(n1, d2, F)
        if not mpoly.is_constant(g):
            n1, d2 = mpoly.divide_exact(n1, g, F), mpoly.divide_exact(d2, g, F)
        g = mpoly.gcd(n2, d1, F)
        if not mpoly.is_constant(g):
            n2, d1 = mpoly.divide_exact(n2, g, F), mpoly.divide_exact(d1, g, F)
        num, den = F.pmul(n1, n2), F.pmul(d1, d2)
        _, lc = mpoly.lead(den)
        if lc != 1:
            inv = F.inv(lc)
            num, den = F.pscale(num, inv), F.pscale(den, inv)
        return KElem(K, num, den, _trusted=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of 0 in k")
        return KElem(self.K, self.den, self.num)

    def __truediv__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        F = self.K.F
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.K.one()
        if not self.num:
            return self
        # a reduced fraction stays reduced under powers
        return KElem(self.K, F.ppow(self.num, n),
                     self.den if _is_one(self.den) else F.ppow(self.den, n), _trusted=True)

    # -- p-structure -----------------------------------------------------------
    def frobenius(self, power: int = 1):
        """self^(p^power)."""
        F = self.K.F
        return KElem(self.K, F.pfrobenius(self.num, power), F.pfrobenius(self.den, power), _trusted=True)

    def _cleared(self):
        """N*D^(p-1), so that self = N*D^(p-1) / D^p."""
        if _is_one(self.den):
            return self.num
        F = self.K.F
        return F.pmul(self.num, F.ppow(self.den, self.K.p - 1))

    def in_kp(self) -> bool:
        p = self.K.p
        return all(x % p == 0 for e in self._cleared() for x in e)

    def pth_root(self):
        if not self.in_kp():
            raise NotAPthPower(f"{self} is not a p-th power in k")
        F, p = self.K.F, self.K.p
        num = {tuple(x // p for x in e): F.root_p(c) for e, c in self._cleared().items()}
        return KElem(self.K, num, self.den)

    def pbasis_expand(self) -> dict:
        """{s: c_s} with self = sum_s c_s u^s, c_s in k^p, s in [0, p-1]^r.

        All p^r exponents appear as keys (zero components included).
        """
        K = self.K
        p = K.p
        groups = {s: {} for s in K.monomials()}
        for e, c in self._cleared().items():
            s = tuple(x % p for x in e)
            groups[s][tuple(x - y for x, y in zip(e, s))] = c
        den_p = K.F.pfrobenius(self.den) if not _is_one(self.den) else self.den
        return {s: KElem(K, g, den_p) if g else K.zero() for s, g in groups.items()}

    def partial(self, i: int):
        """d/du_i (1-based index) by the quotient rule."""
        K = self.K
        if not 1 <= i <= K.r:
            raise InputError(f"no variable u{i}")
        F = K.F
        dn = mpoly.derivative(self.num, i - 1, F)
        if _is_one(self.den):
            return KElem(K, dn, self.den, _trusted=True)
        dd = mpoly.derivative(self.den, i - 1, F)
        num = F.psub(F.pmul(dn, self.den), F.pmul(self.num, dd))
        return KElem(K, num, F.pmul(self.den, self.den))

    # -- display ------------------------------------------------------------------
    def __str__(self):
        n = poly_to_str(self.num, self.K, ["u%d" % (i + 1) for i in range(self.K.r)])
        if _is_one(self.den):
            return n
        d = poly_to_str(self.den, self.K, ["u%d" % (i + 1) for i in range(self.K.r)])
        return f"({n})/({d})"

    def __repr__(self):
        return f"KElem({self})"


def poly_to_str(a: dict, K: KField, names) -> str:
    if not a:
        return "0"
    F = K.F
    parts = []
    for e in sorted(a, key=mpoly.order_key, reverse=True):
        c = a[e]
        factors = []
        for name, x in zip(names, e):
            if x == 1:
                factors.append(name)
            elif x:
                factors.append(f"{name}^{x}")
        cs = F.to_str(c)
        if F.h > 1 and "+" in cs:
            cs = f"({cs})"
        if not factors:
            parts.append(cs)
        elif cs == "1":
            parts.append("*".join(factors))
        else:
            parts.append("*".join([cs] + factors))
    return " + ".join(parts)


class LaurentK:
    """A finite Laurent polynomial in t with coefficients in k."""

    __slots__ = ("K", "num", "den")

    def __init__(self, K: KField, num: dict, den: dict | None = None, _trusted: bool = False):
        self.K = K
        if den is None:
            den = K._one_u
        if not _trusted and not _is_one(den):
            num, den = _reduce_laurent(K, num, den)
        elif not num:
            den = K._one_u
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, K):
        return cls(K, {}, None, _trusted=True)

    @classmethod
    def monomial(cls, c: KElem, deg: int):
        K = c.K
        return cls(K, {e + (deg,): v for e, v in c.num.items()}, c.den, _trusted=True)

    @classmethod
    def from_terms(cls, K, terms: dict):
        out = cls.zero(K)
        for deg, c in terms.items():
            out = out + cls.monomial(K.coerce(c), deg)
        return out

    @classmethod
    def t(cls, K, deg: int = 1):
        return cls.monomial(K.one(), deg)

    # -- inspection --------------------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return _is_one(self.den)

    def degrees(self):
        return sorted({e[-1] for e in self.num})

    def coeff(self, deg: int) -> KElem:
        part = {e[:-1]: c for e, c in self.num.items() if e[-1] == deg}
        if not part:
            return self.K.zero()
        if _is_one(self.den):
            return KElem(self.K, part, self.den, _trusted=True)
        return KElem(self.K, part, self.den)

    def terms(self):
        """[(degree, KElem coefficient)] in increasing degree."""
        return [(d, self.coeff(d)) for d in self.degrees()]

    def t_valuation(self):
        return min((e[-1] for e in self.num), default=INF)

    def single_term(self):
        """(deg, coeff) if self is c*t^deg with c != 0, else None."""
        degs = {e[-1] for e in self.num}
        if len(degs) != 1:
            return None
        d = degs.pop()
        return d, self.coeff(d)

    def __eq__(self, other):
        if isinstance(other, (int, KElem)):
            other = LaurentK.monomial(self.K.coerce(other), 0)
        if not isinstance(other, LaurentK):
            return NotImplemented
        return self.K == other.K and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    # -- arithmetic ------------------------------------------------------------------------
    def _co(self, other):
        if isinstance(other, LaurentK):
            return other
        if isinstance(other, (int, KElem)):
            return LaurentK.monomial(self.K.coerce(other), 0)
        return NotImplemented

    def __add__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        F, K = self.K.F, self.K
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return LaurentK(K, F.padd(self.num, other.num), self.den, _trusted=_is_one(self.den))
        if _is_one(self.den):
            return LaurentK(K, F.padd(F.pmul(self.num, _ext(other.den)), other.num), other.den,
                            _trusted=True)
        if _is_one(other.den):
            return LaurentK(K, F.padd(self.num, F.pmul(other.num, _ext(self.den))), self.den,
                            _trusted=True)
        num = F.padd(F.pmul(self.num, _ext(other.den)), F.pmul(other.num, _ext(self.den)))
        return LaurentK(K, num, F.pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return LaurentK(self.K, self.K.F.pneg(self.num), self.den, _trusted=True)

    def __sub__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            c = self.K.F.from_int(other)
            return LaurentK(self.K, self.K.F.pscale(self.num, c), self.den, _trusted=True)
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        F, K = self.K.F, self.K
        if not self.num or not other.num:
            return LaurentK.zero(K)
        num = F.pmul(self.num, other.num)
        if _is_one(self.den) and _is_one(other.den):
            return LaurentK(K, num, self.den, _trusted=True)
        return LaurentK(K, num, F.pmul(self.den, other.den))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            st = self.single_term()
            if st is None:
                raise InputError("only monomials in t can be inverted in LaurentK")
            d, c = st
            return LaurentK.monomial(c ** n, d * n)
        if n == 0:
            return LaurentK.monomial(self.K.one(), 0)
        if not self.num:
            return self
        F = self.K.F
        if _is_one(self.den):
            return LaurentK(self.K, F.ppow(self.num, n), self.den, _trusted=True)
        return LaurentK(self.K, F.ppow(self.num, n), F.ppow(self.den, n), _trusted=True)

    def __truediv__(self, other):
        if isinstance(other, (int, KElem)):
            return self * self.K.coerce(other).inverse()
        if isinstance(other, LaurentK):
            st = other.single_term()
            if st is None:
                raise InputError("division in LaurentK is only by monomials c*t^e")
            d, c = st
            return self * LaurentK.monomial(c.inverse(), -d)
        return NotImplemented

    def frobenius(self, power: int = 1):
        F = self.K.F
        return LaurentK(self.K, F.pfrobenius(self.num, power),
                        F.pfrobenius(self.den, power) if not _is_one(self.den) else self.den,
                        _trusted=True)

    def shift(self, k: int):
        """Multiply by t^k."""
        return LaurentK(self.K, {e[:-1] + (e[-1] + k,): c for e, c in self.num.items()},
                        self.den, _trusted=True)

    def partial(self, i: int):
        """d/du_i, coefficientwise."""
        out = LaurentK.zero(self.K)
        for d, c in self.terms():
            out = out + LaurentK.monomial(c.partial(i), d)
        return out

    def t_derivative(self):
        """t d/dt (the derivation dual to dlog t)."""
        F = self.K.F
        num = {}
        for e, c in self.num.items():
            v = F.mul(c, F.from_int(e[-1]))
            if v:
                num[e] = v
        return LaurentK(self.K, num, self.den, _trusted=_is_one(self.den))

    def truncate_nonpositive(self):
        """Drop the terms of strictly positive t-degree."""
        return LaurentK(self.K, {e: c for e, c in self.num.items() if e[-1] <= 0}, self.den)

    def __str__(self):
        names = ["u%d" % (i + 1) for i in range(self.K.r)] + ["t"]
        n = poly_to_str(self.num, self.K, names).replace("t^-", "t^-")
        if _is_one(self.den):
            return n
        d = poly_to_str(self.den, self.K, names[:-1])
        return f"({n})/({d})"

    def __repr__(self):
        return f"LaurentK({self})"


def _reduce_laurent(K, num, den):
    F = K.F
    if not num:
        return {}, K._one_u
    g = den
    for d in sorted({e[-1] for e in num}):
        part = {e[:-1]: c for e, c in num.items() if e[-1] == d}
        g = mpoly.gcd(g, part, F)
        if mpoly.is_constant(g):
            break
    if not mpoly.is_constant(g):
        # t-exponents may be negative, so divide slice by slice
        out = {}
        for d in {e[-1] for e in num}:
            part = {e[:-1]: c for e, c in num.items() if e[-1] == d}
            for e, c in mpoly.divide_exact(part, g, F).items():
                out[e + (d,)] = c
        num = out
        den = mpoly.divide_exact(den, g, F)
    _, lc = mpoly.lead(den)
    if lc != 1:
        inv = F.inv(lc)
        num, den = F.pscale(num, inv), F.pscale(den, inv)
    return num, den
