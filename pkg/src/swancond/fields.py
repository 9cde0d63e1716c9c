"""Coefficient rings: the integers and the finite fields F_q, q = p^h <= p^4.

Polynomials everywhere in the package are sparse dicts mapping exponent
tuples to nonzero coefficients.  The bulk operations on such dicts live on the
coefficient ring so that the prime-field case can use inlined modular
arithmetic.
"""

from __future__ import annotations

from itertools import product

from .errors import DivisionByZero, InputError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class _SparseOps:
    """Generic sparse-polynomial operations in terms of scalar add/mul."""

    def padd(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        r = dict(a)
        add = self.add
        for e, c in b.items():
            v = r.get(e)
            if v is None:
                r[e] = c
            else:
                v = add(v, c)
                if v:
                    r[e] = v
                else:
                    del r[e]
        return r

    def pneg(self, a):
        neg = self.neg
        return {e: neg(c) for e, c in a.items()}

    def psub(self, a, b):
        return self.padd(a, self.pneg(b))

    def pscale(self, a, c):
        if not c:
            return {}
        mul = self.mul
        r = {}
        for e, x in a.items():
            v = mul(x, c)
            if v:
                r[e] = v
        return r

    def pmul(self, a, b):
        if not a or not b:
            return {}
        if len(a) < len(b):
            a, b = b, a
        add, mul = self.add, self.mul
        r = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = mul(c1, c2)
                if e in r:
                    v = add(r[e], v)
                    if v:
                        r[e] = v
                    else:
                        del r[e]
                elif v:
                    r[e] = v
        return r

    def pmonomial_mul(self, a, exp, c):
        """Multiply ``a`` by the single term ``c * x^exp``."""
        mul = self.mul
        r = {}
        for e, x in a.items():
            v = mul(x, c)
            if v:
                r[tuple(i + j for i, j in zip(e, exp))] = v
        return r

    def ppow(self, a, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        if n == 0:
            if not a:
                raise ValueError("0^0: the caller must supply the unit polynomial")
            return {(0,) * len(next(iter(a))): self.one}
        if not a:
            return {}
        if len(a) == 1:
            (e, c), = a.items()
            return {tuple(i * n for i in e): self.pow(c, n)}
        result = None
        base = a
        while n:
            if n & 1:
                result = base if result is None else self.pmul(result, base)
            n >>= 1
            if n:
                base = self.pmul(base, base)
        return result


class IntegerRing(_SparseOps):
    """Python integers (also used for rational coefficients)."""

    char = 0
    one = 1

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def pow(a, n):
        return a ** n

    def from_int(self, n):
        return n

    def pmul(self, a, b):
        if not a or not b:
            return {}
        if len(a) < len(b):
            a, b = b, a
        r = {}
        get = r.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                r[e] = get(e, 0) + c1 * c2
        return {e: c for e, c in r.items() if c}


ZZ = IntegerRing()


class FiniteField(_SparseOps):
    """F_q with q = p^h.

    Elements are integers 0 <= x < q; the base-p digits of ``x`` are the
    coefficients of x as a polynomial in a fixed root ``a`` of ``ext_poly``.
    For h = 1 this is ordinary arithmetic mod p.
    """

    one = 1

    def __init__(self, p: int, h: int = 1, ext_poly=None):
        if not is_prime(p):
            raise InputError(f"p = {p} is not prime")
        if not 1 <= h <= 4:
            raise InputError("extension degree h must satisfy 1 <= h <= 4")
        self.p, self.h, self.q = p, h, p ** h
        self.char = p
        if h == 1:
            self.ext_poly = (0, 1)
            return
        if ext_poly is None:
            ext_poly = _find_irreducible(p, h)
        ext_poly = tuple(c % p for c in ext_poly)
        if len(ext_poly) != h + 1 or ext_poly[-1] != 1:
            raise InputError("ext_poly must be monic of degree h (coefficients low to high)")
        if not _is_irreducible(p, ext_poly):
            raise InputError(f"ext_poly {ext_poly} is reducible over F_{p}")
        self.ext_poly = ext_poly
        self._build_tables()

    # --- construction of F_q tables -------------------------------------
    def _digits(self, x):
        p = self.p
        return [(x // p ** i) % p for i in range(self.h)]

    def _undigits(self, ds):
        p = self.p
        return sum(d * p ** i for i, d in enumerate(ds))

    def _slow_mul(self, x, y):
        p, h = self.p, self.h
        a, b = self._digits(x), self._digits(y)
        prod_ = [0] * (2 * h - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod_[i + j] = (prod_[i + j] + ai * bj) % p
        f = self.ext_poly
        for k in range(2 * h - 2, h - 1, -1):
            c = prod_[k]
            if c:
                for i in range(h + 1):
                    prod_[k - h + i] = (prod_[k - h + i] - c * f[i]) % p
        return self._undigits(prod_[:h])

    def _build_tables(self):
        q = self.q
        for g in range(2, q):
            exp_t = [1]
            x = 1
            for _ in range(q - 2):
                x = self._slow_mul(x, g)
                if x == 1:
                    break
                exp_t.append(x)
            if len(exp_t) == q - 1:
                break
        else:  # pragma: no cover - every finite field has a primitive element
            raise AssertionError("no primitive element found")
        self._exp = exp_t + exp_t
        self._log = {x: i for i, x in enumerate(exp_t)}
        p, h = self.p, self.h
        digits = [self._digits(x) for x in range(q)]
        self._add_t = [[self._undigits([(u + v) % p for u, v in zip(digits[x], digits[y])])
                        for y in range(q)] for x in range(q)] if q <= 256 else None
        self._neg_t = [self._undigits([(-u) % p for u in digits[x]]) for x in range(q)]

    # --- scalar arithmetic -------------------------------------------------
    def add(self, x, y):
        if self.h == 1:
            return (x + y) % self.p
        if self._add_t is not None:
            return self._add_t[x][y]
        p = self.p
        r, s = 0, 1
        while x or y:
            r += ((x % p + y % p) % p) * s
            x //= p
            y //= p
            s *= p
        return r

    def neg(self, x):
        if self.h == 1:
            return (-x) % self.p
        return self._neg_t[x]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.h == 1:
            return (x * y) % self.p
        if not x or not y:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x):
        if not x:
            raise DivisionByZero("inverse of 0 in F_q")
        if self.h == 1:
            return pow(x, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[x]) % (self.q - 1)]

    def pow(self, x, n):
        if self.h == 1:
            if n < 0:
                x, n = self.inv(x), -n
            return pow(x, n, self.p)
        if not x:
            if n < 0:
                raise DivisionByZero("0 to a negative power")
            return 0 if n else 1
        return self._exp[(self._log[x] * n) % (self.q - 1)]

    def root_p(self, x):
        """The unique y with y^p = x (F_q is perfect)."""
        if self.h == 1:
            return x
        return self.pow(x, self.q // self.p)

    def from_int(self, n: int):
        return n % self.p

    def elements(self):
        return range(self.q)

    def to_str(self, x) -> str:
        if self.h == 1:
            return str(x)
        terms = []
        for i, d in enumerate(self._digits(x)):
            if d:
                mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
                terms.append(mono if d == 1 and mono else (f"{d}*{mono}" if mono else str(d)))
        return "+".join(reversed(terms)) or "0"

    def generator(self):
        """The class of the root ``a`` of ext_poly (an error for h = 1)."""
        if self.h == 1:
            raise InputError("the symbol 'a' needs an extension field (h > 1)")
        return self.p

    # --- specialised bulk operations for the prime field -----------------------
    def padd(self, a, b):
        if self.h != 1:
            return _SparseOps.padd(self, a, b)
        if len(a) < len(b):
            a, b = b, a
        p = self.p
        r = dict(a)
        for e, c in b.items():
            v = r.get(e)
            if v is None:
                r[e] = c
            else:
                v = (v + c) % p
                if v:
                    r[e] = v
                else:
                    del r[e]
        return r

    def pmul(self, a, b):
        if self.h != 1:
            return _SparseOps.pmul(self, a, b)
        if not a or not b:
            return {}
        if len(a) < len(b):
            a, b = b, a
        r = {}
        get = r.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                r[e] = get(e, 0) + c1 * c2
        p = self.p
        out = {}
        for e, c in r.items():
            c %= p
            if c:
                out[e] = c
        return out

    def pfrobenius(self, a, power: int = 1):
        """a^(p^power), computed termwise (freshman's dream)."""
        k = self.p ** power
        if self.h == 1:
            return {tuple(i * k for i in e): c for e, c in a.items()}
        return {tuple(i * k for i in e): self.pow(c, k) for e, c in a.items()}

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.h, self.ext_poly) == (
            other.p, other.h, other.ext_poly)

    def __hash__(self):
        return hash((self.p, self.h, self.ext_poly))

    def __repr__(self):
        return f"FiniteField(p={self.p}, h={self.h})"


def _poly_rem(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _is_irreducible(p, f):
    h = len(f) - 1
    for deg in range(1, h // 2 + 1):
        for tail in product(range(p), repeat=deg):
            if not _poly_rem(f, list(tail) + [1], p):
                return False
    return True


def _find_irreducible(p, h):
    for tail in product(range(p), repeat=h):
        f = tuple(tail) + (1,)
        if f[0] and _is_irreducible(p, f):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover
