"""Witt covectors over E = k((t)), their graded pieces and minimal liftings.

A covector (..., 0, f_0, ..., f_m) is stored as the Witt vector
(f_0, ..., f_m) over Laurent polynomials; prefixing zeros does not change it.
A co-monomial λ t^{-d} with d = n p^m puts λ_i t^{-n p^i} in coordinate i.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import InputError
from .kfield import KElem, KField, LaurentK
from .witt import WittVector


def vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("v_p(0) is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def k_vector(K: KField, coords) -> WittVector:
    return WittVector([K.coerce(c) for c in coords], K.p, K.zero())


class CoVector:
    """A finitely supported Witt covector over k[t, 1/t]."""

    __slots__ = ("K", "witt")

    def __init__(self, K: KField, coords):
        coords = [c if isinstance(c, LaurentK) else LaurentK.monomial(K.coerce(c), 0) for c in coords]
        if not coords:
            coords = [LaurentK.zero(K)]
        self.K = K
        self.witt = WittVector(coords, K.p, LaurentK.zero(K))

    @classmethod
    def from_witt(cls, K, w: WittVector):
        return cls(K, w.coords)

    @property
    def m(self):
        return self.witt.m

    @property
    def coords(self):
        return self.witt.coords

    def padded(self, m: int) -> WittVector:
        return self.witt.pad_to(m)

    def __bool__(self):
        return bool(self.witt)

    def __add__(self, other):
        M = max(self.m, other.m)
        return CoVector.from_witt(self.K, self.padded(M) + other.padded(M))

    def __neg__(self):
        return CoVector.from_witt(self.K, -self.witt)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, CoVector):
            return NotImplemented
        M = max(self.m, other.m)
        return self.padded(M) == other.padded(M)

    def frobenius_bar(self):
        return CoVector.from_witt(self.K, self.witt.frobenius_bar())

    def kato_valuation(self):
        return self.witt.kato_valuation()

    def __repr__(self):
        return "CoVector(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class CoMonomial:
    """λ t^{-d} with d = n p^m, gcd(n, p) = 1 and λ in W_m(k)."""

    n: int
    m: int
    witt: WittVector

    def __post_init__(self):
        if self.n <= 0 or self.n % self.witt.p == 0:
            raise InputError(f"n = {self.n} must be positive and prime to p")
        if self.witt.m != self.m:
            raise InputError("Witt vector length does not match the level m")

    @property
    def p(self):
        return self.witt.p

    @property
    def degree(self) -> int:
        return self.n * self.p ** self.m

    def is_pure(self) -> bool:
        return bool(self.witt) and not self.witt.in_pW()

    def covector(self) -> CoVector:
        K = self.witt.zero.K
        p = self.p
        return CoVector(K, [LaurentK.monomial(c, -self.n * p ** i) for i, c in enumerate(self.witt)])


@dataclass(frozen=True)
class Character:
    """A class in H^1(E, Q_p/Z_p) in minimal form.

    ``wild`` maps n to the pure co-monomial of index n; ``const`` is the
    constant (residual) Witt vector, carried but never compared; ``tame`` is
    an optional prime-to-p order with conductor 0.
    """

    K: KField
    wild: dict = field(default_factory=dict)
    const: WittVector | None = None
    tame: int | None = None

    def comonomials(self):
        return [self.wild[n] for n in sorted(self.wild)]

    def covector(self) -> CoVector:
        out = CoVector(self.K, [LaurentK.zero(self.K)])
        for cm in self.comonomials():
            out = out + cm.covector()
        if self.const is not None and self.const:
            out = out + CoVector(self.K, list(self.const))
        return out

    def to_json(self):
        return {
            "sw": swan_conductor(self),
            "minimal": [{"n": cm.n, "m": cm.m, "witt": [str(c) for c in cm.witt]}
                        for cm in self.comonomials()],
        }


def graded_decompose(f: CoVector):
    """Split f into co-monomials of pairwise distinct degree plus a constant part.

    Returns ``(comonomials, const)``.  Peels the t-graded components of the
    first nonzero coordinate as Teichmüller-type vectors, Witt-subtracts them
    and continues with the next coordinate.  Components of positive t-degree
    are peeled the same way and then discarded, since they represent the
    trivial class.
    """
    K, p, M = f.K, f.K.p, f.m
    zeroL = LaurentK.zero(K)
    x = f.witt
    by_degree = defaultdict(list)
    const_pieces = []
    for j in range(M + 1):
        for e, c in x.coords[j].terms():
            y = [zeroL] * (M + 1)
            y[j] = LaurentK.monomial(c, e)
            x = x - WittVector(y, p, zeroL)
            if e < 0:
                d = -e * p ** (M - j)
                v = vp(d, p)
                lam = [K.zero()] * (v + 1)
                lam[vp(-e, p)] = c
                by_degree[d].append(WittVector(lam, p, K.zero()))
            elif e == 0:
                vec = [K.zero()] * (M + 1)
                vec[j] = c
                const_pieces.append(WittVector(vec, p, K.zero()))
        if x.coords[j]:
            raise AssertionError("peeling failed to clear a coordinate")
    comonomials = []
    for d in sorted(by_degree):
        total = by_degree[d][0]
        for w in by_degree[d][1:]:
            total = total + w
        if total:
            v = vp(d, p)
            comonomials.append(CoMonomial(d // p ** v, v, total))
    const = None
    if const_pieces:
        const = const_pieces[0]
        for w in const_pieces[1:]:
            const = const + w
    return comonomials, const


def minimalize(K: KField, comonomials) -> dict:
    """Combine co-monomials per n and reduce each to a pure representative."""
    groups = defaultdict(list)
    for cm in comonomials:
        groups[cm.n].append(cm)
    wild = {}
    for n, group in sorted(groups.items()):
        M = max(cm.m for cm in group)
        mu = None
        for cm in group:
            w = cm.witt
            for _ in range(M - cm.m):
                w = w.times_p()
            mu = w if mu is None else mu + w
        while M > 0 and mu.in_pW():
            mu = mu.divide_by_p()
            M -= 1
        if mu:
            wild[n] = CoMonomial(n, M, mu)
    return wild


def minimal_lifting(f: CoVector, tame: int | None = None) -> Character:
    comonomials, const = graded_decompose(f)
    return Character(f.K, minimalize(f.K, comonomials), const, tame)


def swan_conductor(c: Character) -> int:
    return max([0] + [cm.degree for cm in c.wild.values()])


def fil_membership(f, d: int) -> bool:
    """True iff the class of f lies in Fil_d, i.e. its minimal lifting has Kato valuation >= -d."""
    if d < 0:
        raise InputError("filtration index must be non-negative")
    c = f if isinstance(f, Character) else minimal_lifting(f)
    wild_part = CoVector(c.K, [LaurentK.zero(c.K)])
    for cm in c.comonomials():
        wild_part = wild_part + cm.covector()
    return wild_part.kato_valuation() >= -d


def graded_piece_rep(c: Character, d: int) -> WittVector:
    if d <= 0:
        raise InputError("graded pieces are indexed by positive integers")
    p = c.K.p
    v = vp(d, p)
    cm = c.wild.get(d // p ** v)
    if cm is None or cm.m != v:
        return k_vector(c.K, [0] * (v + 1))
    return cm.witt.canonical_mod_p()


def char_add(c1: Character, c2: Character) -> Character:
    if c1.K != c2.K:
        raise InputError("characters over different fields")
    tame = None
    if c1.tame or c2.tame:
        from math import lcm
        tame = lcm(c1.tame or 1, c2.tame or 1)
    return minimal_lifting(c1.covector() + c2.covector(), tame)


def char_neg(c: Character) -> Character:
    return minimal_lifting(-c.covector(), c.tame)


def covector_from_exprs(K: KField, exprs) -> CoVector:
    from .parse import parse_laurent
    return CoVector(K, [parse_laurent(K, e) for e in exprs])
