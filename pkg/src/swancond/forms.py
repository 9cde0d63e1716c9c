"""Differential forms on k, the Cartier operator and the refined Swan conductor."""

from __future__ import annotations

from dataclasses import dataclass

from .covectors import Character, graded_piece_rep, swan_conductor, vp
from .errors import InputError, NotClosed, UnramifiedCharacter
from .kfield import KElem, KField, LaurentK
from .witt import WittVector


@dataclass(frozen=True)
class OneForm:
    """Σ h_i du_i on k."""

    K: KField
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.K.r:
            raise InputError(f"a 1-form over k needs {self.K.r} coefficients")

    @classmethod
    def zero(cls, K):
        return cls(K, tuple(K.zero() for _ in range(K.r)))

    @classmethod
    def du(cls, K, i, coeff=None):
        c = [K.zero()] * K.r
        c[i - 1] = K.one() if coeff is None else coeff
        return cls(K, tuple(c))

    def __bool__(self):
        return any(bool(h) for h in self.coeffs)

    def __add__(self, other):
        return OneForm(self.K, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return OneForm(self.K, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        f = self.K.coerce(f)
        return OneForm(self.K, tuple(f * a for a in self.coeffs))

    __rmul__ = scale

    def __str__(self):
        parts = [f"({h})*du{i + 1}" for i, h in enumerate(self.coeffs) if h]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class TwoForm:
    """Σ_{i<j} c_ij du_i ∧ du_j; only nonzero entries are stored."""

    K: KField
    coeffs: dict

    def __bool__(self):
        return any(bool(c) for c in self.coeffs.values())


@dataclass(frozen=True)
class LogOneForm:
    """t^{-d} (alpha + beta dlog t)."""

    d: int
    alpha: OneForm
    beta: KElem

    def to_json(self):
        return {"d": self.d, "alpha": [str(h) for h in self.alpha.coeffs], "beta": str(self.beta)}

    @classmethod
    def from_json(cls, K, doc):
        from .parse import parse_k
        return cls(int(doc["d"]), OneForm(K, tuple(parse_k(K, h) for h in doc["alpha"])),
                   parse_k(K, doc["beta"]))


def d_k(a: KElem) -> OneForm:
    K = a.K
    return OneForm(K, tuple(a.partial(i) for i in range(1, K.r + 1)))


def d_1(w: OneForm) -> TwoForm:
    out = {}
    r = w.K.r
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            c = w.coeffs[j - 1].partial(i) - w.coeffs[i - 1].partial(j)
            if c:
                out[i, j] = c
    return TwoForm(w.K, out)


def is_closed(w: OneForm) -> bool:
    return not d_1(w)


def cartier(w: OneForm) -> OneForm:
    """The Cartier operator on closed 1-forms.

    After expanding h_i = Σ_s c_{i,s} u^s in the p-basis, only the terms with
    s = (p-1) e_i survive: C(c u_i^(p-1) du_i) = c^(1/p) du_i.  All other
    monomial terms of a closed form add up to an exact form.
    """
    if not is_closed(w):
        raise NotClosed("the Cartier operator is defined on closed forms only")
    K = w.K
    out = []
    for i, h in enumerate(w.coeffs):
        s = [0] * K.r
        s[i] = K.p - 1
        c = h.pbasis_expand()[tuple(s)] if h else K.zero()
        out.append(c.pth_root() if c else K.zero())
    return OneForm(K, tuple(out))


def inverse_cartier(a: KElem, b: KElem) -> OneForm:
    """A representative of C^{-1}(a db), namely a^p b^(p-1) db."""
    p = a.K.p
    return d_k(b).scale(a ** p * b ** (p - 1))


def is_exact(w: OneForm) -> bool:
    return is_closed(w) and not cartier(w)


def in_Bm(w: OneForm, m: int) -> bool:
    if m < 0:
        raise InputError("m must be non-negative")
    if m == 0:
        return not w
    return is_closed(w) and in_Bm(cartier(w), m - 1)


def in_Zm(w: OneForm, m: int) -> bool:
    if m < 0:
        raise InputError("m must be non-negative")
    if m == 0:
        return True
    return is_closed(w) and in_Zm(cartier(w), m - 1)


def cartier_power(w: OneForm, m: int) -> OneForm:
    for _ in range(m):
        w = cartier(w)
    return w


@dataclass(frozen=True)
class EForm:
    """A formal 1-form over E: Σ a_i du_i + b dlog t with Laurent coefficients."""

    alpha: tuple
    beta: LaurentK

    def __bool__(self):
        return any(bool(a) for a in self.alpha) or bool(self.beta)


def fs_d(lam: WittVector, s: int):
    """Σ_i f_i^(p^(s-i)) dlog f_i over the coordinates f_0..f_s of lam.

    For coordinates in k this is a :class:`OneForm`; for Laurent polynomial
    coordinates it is an :class:`EForm` (the dt part is written via dlog t).
    Zero coordinates contribute nothing.
    """
    if s < lam.m:
        raise InputError("F^s d needs s >= m")
    p = lam.p
    first = lam.coords[0]
    if isinstance(first, KElem):
        K = first.K
        out = OneForm.zero(K)
        for i, f in enumerate(lam.coords):
            if f:
                out = out + d_k(f).scale(f ** (p ** (s - i) - 1))
        return out
    K = first.K
    alpha = [LaurentK.zero(K)] * K.r
    beta = LaurentK.zero(K)
    for i, f in enumerate(lam.coords):
        if not f:
            continue
        # f^(p^(s-i)) dlog f = f^(p^(s-i) - 1) df, with df = Σ ∂_j f du_j + (t d/dt f) dlog t
        w = f ** (p ** (s - i) - 1)
        alpha = [a + w * f.partial(j + 1) for j, a in enumerate(alpha)]
        beta = beta + w * f.t_derivative()
    return EForm(tuple(alpha), beta)


def reduced_phantom_derivative(lam: WittVector, i: int) -> KElem:
    """Σ_j λ_j^(p^(m-j) - 1) ∂λ_j/∂u_i, i.e. p^(-m) ∂φ_m/∂u_i reduced mod p.

    It vanishes in every direction exactly when λ lies in W_m(k^p).
    """
    p, m = lam.p, lam.m
    K = lam.zero.K
    out = K.zero()
    for j, c in enumerate(lam.coords):
        if c:
            out = out + c ** (p ** (m - j) - 1) * c.partial(i)
    return out


def refined_swan(c: Character) -> LogOneForm:
    """rsw of a ramified character, from the canonical representative of its top piece."""
    d = swan_conductor(c)
    if d == 0:
        raise UnramifiedCharacter("the refined Swan conductor needs sw > 0")
    p = c.K.p
    m = vp(d, p)
    n = d // p ** m
    lam = graded_piece_rep(c, d)
    return refined_swan_of(lam, n)


def refined_swan_of(lam: WittVector, n: int) -> LogOneForm:
    """t^{-d}(-n λ_0^(p^m) dlog t + Σ_j λ_j^(p^(m-j)) dlog λ_j), d = n p^m."""
    p, m = lam.p, lam.m
    K = lam.zero.K
    alpha = OneForm.zero(K)
    for j, x in enumerate(lam.coords):
        if x:
            alpha = alpha + d_k(x).scale(x ** (p ** (m - j) - 1))
    beta = -(lam.coords[0] ** (p ** m)) * n
    return LogOneForm(n * p ** m, alpha, beta)


def iterated_root(a: KElem, m: int):
    for _ in range(m):
        if not a.in_kp():
            return None
        a = a.pth_root()
    return a


def bgr_membership(y: LogOneForm) -> bool:
    K = y.alpha.K
    p = K.p
    if y.d <= 0:
        return False
    m = vp(y.d, p)
    n = y.d // p ** m
    if not in_Bm(y.alpha, m + 1):
        return False
    root = iterated_root(y.beta, m)
    if root is None:
        return False
    return not (cartier_power(y.alpha, m).scale(K.from_int(n)) + d_k(root))
