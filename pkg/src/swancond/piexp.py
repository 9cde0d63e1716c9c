"""Truncated π-exponentials over Q(ζ_{p^{m+1}}) and exact connection coefficients.

The cyclotomic field is presented in the uniformizer π = ζ - 1, whose
minimal polynomial is Φ_{p^{m+1}}(1 + X), Eisenstein of degree N = p^m (p-1).
Since v_p(π) = 1/N and 0, 1/N, ..., (N-1)/N are distinct mod 1, the valuation
of Σ c_i π^i is min_i (v_p(c_i) + i/N).

Series are in S = 1/T; a coefficient is a polynomial in the u-lifts with
cyclotomic coefficients, stored as {u-exponent: CycloElem}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import BoundExceeded, InputError, IntegralityFailure
from .lifts import ZPoly, lift_k
from .witt import WittVector, ghost_components

DEGREE_BOUND = 64


def vp_rational(x: Fraction, p: int):
    if x == 0:
        return float("inf")
    x = Fraction(x)
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


class CycloField:
    """Q(ζ) for ζ a primitive p^(m+1)-th root of unity, with basis 1, π, ..., π^(N-1)."""

    def __init__(self, p: int, m: int, bound: int = DEGREE_BOUND):
        N = p ** m * (p - 1)
        if N > bound:
            raise BoundExceeded(f"cyclotomic degree {N} exceeds the bound {bound}")
        self.p, self.m, self.N = p, m, N
        poly = [0] * (N + 1)
        for i in range(p):
            e = i * p ** m
            for k in range(e + 1):
                poly[k] += comb(e, k)
        assert poly[N] == 1
        self.minpoly = tuple(poly)
        # X^k mod minpoly for k = N .. 2N-2
        red = []
        cur = [-c for c in poly[:N]]
        for _ in range(max(N - 1, 1)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [a - top * c for a, c in zip(cur, poly[:N])]
        self._red = red

    def __eq__(self, other):
        return isinstance(other, CycloField) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    def elem(self, coeffs):
        c = [Fraction(x) for x in coeffs] + [Fraction(0)] * (self.N - len(coeffs))
        return CycloElem(self, tuple(c[:self.N]))

    def const(self, x):
        return self.elem([x])

    def zero(self):
        return self.const(0)

    def one(self):
        return self.const(1)

    def pi(self):
        if self.N == 1:
            return self.const(-self.minpoly[0])
        return self.elem([0, 1])


@dataclass(frozen=True)
class CycloElem:
    field: CycloField
    coeffs: tuple

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.const(other)
        return CycloElem(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, (int, Fraction)):
            return CycloElem(F, tuple(a * other for a in self.coeffs))
        N = F.N
        prod = [Fraction(0)] * (2 * N - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = prod[:N]
        for k in range(N, 2 * N - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(F._red[k - N]):
                    if r:
                        out[i] += c * r
        return CycloElem(F, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def valuation(self):
        F = self.field
        return min((vp_rational(c, F.p) + Fraction(i, F.N) for i, c in enumerate(self.coeffs) if c),
                   default=float("inf"))

    def is_integral(self) -> bool:
        return all(c.denominator % self.field.p for c in self.coeffs)

    def divided_by_pi(self):
        return self * pi_inverse(self.field)

    def _matrix(self):
        F = self.field
        cols = [(self * F.elem([0] * i + [1])).coeffs for i in range(F.N)]
        return [list(row) for row in zip(*cols)]

    def inverse(self):
        if not self:
            raise ZeroDivisionError("0 has no inverse")
        return CycloElem(self.field, tuple(_solve(self._matrix(), [1] + [0] * (self.field.N - 1))))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.field, tuple(a / other for a in self.coeffs))
        return self * other.inverse()

    def norm(self) -> Fraction:
        """Norm to Q, as the determinant of multiplication by self."""
        return _det(self._matrix())

    def to_str(self, name="pi"):
        out = ""
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
            a = abs(c)
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out or "0"


def _solve(M, rhs):
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(M, rhs)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c])
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[-1] for row in A]


def _det(M):
    M = [[Fraction(x) for x in row] for row in M]
    n, det = len(M), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


@lru_cache(maxsize=None)
def pi_inverse(F: CycloField) -> CycloElem:
    # π (π^(N-1) + a_(N-1) π^(N-2) + ... + a_1) = -a_0
    a = F.minpoly
    if F.N == 1:
        return F.const(Fraction(1, -a[0]))
    return F.elem([Fraction(a[i + 1], -a[0]) for i in range(F.N)])


@dataclass(frozen=True)
class PiTower:
    """π_j = ζ^(p^(m-j)) - 1 for j = 0..m, inside the field of level m."""

    field: CycloField
    pis: tuple

    @property
    def m(self):
        return self.field.m

    def __getitem__(self, j):
        return self.pis[j]


@lru_cache(maxsize=None)
def pi_tower(p: int, m: int, bound: int = DEGREE_BOUND) -> PiTower:
    F = CycloField(p, m, bound)
    one = F.one()
    zeta = one + F.pi()
    pis = tuple(zeta ** (p ** (m - j)) - one for j in range(m + 1))
    for j in range(m):
        if (one + pis[j + 1]) ** p - one != pis[j]:
            raise AssertionError("tower relation [p](π_{j+1}) = π_j fails")
    if (one + pis[0]) ** p - one:
        raise AssertionError("[p](π_0) must vanish")
    return PiTower(F, pis)


# --- u-polynomials with cyclotomic coefficients -----------------------------------

def _cpoly_add(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out[e] + c if e in out else c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _cpoly_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = c1 * c2
            out[e] = out[e] + v if e in out else v
    return {e: c for e, c in out.items() if c}


def _cpoly_scale(a, x):
    return {e: c * x for e, c in a.items() if c * x}


def gauss_valuation(coeff: dict):
    return min((c.valuation() for c in coeff.values()), default=float("inf"))


@dataclass(frozen=True)
class TruncSeries:
    """1 + Σ_{k=1}^{D} c_k T^{-k}; ``coeffs[k]`` is a u-polynomial over Q(ζ)."""

    tower: PiTower
    order: int
    nvars: int
    coeffs: tuple

    def __mul__(self, other):
        D = min(self.order, other.order)
        out = []
        for k in range(D + 1):
            acc = {}
            for i in range(k + 1):
                acc = _cpoly_add(acc, _cpoly_mul(self.coeffs[i], other.coeffs[k - i]))
            out.append(acc)
        return TruncSeries(self.tower, D, self.nvars, tuple(out))

    def __eq__(self, other):
        return (isinstance(other, TruncSeries) and self.order == other.order
                and all(_cpoly_add(a, _cpoly_scale(b, -1)) == {} for a, b in zip(self.coeffs, other.coeffs)))

    def to_json(self):
        names = ["u%d" % (i + 1) for i in range(self.nvars)]
        out = {}
        for k, coeff in enumerate(self.coeffs):
            terms = []
            for e in sorted(coeff):
                mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
                c = coeff[e].to_str()
                terms.append(f"({c})" + (f"*{mono}" if mono else ""))
            out[f"T^-{k}" if k else "1"] = " + ".join(terms) or "0"
        return out


def _check_lift(lift: WittVector):
    if not lift.integral:
        raise InputError("π-exponentials need an integral lift")
    nv = lift.zero.nvars
    for c in lift.coords:
        for e in c.terms:
            if e[-1] < 1:
                raise InputError("the lift must be supported in T^{-1}(lift ring)[T^{-1}]")
    return nv


def _argument(lift: WittVector, tower: PiTower):
    """Σ_j π_{M-m+... } φ_j / p^j as {S-degree: u-poly over Q(ζ)}."""
    p, m, M = lift.p, lift.m, tower.m
    if m > M:
        raise InputError("tower level below the Witt length")
    arg = {}
    for j, phi in enumerate(ghost_components(lift)):
        pij = tower[m - j]
        for e, c in phi.terms.items():
            s = e[-1]
            x = pij * Fraction(c, p ** j)
            arg.setdefault(s, {})
            arg[s] = _cpoly_add(arg[s], {e[:-1]: x})
    return arg


def _exp_series(arg, D, nvars, tower):
    F = tower.field
    one = {(0,) * nvars: F.one()}
    e = [one]
    for k in range(1, D + 1):
        acc = {}
        for i in range(1, k + 1):
            if arg.get(i):
                acc = _cpoly_add(acc, _cpoly_scale(_cpoly_mul(arg[i], e[k - i]), i))
        e.append(_cpoly_scale(acc, Fraction(1, k)))
    return TruncSeries(tower, D, nvars, tuple(e))


def pi_exponential(lift: WittVector, D: int, tower: PiTower | None = None, check: bool = True) -> TruncSeries:
    """exp(Σ_j π_{m-j} φ_j(T)/p^j) to order T^{-D}, with an integrality check."""
    nv = _check_lift(lift)
    tower = tower or pi_tower(lift.p, lift.m)
    series = _exp_series(_argument(lift, tower), D, nv - 1, tower)
    if check:
        inv = tower[lift.m].inverse()
        for k, coeff in enumerate(series.coeffs[1:], start=1):
            for x in coeff.values():
                if not (x * inv).is_integral():
                    raise IntegralityFailure(f"coefficient of T^-{k} is not divisible by π_m")
    return series


def frobenius_lift(lift: WittVector, q: int) -> WittVector:
    return WittVector([c.substitute_powers(q) for c in lift.coords], lift.p, lift.zero, True)


def theta_quotient(lift: WittVector, D: int, q: int | None = None, tower: PiTower | None = None) -> TruncSeries:
    """e(φ(f) - f) with φ: T -> T^q, u -> u^q."""
    q = q or lift.p
    diff = frobenius_lift(lift, q) - lift
    series = pi_exponential(diff, D, tower, check=False)
    for k, coeff in enumerate(series.coeffs):
        for x in coeff.values():
            if not x.is_integral():
                raise IntegralityFailure(f"coefficient of T^-{k} of the Frobenius quotient is not integral")
    return series


def connection_coeffs_exact(lift: WittVector, i: int, D: int, tower: PiTower | None = None) -> dict:
    """g^i as {T-degree: u-poly over Q(ζ)}: Σ_j π_{m-j} ∂φ_j / p^j (∂ = d/dT or d/du_i)."""
    nv = _check_lift(lift)
    tower = tower or pi_tower(lift.p, lift.m)
    p, m = lift.p, lift.m
    out = {}
    for j, phi in enumerate(ghost_components(lift)):
        pij = tower[m - j]
        for e, c in phi.terms.items():
            s = e[-1]
            if i == 0:
                deg, coef, ue = -s - 1, -s * c, e[:-1]
            else:
                if not e[i - 1]:
                    continue
                ue = e[:i - 1] + (e[i - 1] - 1,) + e[i:-1]
                deg, coef = -s, e[i - 1] * c
            if deg < -D - 1:
                continue
            x = pij * Fraction(coef, p ** j)
            out[deg] = _cpoly_add(out.get(deg, {}), {ue: x})
    return {d: g for d, g in out.items() if g}


def log_derivative_matches(lift: WittVector, i: int, D: int, tower: PiTower | None = None) -> bool:
    """Check ∂e = g^i · e coefficientwise in T^{-1} up to order D."""
    tower = tower or pi_tower(lift.p, lift.m)
    e = pi_exponential(lift, D, tower, check=False)
    g = connection_coeffs_exact(lift, i, D + 1, tower)
    nv = e.nvars
    for j in range(D + 1):
        # coefficient of S^j in ∂e
        if i == 0:
            lhs = _cpoly_scale(e.coeffs[j - 1], -(j - 1)) if j >= 1 else {}
        else:
            lhs = {}
            for ue, x in e.coeffs[j].items():
                if ue[i - 1]:
                    lhs = _cpoly_add(lhs, {ue[:i - 1] + (ue[i - 1] - 1,) + ue[i:]: x * ue[i - 1]})
        rhs = {}
        for deg, gc in g.items():
            s = -deg
            if 0 <= j - s <= D:
                rhs = _cpoly_add(rhs, _cpoly_mul(gc, e.coeffs[j - s]))
        if _cpoly_add(lhs, _cpoly_scale(rhs, -1)):
            return False
    del nv
    return True


def lift_comonomial(cm, nvars_extra: int = 0) -> WittVector:
    """Integral lift (lift(λ_i) T^{-n p^i})_i of a co-monomial with polynomial coordinates."""
    lam, p, n = cm.witt, cm.p, cm.n
    K = lam.zero.K
    nv = K.r + 1
    coords = []
    for i, c in enumerate(lam.coords):
        base = lift_k(c, K.r)
        coords.append(ZPoly(nv, {e + (n * p ** i,): v for e, v in base.terms.items()}))
    return WittVector(coords, p, ZPoly(nv), True)


def lift_covector(cov) -> WittVector:
    from .lifts import lift_laurent
    coords = [lift_laurent(f) for f in cov.coords]
    return WittVector(coords, cov.K.p, ZPoly(cov.K.r + 1), True)
