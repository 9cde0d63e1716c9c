"""Log-affine functions of r = log_p(ρ), Newton polygons, and generic radii.

All quantities are exact rationals.  A coefficient of p-adic valuation v has
absolute value p^(-v), so log_p|Σ a_j T^j|_ρ = max_j (j r - v_j), and the
constant ω = |p|^(1/(p-1)) has log_p ω = -1/(p-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .covectors import Character, CoMonomial
from .errors import (DegenerateOperator, HypothesisViolated, InexactLeading, InputError,
                     InvariantFailure, NotPure, SmallRadiusConditionFails, ZeroElement)
from .forms import reduced_phantom_derivative
from .witt import WittVector


def log_omega(p: int) -> Fraction:
    return Fraction(-1, p - 1)


@dataclass(frozen=True)
class LogAffine:
    """Pointwise max (``kind='max'``) or min of affine pieces on the open r-interval (lo, hi).

    ``None`` as an endpoint means unbounded.
    """

    pieces: tuple
    kind: str = "min"
    lo: Fraction | None = None
    hi: Fraction | None = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("min", "max"):
            raise InputError("kind must be 'min' or 'max'")
        if not self.pieces:
            raise ZeroElement("a log-affine function needs at least one piece")
        ps = tuple(sorted({(Fraction(s), Fraction(b)) for s, b in self.pieces}))
        object.__setattr__(self, "pieces", ps)

    def __call__(self, r) -> Fraction:
        vals = [s * r + b for s, b in self.pieces]
        return max(vals) if self.kind == "max" else min(vals)

    def _pick(self, r):
        key = lambda pc: pc[0] * r + pc[1]
        return max(self.pieces, key=key) if self.kind == "max" else min(self.pieces, key=key)

    def _candidates(self):
        pts = set()
        for i, (s1, b1) in enumerate(self.pieces):
            for s2, b2 in self.pieces[i + 1:]:
                if s1 != s2:
                    x = (b2 - b1) / (s1 - s2)
                    if (self.lo is None or x > self.lo) and (self.hi is None or x < self.hi):
                        pts.add(x)
        return sorted(pts)

    def segments(self):
        """[(piece, left, right)] in increasing r; endpoints may be None (unbounded)."""
        cuts = self._candidates()
        bounds = [self.lo] + cuts + [self.hi]
        segs = []
        for a, b in zip(bounds, bounds[1:]):
            if a is None and b is None:
                x = Fraction(0)
            elif a is None:
                x = b - 1
            elif b is None:
                x = a + 1
            else:
                x = (a + b) / 2
            pc = self._pick(x)
            if segs and segs[-1][0] == pc:
                segs[-1] = (pc, segs[-1][1], b)
            else:
                segs.append((pc, a, b))
        return segs

    def breakpoints(self):
        return [seg[2] for seg in self.segments()[:-1]]

    def slope_at_left(self) -> Fraction:
        return self.segments()[0][0][0]

    def slope_at_right(self) -> Fraction:
        return self.segments()[-1][0][0]

    def is_line(self) -> bool:
        return len(self.segments()) == 1

    def restrict(self, lo, hi):
        return LogAffine(self.pieces, self.kind, lo, hi)

    def sample_points(self, count: int = 32):
        """Breakpoints plus ``count`` interior sample abscissae (floats allowed only here)."""
        lo = self.lo if self.lo is not None else min([Fraction(-4)] + [b - 1 for b in self.breakpoints()])
        hi = self.hi if self.hi is not None else max([Fraction(1)] + [b + 1 for b in self.breakpoints()])
        step = (hi - lo) / (count + 1)
        xs = [lo + step * (i + 1) for i in range(count)] + list(self.breakpoints())
        return sorted(set(xs))

    def strictly_below(self, c) -> bool:
        """True iff f(r) < c for every r in the open interval (lo, hi)."""
        c = Fraction(c)
        if any(self(x) >= c for x in self.breakpoints()):
            return False
        for (s, b), a, e in self.segments():
            va = s * a + b if a is not None else (None if s > 0 else (b if s == 0 else "inf"))
            ve = s * e + b if e is not None else (None if s < 0 else (b if s == 0 else "inf"))
            if "inf" in (va, ve):
                return False
            vals = [v for v in (va, ve) if v is not None]
            if any(v > c for v in vals):
                return False
            if len(vals) == 2 and all(v == c for v in vals):
                return False
            if len(vals) == 1 and vals[0] == c and s == 0:
                return False
        return True

    def to_json(self):
        return {"kind": self.kind,
                "interval": [None if self.lo is None else str(self.lo), None if self.hi is None else str(self.hi)],
                "pieces": [{"slope": str(s), "intercept": str(b)} for (s, b), _, _ in self.segments()],
                "breakpoints": [str(x) for x in self.breakpoints()]}


@dataclass(frozen=True)
class ValuedLaurent:
    """Coefficient valuations of a Laurent series in T: {degree: (valuation, exact)}.

    An inexact entry only bounds the valuation from below.
    """

    entries: dict

    @classmethod
    def of(cls, mapping, exact=True):
        return cls({int(j): (Fraction(v), exact) for j, v in mapping.items()})

    def __bool__(self):
        return bool(self.entries)

    def leading(self):
        """(pole order n, valuation, exact) of the lowest-degree entry."""
        j = min(self.entries)
        v, ex = self.entries[j]
        return -j, v, ex

    def all_exact(self):
        return all(ex for _, ex in self.entries.values())


@dataclass(frozen=True)
class RankOneProfile:
    """Valuation data of the connection: direction 0 is d/dT, direction i is d/du_i."""

    p: int
    directions: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.directions:
            raise InputError("a profile needs at least one direction")

    def get(self, i):
        return self.directions.get(i, ValuedLaurent({}))


def gauss_norm_fn(g: ValuedLaurent) -> LogAffine:
    if not g:
        raise ZeroElement("the Gauss norm of 0 is not log-affine")
    return LogAffine(tuple((Fraction(j), -v) for j, (v, _) in g.entries.items()), "max", None, None)


# --- formal side ----------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple

    def slopes(self):
        vs = self.vertices
        return [(y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(vs, vs[1:])]

    def height(self):
        return self.vertices[-1][1] - self.vertices[0][1]

    def to_json(self):
        return [[str(x), str(y)] for x, y in self.vertices]


def _finite(v):
    return v is not None and v != float("inf")


def newton_polygon(points) -> NewtonPolygon:
    """Boundary of the convex hull of the quadrants {x <= x_k, y >= y_k}.

    It starts at the lowest point (rightmost among ties), ends at the
    rightmost point and has non-negative increasing slopes.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise DegenerateOperator("no points")
    ymin = min(y for _, y in pts)
    xstar = max(x for x, y in pts if y == ymin)
    best = {}
    for x, y in pts:
        if x >= xstar and (x not in best or y < best[x]):
            best[x] = y
    hull = []
    for pt in sorted(best.items()):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return NewtonPolygon(tuple(hull))


def _check_operator(vals):
    if len(vals) < 2:
        raise DegenerateOperator("an operator needs order n >= 1")
    if not _finite(vals[-1]):
        raise DegenerateOperator("the leading coefficient g_n must be nonzero")
    return len(vals) - 1, [Fraction(v) if _finite(v) else None for v in vals]


def operator_points(vals):
    n, vs = _check_operator(vals)
    return [(k, (v - k) - (vs[n] - n)) for k, v in enumerate(vs) if v is not None]


def formal_irregularity(vals):
    n, vs = _check_operator(vals)
    irr = max(k - v for k, v in enumerate(vs) if v is not None) - (n - vs[n])
    return int(irr) if irr.denominator == 1 else irr


def formal_slope(vals) -> Fraction:
    n, vs = _check_operator(vals)
    cands = [(vs[n] - v) / (n - k) - 1 for k, v in enumerate(vs[:n]) if v is not None]
    return max([Fraction(0)] + cands)


# --- radii ---------------------------------------------------------------------------------

def small_radius_T(prof: RankOneProfile, lo=None, hi=Fraction(0)) -> LogAffine:
    """min(ω ρ^{-1}/|g^0|_ρ, ω/|g^i|_ρ) on (lo, hi), under the Small Radius condition."""
    lw = log_omega(prof.p)
    pieces = []
    for i, g in prof.directions.items():
        for j, (v, exact) in g.entries.items():
            if not exact:
                raise InexactLeading(f"direction {i} has an entry known only up to a bound")
            pieces.append((Fraction(-j - (1 if i == 0 else 0)), v + lw))
    if not pieces:
        raise SmallRadiusConditionFails("all connection coefficients vanish")
    T = LogAffine(tuple(pieces), "min", None if lo is None else Fraction(lo),
                  None if hi is None else Fraction(hi))
    if not T.strictly_below(lw):
        raise SmallRadiusConditionFails("the norms are too small for the closed formula on this interval")
    return T


@dataclass(frozen=True)
class RadiusAtZero:
    T: LogAffine
    sw_nabla: int | None
    on_whole_interval: bool


def radius_at_zero(prof: RankOneProfile) -> RadiusAtZero:
    p = prof.p
    lw = log_omega(p)
    w = -lw  # valuation of ω
    leads = []
    for i, g in sorted(prof.directions.items()):
        if not g:
            continue
        n, v, exact = g.leading()
        slope = n - 1 if i == 0 else n
        if slope >= 1:
            leads.append((i, slope, v, exact))
    if not leads:
        raise HypothesisViolated("need n_0 >= 2 or n_i >= 1 for some i")
    for i, slope, v, exact in leads:
        if exact and v < w:
            raise HypothesisViolated(f"direction {i}: leading coefficient exceeds ω (not solvable)")
    eps_slopes = [slope for i, slope, v, exact in leads if exact and v == w]
    if eps_slopes:
        top = max(eps_slopes)
        pieces = []
        for i, slope, v, exact in leads:
            if exact:
                pieces.append((Fraction(slope), v + lw))
            elif slope > top:
                raise InexactLeading(f"direction {i}: bounded leading term could bind")
        T = LogAffine(tuple(pieces), "min", None, Fraction(0))
        return RadiusAtZero(T, int(top), True)
    if any(not exact for *_, exact in leads):
        raise InexactLeading("no leading coefficient of absolute value ω, and some are only bounded")
    T = LogAffine(tuple((Fraction(s), v + lw) for _, s, v, _ in leads), "min", None, Fraction(0))
    return RadiusAtZero(T, None, False)


def _involves(c, i) -> bool:
    return any(e[i - 1] for e in c.num) or any(e[i - 1] for e in c.den)


def rank_one_profile(cm: CoMonomial) -> RankOneProfile:
    """Valuation profile of the connection attached to a pure co-monomial λ t^{-n p^m}.

    The d/dT coefficient at T^{-n p^j - 1} is -n π_{m-j} φ_j, of valuation
    1/(p^{m-j}(p-1)) + min{k <= j : λ_k != 0}.  The d/du_i coefficient at
    T^{-n p^j} is π_{m-j} E_j with E_j = Σ_{k<=j} λ_k^(p^(j-k)-1) ∂_i λ_k; it
    is exact when E_j does not vanish mod p, absent when no λ_0..λ_j involves
    u_i, and otherwise bounded below by one more unit.
    """
    lam, p, m, n = cm.witt, cm.p, cm.m, cm.n
    if not cm.is_pure():
        raise NotPure("the co-monomial must be nonzero and outside pW")
    K = lam.zero.K
    g0 = {}
    first = next((k for k, c in enumerate(lam.coords) if c), None)
    for j in range(m + 1):
        if first is not None and first <= j:
            g0[-n * p ** j - 1] = (Fraction(1, p ** (m - j) * (p - 1)) + first, True)
    dirs = {0: ValuedLaurent(g0)}
    for i in range(1, K.r + 1):
        gi = {}
        for j in range(m + 1):
            head = WittVector(lam.coords[:j + 1], p, lam.zero)
            base = Fraction(1, p ** (m - j) * (p - 1))
            if reduced_phantom_derivative(head, i):
                gi[-n * p ** j] = (base, True)
            elif any(_involves(c, i) for c in head.coords):
                # a lift free of u_i has derivative exactly zero; otherwise only a bound is known
                gi[-n * p ** j] = (base + 1, False)
        if gi:
            dirs[i] = ValuedLaurent(gi)
    return RankOneProfile(p, dirs)


def diff_swan(c: Character) -> int:
    best = 0
    for cm in c.comonomials():
        res = radius_at_zero(rank_one_profile(cm))
        if res.sw_nabla is None:
            raise InvariantFailure("a character profile lacks a leading coefficient of size ω")
        best = max(best, res.sw_nabla)
    return best


def radius_function(c: Character) -> LogAffine:
    """T(M, ρ) for the whole character: the minimum over its pure co-monomials."""
    pieces = []
    for cm in c.comonomials():
        pieces.extend(radius_at_zero(rank_one_profile(cm)).T.pieces)
    if not pieces:
        pieces = [(Fraction(0), Fraction(0))]
    return LogAffine(tuple(pieces), "min", None, Fraction(0))


@dataclass(frozen=True)
class Comparison:
    sw: int
    sw_nabla: int

    @property
    def equal(self):
        return self.sw == self.sw_nabla

    def to_json(self):
        return {"sw": self.sw, "sw_nabla": self.sw_nabla, "equal": self.equal}


def compare_conductors(c: Character) -> Comparison:
    from .covectors import swan_conductor
    return Comparison(swan_conductor(c), diff_swan(c))
