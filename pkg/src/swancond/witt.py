"""Truncated Witt vectors W_m(R) with arithmetic by universal polynomials.

The sum, product and negation polynomials are produced from the ghost-map
recursion over the integers, reduced mod p for characteristic-p domains, and
memoised both in memory and on disk (see :func:`universal_polys`).

Coordinates may be any ring elements supporting ``+``, ``*``, ``**`` and
multiplication by Python integers: :class:`~swancond.kfield.KElem`,
:class:`~swancond.kfield.LaurentK`, or integer lifts
(:class:`~swancond.lifts.ZPoly`) for ghost-component oracles.
"""

from __future__ import annotations

import logging
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

from .errors import BoundExceeded, InputError, LengthMismatch, NotDivisible
from .fields import ZZ, is_prime

log = logging.getLogger(__name__)

CACHE_VERSION = 1
_HEADER = f"# swancond universal Witt polynomials, format {CACHE_VERSION}"

_bound_overrides: dict[int, int] = {}


def length_bound(p: int) -> int:
    """Largest index m allowed for W_m over characteristic p."""
    if p in _bound_overrides:
        return _bound_overrides[p]
    return 3 if p <= 3 else 2


def set_length_bound(p: int, m: int) -> None:
    _bound_overrides[p] = m


@dataclass(frozen=True)
class UniversalPolys:
    """Sum, product and negation polynomials for W_m in characteristic p.

    ``S[n]`` and ``P[n]`` are integer polynomials in the interleaved variables
    (X_0, Y_0, X_1, Y_1, ..., X_m, Y_m); ``N[n]`` is in (X_0, ..., X_m).
    The ``*_mod_p`` lists hold (coefficient mod p, exponents) pairs.
    """

    p: int
    m: int
    S: tuple
    P: tuple
    N: tuple

    def __post_init__(self):
        red = lambda polys: tuple(
            tuple((c % self.p, e) for e, c in sorted(poly.items()) if c % self.p) for poly in polys)
        object.__setattr__(self, "S_mod_p", red(self.S))
        object.__setattr__(self, "P_mod_p", red(self.P))
        object.__setattr__(self, "N_mod_p", red(self.N))
        as_terms = lambda polys: tuple(tuple((c, e) for e, c in sorted(poly.items())) for poly in polys)
        object.__setattr__(self, "S_terms", as_terms(self.S))
        object.__setattr__(self, "P_terms", as_terms(self.P))
        object.__setattr__(self, "N_terms", as_terms(self.N))


def _var(nv, i):
    e = [0] * nv
    e[i] = 1
    return {tuple(e): 1}


def ghost_poly(Z, n, p):
    """w_n(Z) = sum_i p^i Z_i^(p^(n-i)) for a list of integer polynomials Z."""
    out = {}
    for i in range(n + 1):
        if Z[i]:
            out = ZZ.padd(out, ZZ.pscale(ZZ.ppow(Z[i], p ** (n - i)), p ** i))
    return out


def _solve_ghost(target, previous, n, p):
    acc = target
    for i, prev in enumerate(previous):
        acc = ZZ.psub(acc, ZZ.pscale(ZZ.ppow(prev, p ** (n - i)), p ** i))
    d = p ** n
    out = {}
    for e, c in acc.items():
        q, r = divmod(c, d)
        if r:
            raise AssertionError("ghost recursion produced a non-integral coefficient")
        if q:
            out[e] = q
    return out


def compute_universal_polys(p: int, m: int) -> UniversalPolys:
    nv = 2 * (m + 1)
    X = [_var(nv, 2 * i) for i in range(m + 1)]
    Y = [_var(nv, 2 * i + 1) for i in range(m + 1)]
    Z = [_var(m + 1, i) for i in range(m + 1)]
    S, P, N = [], [], []
    for n in range(m + 1):
        wx, wy = ghost_poly(X, n, p), ghost_poly(Y, n, p)
        S.append(_solve_ghost(ZZ.padd(wx, wy), S, n, p))
        P.append(_solve_ghost(ZZ.pmul(wx, wy), P, n, p))
        N.append(_solve_ghost(ZZ.pneg(ghost_poly(Z, n, p)), N, n, p))
    return UniversalPolys(p, m, tuple(S), tuple(P), tuple(N))


# --- disk cache ------------------------------------------------------------------

def cache_dir() -> Path:
    env = os.environ.get("CONDUCTOR_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "swancond"


def _cache_file(p, m):
    return cache_dir() / f"witt_polys_v{CACHE_VERSION}_p{p}_m{m}.txt"


def _format_poly(p, m, kind, n, poly):
    terms = "; ".join(f"{c} {','.join(map(str, e))}" for e, c in sorted(poly.items()))
    return f"{p} {m} {kind} {n} : {terms}"


def dump_cache_text(entry: UniversalPolys) -> str:
    lines = [_HEADER]
    for kind, polys in (("S", entry.S), ("P", entry.P), ("N", entry.N)):
        for n, poly in enumerate(polys):
            lines.append(_format_poly(entry.p, entry.m, kind, n, poly))
    return "\n".join(lines) + "\n"


def load_cache_text(text: str, p: int, m: int) -> UniversalPolys:
    lines = text.splitlines()
    if not lines or lines[0] != _HEADER:
        raise ValueError("cache header mismatch")
    found = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        head, _, body = line.partition(" : ")
        lp, lm, kind, n = head.split()
        if (int(lp), int(lm)) != (p, m) or kind not in "SPN":
            raise ValueError("cache entry for the wrong parameters")
        poly = {}
        for term in filter(None, (t.strip() for t in body.split(";"))):
            c, exps = term.split(" ")
            poly[tuple(int(x) for x in exps.split(","))] = int(c)
        found[kind, int(n)] = poly
    try:
        get = lambda kind: tuple(found[kind, n] for n in range(m + 1))
        return UniversalPolys(p, m, get("S"), get("P"), get("N"))
    except KeyError as exc:
        raise ValueError(f"cache is missing {exc}") from None


_memo: dict[tuple[int, int], UniversalPolys] = {}
_lock = threading.Lock()


def universal_polys(p: int, m: int, bound: int | None = None) -> UniversalPolys:
    """The (memoised) universal polynomials for W_m in characteristic p."""
    if not is_prime(p):
        raise InputError(f"p = {p} is not prime")
    limit = length_bound(p) if bound is None else bound
    if m > limit:
        raise BoundExceeded(f"Witt length index m = {m} exceeds the bound {limit} for p = {p}")
    key = (p, m)
    entry = _memo.get(key)
    if entry is not None:
        return entry
    with _lock:
        entry = _memo.get(key)
        if entry is None:
            entry = _load_or_compute(p, m)
            _memo[key] = entry
    return entry


def _load_or_compute(p, m):
    path = _cache_file(p, m)
    try:
        entry = load_cache_text(path.read_text(), p, m)
        _check_ghost_identities(entry)
        return entry
    except FileNotFoundError:
        pass
    except (ValueError, OSError, AssertionError) as exc:
        log.warning("ignoring unusable cache file %s: %s", path, exc)
    entry = compute_universal_polys(p, m)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(dump_cache_text(entry))
        os.replace(tmp, path)
    except OSError as exc:
        log.debug("could not write cache %s: %s", path, exc)
    return entry


def _check_ghost_identities(entry):
    """Cheap integrity check on loaded data: the top ghost identities."""
    p, m = entry.p, entry.m
    nv = 2 * (m + 1)
    X = [_var(nv, 2 * i) for i in range(m + 1)]
    Y = [_var(nv, 2 * i + 1) for i in range(m + 1)]
    if ghost_poly(list(entry.S), m, p) != ZZ.padd(ghost_poly(X, m, p), ghost_poly(Y, m, p)):
        raise AssertionError("cached sum polynomials fail the ghost identity")
    if ghost_poly(list(entry.P), m, p) != ZZ.pmul(ghost_poly(X, m, p), ghost_poly(Y, m, p)):
        raise AssertionError("cached product polynomials fail the ghost identity")


# --- evaluation --------------------------------------------------------------------

def _balanced_sum(items, zero):
    items = list(items)
    if not items:
        return zero
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def evaluate(terms, values, zero):
    """Evaluate sum c * prod values[v]^e_v; zero inputs short-circuit terms."""
    powers = {}
    parts = []
    for c, e in terms:
        prod = None
        for v, k in enumerate(e):
            if not k:
                continue
            x = values[v]
            if not x:
                prod = False
                break
            pw = powers.get((v, k))
            if pw is None:
                pw = x if k == 1 else x ** k
                powers[v, k] = pw
            prod = pw if prod is None else prod * pw
        if prod is False:
            continue
        if prod is None:
            raise AssertionError("universal polynomials have no constant term")
        parts.append(prod if c == 1 else prod * c)
    return _balanced_sum(parts, zero)


class WittVector:
    """(λ_0, ..., λ_m) in W_m(R); immutable.

    ``integral=True`` marks a characteristic-zero coefficient domain, for
    which the integer universal polynomials are used unreduced.
    """

    __slots__ = ("coords", "p", "zero", "integral")

    def __init__(self, coords, p: int, zero=None, integral: bool = False):
        coords = tuple(coords)
        if not coords:
            raise InputError("a Witt vector needs at least one coordinate")
        self.coords = coords
        self.p = p
        self.zero = coords[0] * 0 if zero is None else zero
        self.integral = integral

    @property
    def m(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __bool__(self):
        return any(bool(c) for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return self.p == other.p and self.coords == other.coords

    def __hash__(self):
        return hash((self.p, self.coords))

    def __repr__(self):
        return "W(" + ", ".join(str(c) for c in self.coords) + ")"

    def _like(self, coords):
        return WittVector(coords, self.p, self.zero, self.integral)

    def _check(self, other):
        if not isinstance(other, WittVector):
            raise TypeError("Witt arithmetic needs two Witt vectors")
        if len(other) != len(self):
            raise LengthMismatch(f"lengths {len(self)} and {len(other)} differ")
        if other.p != self.p or other.integral != self.integral:
            raise InputError("Witt vectors over different domains")

    def _polys(self):
        return universal_polys(self.p, self.m)

    def _interleave(self, other):
        vals = []
        for x, y in zip(self.coords, other.coords):
            vals.extend((x, y))
        return vals

    def __add__(self, other):
        self._check(other)
        if not other:
            return self
        if not self:
            return other
        U = self._polys()
        table = U.S_terms if self.integral else U.S_mod_p
        vals = self._interleave(other)
        return self._like(evaluate(t, vals, self.zero) for t in table)

    def __neg__(self):
        if self.p != 2:
            return self._like(-c for c in self.coords)
        U = self._polys()
        table = U.N_terms if self.integral else U.N_mod_p
        return self._like(evaluate(t, self.coords, self.zero) for t in table)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        U = self._polys()
        table = U.P_terms if self.integral else U.P_mod_p
        vals = self._interleave(other)
        return self._like(evaluate(t, vals, self.zero) for t in table)

    # --- structure maps --------------------------------------------------------------
    def verschiebung(self):
        return self._like((self.zero,) + self.coords)

    def frobenius_bar(self):
        if self.integral:
            return self._like(c ** self.p for c in self.coords)
        return self._like(c.frobenius() for c in self.coords)

    def times_p(self):
        return self.frobenius_bar().verschiebung()

    def pad_to(self, m: int):
        """Prefix zeros (iterated V) up to length index m."""
        if m < self.m:
            raise InputError("cannot shorten a Witt vector by padding")
        return self._like((self.zero,) * (m - self.m) + self.coords)

    # --- over k ----------------------------------------------------------------------------
    def in_pW(self) -> bool:
        return not self.coords[0] and all(c.in_kp() for c in self.coords[1:])

    def divide_by_p(self):
        if not self.in_pW():
            raise NotDivisible(f"{self} is not in pW")
        if self.m == 0:
            raise NotDivisible("pW_0 = 0 has no preimage of shorter length")
        return self._like(c.pth_root() for c in self.coords[1:])

    def canonical_mod_p(self):
        """Representative of self + pW_m(k) with coordinates j >= 1 in k'."""
        a = self
        for j in range(1, self.m + 1):
            c0 = a.coords[j].pbasis_expand()[(0,) * a.coords[j].K.r]
            if c0:
                e = [self.zero] * len(self)
                e[j] = c0
                a = a - self._like(e)
        return a

    # --- over LaurentK ---------------------------------------------------------------------------
    def kato_valuation(self):
        s, p = self.m, self.p
        return min((p ** (s - i) * c.t_valuation() for i, c in enumerate(self.coords) if c),
                   default=float("inf"))


def witt_add(a, b):
    return a + b


def witt_neg(a):
    return -a


def witt_mul(a, b):
    return a * b


def verschiebung(a):
    return a.verschiebung()


def frobenius_bar(a):
    return a.frobenius_bar()


def times_p(a):
    return a.times_p()


def in_pW(a):
    return a.in_pW()


def divide_by_p(a):
    return a.divide_by_p()


def kato_valuation(a):
    return a.kato_valuation()


def canonical_mod_p(a):
    return a.canonical_mod_p()


def ghost_components(a: WittVector):
    """Phantom components φ_j = Σ_{k<=j} p^k λ_k^(p^(j-k)) over a char-0 domain."""
    if not a.integral:
        raise InputError("ghost components need a characteristic-zero lift")
    p = a.p
    out = []
    for j in range(len(a)):
        terms = [a.coords[k] ** (p ** (j - k)) * (p ** k) for k in range(j + 1) if a.coords[k]]
        out.append(_balanced_sum(terms, a.zero))
    return out
