"""Sparse multivariate polynomials over a finite field: exact division and GCD.

A polynomial is a dict {exponent tuple: nonzero coefficient}.  The GCD is the
recursive primitive polynomial remainder sequence: view the polynomial as
univariate in its last active variable over the polynomial ring in the others,
split off contents recursively and run pseudo-remainders on primitive parts.
"""

from __future__ import annotations

from .errors import DivisionByZero, NotDivisible


def order_key(e):
    # lex order with the last variable most significant
    return e[::-1]


def lead(a):
    e = max(a, key=order_key)
    return e, a[e]


def one(nvars, F):
    return {(0,) * nvars: F.one}


def is_constant(a):
    return len(a) == 1 and not any(next(iter(a)))


def monic(a, F):
    if not a:
        return a
    _, c = lead(a)
    if c == F.one:
        return a
    return F.pscale(a, F.inv(c))


def degree_in(a, v):
    return max((e[v] for e in a), default=-1)


def coeff_in(a, v, k):
    """Coefficient of x_v^k, as a polynomial with x_v-exponent zero."""
    out = {}
    for e, c in a.items():
        if e[v] == k:
            out[e[:v] + (0,) + e[v + 1:]] = c
    return out


def shift_var(a, v, k):
    return {e[:v] + (e[v] + k,) + e[v + 1:]: c for e, c in a.items()}


def divide_exact(a, b, F):
    """Return q with a = q*b; raise NotDivisible when b does not divide a."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if not a:
        return {}
    if len(b) == 1:
        (eb, cb), = b.items()
        inv = F.inv(cb)
        out = {}
        for e, c in a.items():
            d = tuple(x - y for x, y in zip(e, eb))
            if min(d) < 0:
                raise NotDivisible("monomial does not divide polynomial")
            out[d] = F.mul(c, inv)
        return out
    eb, cb = lead(b)
    inv = F.inv(cb)
    q = {}
    r = dict(a)
    while r:
        er, cr = lead(r)
        d = tuple(x - y for x, y in zip(er, eb))
        if min(d) < 0:
            raise NotDivisible("polynomial does not divide exactly")
        c = F.mul(cr, inv)
        q[d] = c
        r = F.padd(r, F.pmonomial_mul(b, d, F.neg(c)))
    return q


def _monomial_gcd(a, b):
    it = iter(a)
    g = list(next(it))
    for src in (it, iter(b)):
        for e in src:
            g = [min(x, y) for x, y in zip(g, e)]
    return tuple(g)


def gcd(a, b, F):
    """Monic greatest common divisor (gcd(0, 0) = 0)."""
    if not a:
        return monic(b, F)
    if not b:
        return monic(a, F)
    if len(a) == 1 or len(b) == 1:
        return {_monomial_gcd(a, b): F.one}
    if a == b:
        return monic(a, F)
    nv = len(next(iter(a)))
    v = max((i for i in range(nv) if degree_in(a, i) > 0 or degree_in(b, i) > 0), default=None)
    if v is None:
        return one(nv, F)
    if degree_in(a, v) <= 0:
        return gcd(a, content_in(b, v, F), F)
    if degree_in(b, v) <= 0:
        return gcd(content_in(a, v, F), b, F)
    ca = content_in(a, v, F)
    cb = content_in(b, v, F)
    c = gcd(ca, cb, F)
    A = divide_exact(a, ca, F)
    B = divide_exact(b, cb, F)
    if degree_in(A, v) < degree_in(B, v):
        A, B = B, A
    while True:
        R = prem(A, B, v, F)
        if not R:
            break
        if degree_in(R, v) == 0:
            B = one(nv, F)
            break
        A, B = B, primitive_part(R, v, F)
    return monic(F.pmul(c, primitive_part(B, v, F)), F)


def content_in(a, v, F):
    """gcd of the coefficients of a viewed as a polynomial in x_v."""
    g = {}
    for k in sorted({e[v] for e in a}):
        g = gcd(g, coeff_in(a, v, k), F)
        if is_constant(g):
            return g
    return g


def primitive_part(a, v, F):
    return divide_exact(a, content_in(a, v, F), F)


def prem(A, B, v, F):
    """Pseudo-remainder of A by B with respect to x_v."""
    dB = degree_in(B, v)
    lcB = coeff_in(B, v, dB)
    R = A
    while R:
        dR = degree_in(R, v)
        if dR < dB:
            break
        lcR = coeff_in(R, v, dR)
        R = F.psub(F.pmul(lcB, R), shift_var(F.pmul(lcR, B), v, dR - dB))
    return R


def derivative(a, i, F):
    out = {}
    for e, c in a.items():
        k = e[i] % F.p if F.char else e[i]
        if k:
            v = F.mul(c, F.from_int(k))
            if v:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = v
    return out
