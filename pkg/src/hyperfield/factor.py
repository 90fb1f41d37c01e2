"""Factorization: degree partitions mod p, Zassenhaus over Q, rational roots.

factor_mod_p is the Dedekind sampler (partition of factor degrees mod a
good prime = Frobenius cycle type). factor_over_q is classical
Zassenhaus: factor mod a good odd prime, Hensel-lift past the
Landau-Mignotte bound, recombine subsets. The degree cap (default 12)
keeps subset recombination at <= 2^11 subsets.
"""
from __future__ import annotations

import math
import random

from . import _kernels as kernels
from .errors import BadPrime, DegreeCapExceeded, ZeroInput
from .intpoly import IntPolynomial, discriminant, poly_gcd

DEFAULT_DEGREE_CAP = 12

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


def primes_from(start: int):
    """Ascending primes >= start."""
    p = start - 1
    while True:
        p = next_prime(p)
        yield p


def good_primes(p: IntPolynomial, count: int, start: int = 2) -> list[int]:
    """First `count` primes q >= start with q not dividing lc(p)*Disc(p)."""
    bad = abs(p.lc) * abs(discriminant(p))
    if bad == 0:
        raise ValueError("polynomial is not squarefree; no good primes exist")
    out = []
    for q in primes_from(start):
        if bad % q:
            out.append(q)
            if len(out) == count:
                return out


def factor_mod_p(p: IntPolynomial, q: int) -> tuple[int, ...]:
    """Degree partition (descending) of the irreducible factors of p mod q.

    When q is good (q prime, q not dividing lc(p) or Disc(p)) this is the
    cycle type of Frobenius at q in Gal(p/Q) by Dedekind's theorem.
    """
    if not is_prime(q):
        raise BadPrime(f"{q} is not prime")
    if p.degree < 1:
        raise ValueError("factor_mod_p requires degree >= 1")
    if p.lc % q == 0:
        raise BadPrime(f"{q} divides the leading coefficient")
    if discriminant(p) % q == 0:
        raise BadPrime(f"{q} divides the discriminant")
    return tuple(kernels.ddf_degrees(p.coeffs, q))


# -- squarefree decomposition (Yun) ----------------------------------------


def squarefree_decomposition(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm on a primitive f with positive lc: f = prod A_i^i."""
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b, r = f.divmod_exact(a)
    assert r.is_zero()
    c, r = df.divmod_exact(a)
    assert r.is_zero()
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        ai = poly_gcd(b, d)
        if ai.degree > 0:
            out.append((ai, i))
        b, r = b.divmod_exact(ai)
        assert r.is_zero()
        c, r = d.divmod_exact(ai)
        assert r.is_zero()
        d = c - b.derivative()
        i += 1
    return out


# -- factorization mod p (full, for Zassenhaus) ------------------------------


def _factor_mod_full(coeffs, q: int, rng: random.Random) -> list[list[int]]:
    """Monic irreducible factors of coeffs mod q (squarefree mod q, q odd)."""
    from ._kernels.pure import (
        _exact_div_mod,
        _gcd_mod,
        _monic,
        _pow_mod,
        _prep,
        _rem_mod,
        _trim,
    )

    f = _prep(coeffs, q)
    n = len(f) - 1
    factors: list[list[int]] = []
    # Distinct-degree stage.
    stages: list[tuple[list[int], int]] = []
    h = _rem_mod([0, 1], f, q)
    k = 0
    fs = f
    while len(fs) - 1 >= 2 * (k + 1):
        k += 1
        h = _pow_mod(h, q, fs, q)
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % q
        g = _gcd_mod(_trim(hx), fs, q)
        if len(g) > 1:
            stages.append((g, k))
            fs = _exact_div_mod(fs, g, q)
            h = _rem_mod(h, fs, q)
    if len(fs) > 1:
        stages.append((fs, len(fs) - 1))
    # Equal-degree (Cantor-Zassenhaus) stage.
    for block, d in stages:
        work = [block]
        while work:
            w = work.pop()
            if len(w) - 1 == d:
                factors.append(w)
                continue
            e = (q**d - 1) // 2
            while True:
                r = [rng.randrange(q) for _ in range(len(w) - 1)]
                r = _trim(r)
                if not r:
                    continue
                g = _gcd_mod(r, w, q)
                if 0 < len(g) - 1 < len(w) - 1:
                    break
                rp = _pow_mod(r, e, w, q)
                rp = list(rp) + [0] * max(0, 1 - len(rp))
                rp[0] = (rp[0] - 1) % q
                g = _gcd_mod(_trim(rp), w, q)
                if 0 < len(g) - 1 < len(w) - 1:
                    break
            work.append(g)
            work.append(_exact_div_mod(w, _monic(g, q), q))
    factors.sort(key=lambda v: (len(v), v))
    return factors


# -- Hensel lifting -----------------------------------------------------------


def _poly_mod(a: list[int], m: int) -> list[int]:
    out = [c % m for c in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def _mul_m(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _add_m(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _sub_m(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % m
    while out and out[-1] == 0:
        out.pop()
    return out


def _divmod_monic_m(a, h, m):
    """divmod by monic h, coefficients mod m."""
    r = list(a)
    dh = len(h) - 1
    q = [0] * max(0, len(r) - dh)
    while len(r) - 1 >= dh:
        t = r[-1]
        shift = len(r) - 1 - dh
        q[shift] = t
        if t:
            for i in range(dh):
                r[shift + i] = (r[shift + i] - t * h[i]) % m
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    while q and q[-1] == 0:
        q.pop()
    return q, r


def _bezout_mod(g, h, q):
    """s, t with s*g + t*h = 1 mod q, deg s < deg h, deg t < deg g."""
    from ._kernels.pure import _monic, _trim

    r0, r1 = list(g), list(h)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        lead = pow(r1[-1], -1, q)
        r1m = [(c * lead) % q for c in r1]
        qq, rr = _divmod_monic_m(r0, r1m, q)
        qq = [(c * lead) % q for c in qq]
        r0, r1 = r1, _trim(rr)
        s0, s1 = s1, _sub_m(s0, _mul_m(qq, s1, q), q)
        t0, t1 = t1, _sub_m(t0, _mul_m(qq, t1, q), q)
    if len(r0) != 1:
        raise ValueError("factors not coprime mod q")
    inv = pow(r0[-1], -1, q)
    # Extended Euclid already gives deg s < deg h, deg t < deg g.
    s = [(c * inv) % q for c in s0]
    t = [(c * inv) % q for c in t0]
    return s, t


def _hensel_step(f, g, h, s, t, m, cap):
    """One quadratic lift from modulus m to min(m*m, cap).

    Invariants: f = g*h, s*g + t*h = 1 (mod m), h monic,
    deg s < deg h, deg t < deg g. Returns (g, h, s, t, new_modulus).
    """
    m2 = min(m * m, cap)
    fm = _poly_mod(f, m2)
    e = _sub_m(fm, _mul_m(g, h, m2), m2)
    qq, r = _divmod_monic_m(_mul_m(s, e, m2), h, m2)
    g1 = _add_m(g, _add_m(_mul_m(t, e, m2), _mul_m(qq, g, m2), m2), m2)
    h1 = _add_m(h, r, m2)
    b = _sub_m(_add_m(_mul_m(s, g1, m2), _mul_m(t, h1, m2), m2), [1], m2)
    cc, d = _divmod_monic_m(_mul_m(s, b, m2), h1, m2)
    s1 = _sub_m(s, d, m2)
    t1 = _sub_m(t, _add_m(_mul_m(t, b, m2), _mul_m(cc, g1, m2), m2), m2)
    return g1, h1, s1, t1, m2


def hensel_lift_factors(f_coeffs: list[int], mod_factors: list[list[int]], q: int, target: int) -> list[list[int]]:
    """Lift monic factors of f mod q to mod q^K = target (f = lc * prod, mod q).

    Peels one factor at a time: lift (rest-with-lc, first) as a pair to
    full precision, recurse on the rest.
    """
    lc = f_coeffs[-1]
    if len(mod_factors) == 1:
        inv = pow(lc % target, -1, target)
        out = _poly_mod([c * inv for c in f_coeffs], target)
        return [out]
    h = mod_factors[0]
    g = [lc % q]
    for u in mod_factors[1:]:
        g = _mul_m(g, u, q)
    s, t = _bezout_mod(g, h, q)
    m = q
    while m < target:
        g, h, s, t, m = _hensel_step(f_coeffs, g, h, s, t, m, target)
    rest = hensel_lift_factors(g, mod_factors[1:], q, target)
    return [h] + rest


# -- Zassenhaus ---------------------------------------------------------------


def _center(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _mignotte_modulus(g: IntPolynomial, q: int) -> int:
    norm2 = math.isqrt(sum(c * c for c in g.coeffs)) + 1
    bound = 2 ** g.degree * norm2 * abs(g.lc)
    target = q
    while target <= 2 * bound:
        target *= q
    return target


def _factor_squarefree(g: IntPolynomial) -> list[IntPolynomial]:
    """Irreducible factors of a primitive squarefree g with lc > 0."""
    if g.degree <= 1:
        return [g]
    rng = random.Random(hash(g.coeffs) & 0xFFFFFFFF)
    disc = discriminant(g)
    candidates = []
    for q in primes_from(3):
        if g.lc % q == 0 or disc % q == 0:
            continue
        candidates.append(q)
        if len(candidates) == 3:
            break
    best_q, best_factors = None, None
    for q in candidates:
        fs = _factor_mod_full(g.coeffs, q, rng)
        if best_factors is None or len(fs) < len(best_factors):
            best_q, best_factors = q, fs
        if len(best_factors) == 1:
            break
    if len(best_factors) == 1:
        return [g]
    q = best_q
    target = _mignotte_modulus(g, q)
    lifted = hensel_lift_factors(list(g.coeffs), best_factors, q, target)

    result: list[IntPolynomial] = []
    remaining = list(range(len(lifted)))
    cur = g
    size = 1
    import itertools

    while 2 * size <= len(remaining):
        found = False
        for combo in itertools.combinations(remaining, size):
            prod = [cur.lc % target]
            for i in combo:
                prod = _mul_m(prod, lifted[i], target)
            cand = IntPolynomial([_center(c, target) for c in prod]).primitive()
            if cand.degree < 1:
                continue
            if cand.divides(cur):
                result.append(cand if cand.lc > 0 else -cand)
                cur, _ = cur.divmod_exact(cand if cand.lc > 0 else -cand)
                remaining = [i for i in remaining if i not in combo]
                found = True
                break
        if not found:
            size += 1
    if cur.degree > 0:
        result.append(cur if cur.lc > 0 else -cur)
    result.sort(key=lambda p: (p.degree, p.coeffs))
    return result


def factor_over_q(p: IntPolynomial, cap: int = DEFAULT_DEGREE_CAP) -> list[IntPolynomial]:
    """Complete factorization over Q into primitive irreducible factors.

    Content (with sign) is returned as a leading degree-0 polynomial when
    it is not 1, so the product of the returned list equals p exactly.
    Repeated factors are repeated in the list.
    """
    if p.is_zero():
        raise ZeroInput("cannot factor the zero polynomial")
    if p.degree > cap:
        raise DegreeCapExceeded(f"degree {p.degree} above factorization cap {cap}")
    content = p.content()
    prim = p.primitive()
    factors: list[IntPolynomial] = []
    if prim.degree >= 1:
        for part, mult in squarefree_decomposition(prim):
            for irr in _factor_squarefree(part):
                factors.extend([irr] * mult)
    factors.sort(key=lambda f: (f.degree, f.coeffs))
    if content != 1:
        factors.insert(0, IntPolynomial((content,)))
    if not factors:
        factors = [IntPolynomial((1,))]
    return factors


def is_irreducible(p: IntPolynomial, cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """True iff p is irreducible over Q (degree >= 1; content ignored)."""
    if p.degree < 1:
        return False
    prim = p.primitive()
    fs = factor_over_q(prim, cap=cap)
    return len(fs) == 1


# -- rational roots (used by the exact isomorphism test) ---------------------


def rational_roots(p: IntPolynomial):
    """All rational roots of p, as Fractions, via mod-p roots + Hensel.

    Avoids factoring huge constants: every rational root a/b reduces to a
    root mod q, is lifted to q^K past the Mignotte bound for linear
    factors, and the candidate b*x - a is verified by exact division.
    """
    from fractions import Fraction

    if p.is_zero():
        raise ZeroInput("zero polynomial")
    roots = []
    coeffs = list(p.primitive().coeffs)
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    if shift:
        roots.append(Fraction(0))
    g = IntPolynomial(coeffs)
    if g.degree < 1:
        return roots
    # Work with the squarefree part; roots are the same set.
    sf, _ = g.divmod_exact(poly_gcd(g, g.derivative()))
    disc = discriminant(sf)
    q = 3
    while sf.lc % q == 0 or disc % q == 0:
        q = next_prime(q)
    target = _mignotte_modulus(sf, q)
    for r in kernels.roots_mod_p(sf.coeffs, q):
        # Lift the pair (sf/(x-r), x-r) and test the centered linear factor.
        h = [(-r) % q, 1]
        fs = [h]
        gg = _divmod_monic_m([c % q for c in sf.coeffs], h, q)[0]
        gg = _mul_m(gg, [pow(sf.lc, -1, q)], q)  # monic cofactor mod q
        lifted = hensel_lift_factors(list(sf.coeffs), [h, gg], q, target)
        lin = lifted[0]
        cand = IntPolynomial([_center(c, target) for c in _mul_m([sf.lc % target], lin, target)]).primitive()
        if cand.degree == 1 and cand.divides(sf):
            roots.append(Fraction(-cand[0], cand[1]))
    roots.sort()
    return roots
