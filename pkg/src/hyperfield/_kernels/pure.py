"""Pure-Python mod-p polynomial kernels.

Same contract as the compiled backend in ``_speed.pyx``; polynomials are
lists of ints ascending in degree, primes fit a machine word. These
routines are the hot path of the census (irreducibility screening and
splitting-type fingerprints), so they stay allocation-light.
"""
from __future__ import annotations

BACKEND = "pure"


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _reduce(coeffs, p: int) -> list[int]:
    return _trim([c % p for c in coeffs])


def _mul_mod(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def _rem_mod(a: list[int], f: list[int], p: int) -> list[int]:
    """a mod f, with f monic."""
    r = list(a)
    df = len(f) - 1
    while len(r) - 1 >= df:
        t = r[-1]
        if t:
            shift = len(r) - 1 - df
            for i in range(df):
                r[shift + i] = (r[shift + i] - t * f[i]) % p
        r.pop()
        _trim(r)
        if not r:
            break
    return r

def _monic(a: list[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def _gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        b = _monic(b, p)
        a, b = b, _rem_mod(a, b, p)
    return _monic(a, p)


def _pow_mod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    """a^e mod (f, p), f monic."""
    out = [1]
    base = _rem_mod(a, f, p)
    while e:
        if e & 1:
            out = _rem_mod(_mul_mod(out, base, p), f, p)
        base = _rem_mod(_mul_mod(base, base, p), f, p)
        e >>= 1
    return out


def _deriv_mod(a: list[int], p: int) -> list[int]:
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def _prep(coeffs, p: int) -> list[int]:
    if p < 2:
        raise ValueError("modulus must be a prime >= 2")
    f = [c % p for c in coeffs]
    if not f or f[-1] == 0:
        raise ValueError("leading coefficient divisible by p")
    return _monic(f, p)


def ddf_degrees(coeffs, p: int) -> list[int]:
    """Degrees of the irreducible factors of coeffs mod p, descending.

    Requires p prime, p not dividing the leading coefficient, and the
    reduction squarefree mod p (checked; raises ValueError otherwise).
    Distinct-degree factorization: iterated gcd(x^(p^k) - x, f).
    """
    f = _prep(coeffs, p)
    if len(f) == 1:
        raise ValueError("constant polynomial mod p")
    if _gcd_mod(f, _deriv_mod(f, p), p) != [1]:
        raise ValueError("not squarefree mod p")
    degs: list[int] = []
    h = _rem_mod([0, 1], f, p)
    k = 0
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = _pow_mod(h, p, f, p)
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        g = _gcd_mod(_trim(hx), f, p)
        if len(g) > 1:
            d = len(g) - 1
            degs.extend([k] * (d // k))
            f = _exact_div_mod(f, g, p)
            h = _rem_mod(h, f, p)
    if len(f) > 1:
        degs.append(len(f) - 1)
    degs.sort(reverse=True)
    return degs


def _exact_div_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """a / b mod p for monic b dividing a exactly."""
    r = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    while len(r) - 1 >= db:
        t = r[-1]
        shift = len(r) - 1 - db
        q[shift] = t
        if t:
            for i in range(db):
                r[shift + i] = (r[shift + i] - t * b[i]) % p
        r.pop()
        _trim(r)
        if not r:
            break
    return q


def irreducible_mod_p(coeffs, p: int) -> bool:
    """Rabin irreducibility test mod p (no squarefreeness precondition).

    f of degree n is irreducible iff x^(p^n) == x mod f and
    gcd(x^(p^(n/q)) - x, f) = 1 for every prime q | n.
    """
    f = _prep(coeffs, p)
    n = len(f) - 1
    if n == 0:
        raise ValueError("constant polynomial mod p")
    if n == 1:
        return True
    qs = _prime_divisors(n)
    # frob[k] = x^(p^k) mod f, built by iterated Frobenius.
    h = _rem_mod([0, 1], f, p)
    frob = [h]
    for _ in range(n):
        frob.append(_pow_mod(frob[-1], p, f, p))
    for q in qs:
        hx = list(frob[n // q]) + [0] * max(0, 2 - len(frob[n // q]))
        hx[1] = (hx[1] - 1) % p
        if _gcd_mod(_trim(list(hx)), f, p) != [1]:
            return False
    top = list(frob[n]) + [0] * max(0, 2 - len(frob[n]))
    top[1] = (top[1] - 1) % p
    return not _trim(list(top))


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def roots_mod_p(coeffs, p: int) -> list[int]:
    """Sorted roots of coeffs mod p (each once, ignoring multiplicity)."""
    f = _prep(coeffs, p)
    # Restrict to the split part gcd(x^p - x, f) before scanning.
    xp = _pow_mod([0, 1], p, f, p)
    xp = list(xp) + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = _gcd_mod(_trim(list(xp)), f, p)
    if len(g) <= 1:
        return []
    out = []
    for r in range(p):
        acc = 0
        for c in reversed(g):
            acc = (acc * r + c) % p
        if acc == 0:
            out.append(r)
            if len(out) == len(g) - 1:
                break
    return out
