# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled mod-p polynomial kernels; contract identical to pure.py.

Coefficients live in C int64 buffers; p must fit 31 bits so products
stay inside int64 before reduction.
"""
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

ctypedef long long i64

BACKEND = "cython"


cdef inline int _trim(i64 *a, int n) noexcept:
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


cdef i64 _inv_mod(i64 a, i64 p) noexcept:
    cdef i64 t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr != 0:
        q = r / nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef int _mul_mod(i64 *a, int la, i64 *b, int lb, i64 *out, i64 p) noexcept:
    cdef int i, j, n
    if la == 0 or lb == 0:
        return 0
    n = la + lb - 1
    memset(out, 0, n * sizeof(i64))
    for i in range(la):
        if a[i]:
            for j in range(lb):
                out[i + j] = (out[i + j] + a[i] * b[j]) % p
    return _trim(out, n)


cdef int _rem_mod(i64 *r, int lr, i64 *f, int lf, i64 p) noexcept:
    """r mod f in place, f monic. Returns new length."""
    cdef int df = lf - 1, shift, i
    cdef i64 t
    lr = _trim(r, lr)
    while lr - 1 >= df:
        t = r[lr - 1]
        if t:
            shift = lr - 1 - df
            for i in range(df):
                r[shift + i] = (r[shift + i] - t * f[i]) % p
                if r[shift + i] < 0:
                    r[shift + i] += p
        lr = _trim(r, lr - 1)
    return lr


cdef int _make_monic(i64 *a, int n, i64 p) noexcept:
    cdef i64 inv
    cdef int i
    if n == 0 or a[n - 1] == 1:
        return n
    inv = _inv_mod(a[n - 1], p)
    for i in range(n):
        a[i] = (a[i] * inv) % p
    return n


cdef int _gcd_mod(i64 *a, int la, i64 *b, int lb, i64 *out, i64 p) noexcept:
    """gcd into out (monic); out buffer >= max(la, lb)."""
    cdef i64 *x = <i64 *> malloc(max(la, lb) * sizeof(i64))
    cdef i64 *y = <i64 *> malloc(max(la, lb) * sizeof(i64))
    cdef i64 *tmp
    cdef int lx = la, ly = lb, n
    memcpy(x, a, la * sizeof(i64))
    memcpy(y, b, lb * sizeof(i64))
    while ly:
        ly = _make_monic(y, ly, p)
        lx = _rem_mod(x, lx, y, ly, p)
        tmp = x
        x = y
        y = tmp
        n = lx
        lx = ly
        ly = n
    lx = _make_monic(x, lx, p)
    memcpy(out, x, lx * sizeof(i64))
    free(x)
    free(y)
    return lx


cdef int _pow_mod(i64 *a, int la, i64 e, i64 *f, int lf, i64 *out, i64 p) noexcept:
    """a^e mod (f, p) into out; f monic; out buffer >= lf - 1."""
    cdef int n = lf - 1
    cdef i64 *base = <i64 *> malloc(2 * lf * sizeof(i64))
    cdef i64 *acc = <i64 *> malloc(2 * lf * sizeof(i64))
    cdef i64 *work = <i64 *> malloc(4 * lf * sizeof(i64))
    cdef int lbase, lacc, lw
    memcpy(base, a, la * sizeof(i64))
    lbase = _rem_mod(base, la, f, lf, p)
    acc[0] = 1
    lacc = 1
    while e:
        if e & 1:
            lw = _mul_mod(acc, lacc, base, lbase, work, p)
            lw = _rem_mod(work, lw, f, lf, p)
            memcpy(acc, work, lw * sizeof(i64))
            lacc = lw
        e >>= 1
        if e:
            lw = _mul_mod(base, lbase, base, lbase, work, p)
            lw = _rem_mod(work, lw, f, lf, p)
            memcpy(base, work, lw * sizeof(i64))
            lbase = lw
    memcpy(out, acc, lacc * sizeof(i64))
    free(base)
    free(acc)
    free(work)
    return lacc


cdef int _exact_div(i64 *a, int la, i64 *b, int lb, i64 *q, i64 p) noexcept:
    """a / b for monic b dividing a; quotient into q. Returns len."""
    cdef i64 *r = <i64 *> malloc(la * sizeof(i64))
    cdef int lr = la, db = lb - 1, lq = la - db, shift, i
    cdef i64 t
    memcpy(r, a, la * sizeof(i64))
    memset(q, 0, lq * sizeof(i64))
    while lr - 1 >= db:
        t = r[lr - 1]
        shift = lr - 1 - db
        q[shift] = t
        if t:
            for i in range(db):
                r[shift + i] = (r[shift + i] - t * b[i]) % p
                if r[shift + i] < 0:
                    r[shift + i] += p
        lr = _trim(r, lr - 1)
    free(r)
    return _trim(q, lq)


cdef int _prep(object coeffs, i64 p, i64 **buf) except -1:
    """Reduce mod p, validate, make monic; allocates *buf."""
    cdef int n = len(coeffs), i
    cdef i64 *a
    if p < 2:
        raise ValueError("modulus must be a prime >= 2")
    if p >= (<i64> 1) << 31:
        raise ValueError("prime too large for the compiled kernel")
    a = <i64 *> malloc(n * sizeof(i64))
    for i in range(n):
        a[i] = <i64> (coeffs[i] % p)
        if a[i] < 0:
            a[i] += p
    if n == 0 or a[n - 1] == 0:
        free(a)
        raise ValueError("leading coefficient divisible by p")
    n = _make_monic(a, n, p)
    buf[0] = a
    return n


cdef int _deriv(i64 *a, int n, i64 *out, i64 p) noexcept:
    cdef int i
    for i in range(1, n):
        out[i - 1] = (a[i] * i) % p
    return _trim(out, n - 1)


def ddf_degrees(coeffs, p):
    """Degrees of the irreducible factors mod p, descending; squarefree input."""
    cdef i64 pp = p
    cdef i64 *f = NULL
    cdef int lf = _prep(coeffs, pp, &f)
    cdef i64 *df
    cdef i64 *g
    cdef i64 *h
    cdef i64 *work
    cdef int ldf, lg, lh, lw, k, d
    if lf == 1:
        free(f)
        raise ValueError("constant polynomial mod p")
    df = <i64 *> malloc(lf * sizeof(i64))
    g = <i64 *> malloc(2 * lf * sizeof(i64))
    h = <i64 *> malloc(2 * lf * sizeof(i64))
    work = <i64 *> malloc(2 * lf * sizeof(i64))
    try:
        ldf = _deriv(f, lf, df, pp)
        lg = _gcd_mod(f, lf, df, ldf, g, pp)
        if lg != 1:
            raise ValueError("not squarefree mod p")
        degs = []
        # h = x mod f
        h[0] = 0
        h[1] = 1
        lh = _rem_mod(h, 2, f, lf, pp)
        k = 0
        while lf - 1 >= 2 * (k + 1):
            k += 1
            lh = _pow_mod(h, lh, pp, f, lf, h, pp)
            # g = gcd(h - x, f)
            lw = max(lh, 2)
            memset(work, 0, lw * sizeof(i64))
            memcpy(work, h, lh * sizeof(i64))
            work[1] = (work[1] - 1) % pp
            if work[1] < 0:
                work[1] += pp
            lw = _trim(work, lw)
            lg = _gcd_mod(work, lw, f, lf, g, pp)
            if lg > 1:
                d = lg - 1
                degs.extend([k] * (d // k))
                lf = _exact_div(f, lf, g, lg, f, pp)
                lh = _rem_mod(h, lh, f, lf, pp)
        if lf > 1:
            degs.append(lf - 1)
        degs.sort(reverse=True)
        return degs
    finally:
        free(f)
        free(df)
        free(g)
        free(h)
        free(work)


def irreducible_mod_p(coeffs, p):
    """Rabin irreducibility test mod p; no squarefreeness precondition."""
    cdef i64 pp = p
    cdef i64 *f = NULL
    cdef int lf = _prep(coeffs, pp, &f)
    cdef int n = lf - 1, i, lh, lw, lg
    cdef i64 *h
    cdef i64 *work
    cdef i64 *g
    if n == 0:
        free(f)
        raise ValueError("constant polynomial mod p")
    if n == 1:
        free(f)
        return True
    qs = []
    i = 2
    m = n
    while i * i <= m:
        if m % i == 0:
            qs.append(i)
            while m % i == 0:
                m //= i
        i += 1
    if m > 1:
        qs.append(m)
    h = <i64 *> malloc(2 * lf * sizeof(i64))
    work = <i64 *> malloc(2 * lf * sizeof(i64))
    g = <i64 *> malloc(2 * lf * sizeof(i64))
    try:
        # frob[k] = x^(p^k) mod f
        frobs = []
        h[0] = 0
        h[1] = 1
        lh = _rem_mod(h, 2, f, lf, pp)
        frobs.append([h[i] for i in range(lh)])
        for _ in range(n):
            lh = _pow_mod(h, lh, pp, f, lf, h, pp)
            frobs.append([h[i] for i in range(lh)])
        for q in qs:
            fr = frobs[n // q]
            lw = max(len(fr), 2)
            memset(work, 0, lw * sizeof(i64))
            for i in range(len(fr)):
                work[i] = fr[i]
            work[1] = (work[1] - 1) % pp
            if work[1] < 0:
                work[1] += pp
            lw = _trim(work, lw)
            lg = _gcd_mod(work, lw, f, lf, g, pp)
            if lg != 1:
                return False
        fr = frobs[n]
        lw = max(len(fr), 2)
        memset(work, 0, lw * sizeof(i64))
        for i in range(len(fr)):
            work[i] = fr[i]
        work[1] = (work[1] - 1) % pp
        if work[1] < 0:
            work[1] += pp
        lw = _trim(work, lw)
        return lw == 0
    finally:
        free(f)
        free(h)
        free(work)
        free(g)


def roots_mod_p(coeffs, p):
    """Sorted roots mod p of coeffs (each once)."""
    cdef i64 pp = p
    cdef i64 *f = NULL
    cdef int lf = _prep(coeffs, pp, &f)
    cdef i64 *h
    cdef i64 *work
    cdef i64 *g
    cdef int lh, lw, lg, i
    cdef i64 r, acc
    h = <i64 *> malloc(2 * lf * sizeof(i64))
    work = <i64 *> malloc(2 * lf * sizeof(i64))
    g = <i64 *> malloc(2 * lf * sizeof(i64))
    try:
        h[0] = 0
        h[1] = 1
        lh = _rem_mod(h, 2, f, lf, pp)
        lh = _pow_mod(h, lh, pp, f, lf, h, pp)
        lw = max(lh, 2)
        memset(work, 0, lw * sizeof(i64))
        memcpy(work, h, lh * sizeof(i64))
        work[1] = (work[1] - 1) % pp
        if work[1] < 0:
            work[1] += pp
        lw = _trim(work, lw)
        lg = _gcd_mod(work, lw, f, lf, g, pp)
        out = []
        if lg <= 1:
            return out
        for r in range(pp):
            acc = 0
            for i in range(lg - 1, -1, -1):
                acc = (acc * r + g[i]) % pp
            if acc == 0:
                out.append(r)
                if len(out) == lg - 1:
                    break
        return out
    finally:
        free(f)
        free(h)
        free(work)
        free(g)
