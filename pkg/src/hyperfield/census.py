"""Census of specialization boxes: enumeration, certification, counting.

The box of height Y over a census shape bounds each free coefficient by
an exact floor of a rational power of Y (half-integer exponents for the
non-monic side of the even-n family). Enumeration is a deterministic
odometer, most-significant coefficient first (a descending, then b),
each coordinate swept from -bound to +bound.

Every record carries the discriminant and a certification status:
REDUCIBLE, IRREDUCIBLE_UNCERTIFIED, or SN_CERTIFIED. Irreducibility is
decided by (in order) degree partitions mod up to 5 good primes, a
full-length coprime-slope Newton-polygon segment, then rational
factorization below the degree cap. S_n certification runs the
recognition rules on Frobenius cycle types sampled at the run's shared
prime pool, which double as the field fingerprint.

Members with h = 0 (possible only for the even-n shapes, where h has no
forced monic term) are enumerated for the exact-cardinality invariant
but flagged no_point: F = g^2 carries no point of the curve, and the
Hilbert-proportion diagnostics are reported both with and without them.

Field discriminants are never computed (no maximal-order machinery in
scope): the census records the polynomial discriminant Disc(F), an
upper-bound proxy since Disc(F) = [O_K : Z[alpha]]^2 * Disc(K). The
log-scale counting diagnostics are unaffected at this scale.
"""
from __future__ import annotations

import hashlib
import itertools
import math
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import _kernels as kernels
from .errors import BoxTooLarge, DegreeCapExceeded, HypothesisViolated, NonMonic, SearchWindowExceeded
from .factor import DEFAULT_DEGREE_CAP, factor_over_q, next_prime
from .family import (
    EVEN_D_EVEN_N,
    ODD_D_EVEN_N,
    ODD_D_ODD_N,
    FamilyShape,
    HyperellipticCurve,
    Specialization,
    build_family_member,
)
from .intpoly import IntPolynomial, discriminant, format_poly, scale_x, translate
from .newton import newton_polygon
from .perms import SN, GroupCertificate, recognize_sn

REDUCIBLE = "REDUCIBLE"
IRREDUCIBLE_UNCERTIFIED = "IRREDUCIBLE_UNCERTIFIED"
SN_CERTIFIED = "SN_CERTIFIED"


# -- exact floors of rational powers ------------------------------------------


def introot(x: int, k: int) -> int:
    """Largest r with r^k <= x (x >= 0)."""
    if x < 0:
        raise ValueError("introot of a negative number")
    if x == 0 or k == 1:
        return x
    r = 1 << -(-x.bit_length() // k)
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r**k > x:
        r -= 1
    return r


def floor_pow(y: Fraction, e: Fraction) -> int:
    """floor(y^e) for positive rational y and e with denominator 1 or 2."""
    y = Fraction(y)
    e = Fraction(e)
    if y <= 0:
        raise ValueError("Y must be positive")
    if e.denominator == 1:
        k = e.numerator
        if k < 0:
            raise ValueError("negative exponents not used by the box")
        return y.numerator**k // y.denominator**k
    if e.denominator != 2:
        raise ValueError("box exponents have denominator 1 or 2")
    k = e.numerator  # y^(k/2), k odd
    num, den = y.numerator**k, y.denominator**k
    # floor(sqrt(num/den)) = isqrt(num*den) // den
    return math.isqrt(num * den) // den


# -- the coefficient box -------------------------------------------------------


def box_exponents(shape: FamilyShape) -> list[tuple[str, int, Fraction]]:
    """(side, coefficient index, exponent) for every free coefficient, in
    enumeration order: a most-significant first, then b."""
    out = []
    if shape.case == ODD_D_EVEN_N:
        assert shape.monic_g
        for j in range(shape.d_g - 1, -1, -1):
            out.append(("a", j, Fraction(shape.d_g - j)))
        for j in range(shape.d_h, -1, -1):
            out.append(("b", j, Fraction(shape.d_h - j) + Fraction(1, 2)))
    elif shape.case == ODD_D_ODD_N:
        assert shape.monic_h
        for j in range(shape.d_g, -1, -1):
            out.append(("a", j, Fraction(shape.d_g - j)))
        for j in range(shape.d_h - 1, -1, -1):
            out.append(("b", j, Fraction(shape.d_h - j)))
    elif shape.case == EVEN_D_EVEN_N:
        assert shape.monic_g
        for j in range(shape.d_g - 1, -1, -1):
            out.append(("a", j, Fraction(shape.d_g - j)))
        for j in range(shape.d_h, -1, -1):
            out.append(("b", j, Fraction(shape.d_h + 1 - j)))
    else:  # pragma: no cover
        raise AssertionError(shape.case)
    return out


@dataclass(frozen=True)
class CoefficientBox:
    shape: FamilyShape
    Y: Fraction
    bounds: tuple[tuple[str, int, int], ...]  # (side, index, bound)

    @classmethod
    def build(cls, shape: FamilyShape, Y) -> "CoefficientBox":
        Y = Fraction(Y)
        if Y < 1:
            raise HypothesisViolated("box height Y must be >= 1")
        bounds = tuple((side, j, floor_pow(Y, e)) for side, j, e in box_exponents(shape))
        return cls(shape=shape, Y=Y, bounds=bounds)

    @property
    def cardinality(self) -> int:
        out = 1
        for _, _, b in self.bounds:
            out *= 2 * b + 1
        return out

    def specializations(self):
        """Odometer over the box, most-significant coefficient first."""
        ranges = [range(-b, b + 1) for _, _, b in self.bounds]
        a_len, b_len = self.shape.a_len, self.shape.b_len
        slots = [(side, j) for side, j, _ in self.bounds]
        for values in itertools.product(*ranges):
            a = [0] * a_len
            b = [0] * b_len
            for (side, j), v in zip(slots, values):
                (a if side == "a" else b)[j] = v
            yield Specialization(tuple(a), tuple(b))

    def log_ratio(self) -> float:
        """log(cardinality) / log(Y): compare against the count exponent."""
        if self.Y == 1:
            return float("nan")
        return math.log(self.cardinality) / math.log(self.Y)


# -- field fingerprints --------------------------------------------------------


def shared_prime_pool(count: int) -> list[int]:
    out, p = [], 2
    while len(out) < count:
        out.append(p)
        p = next_prime(p)
    return out


@dataclass(frozen=True)
class FieldFingerprint:
    degree: int
    entries: tuple[tuple[int, tuple[int, ...]], ...]  # (prime, splitting type)

    @property
    def hash_hex(self) -> str:
        return hashlib.sha1(repr((self.degree, self.entries)).encode()).hexdigest()[:12]

    def compatible(self, other: "FieldFingerprint") -> bool:
        """Equal wherever both are defined (same prime sampled)."""
        if self.degree != other.degree:
            return False
        mine = dict(self.entries)
        for p, t in other.entries:
            if p in mine and mine[p] != t:
                return False
        return True


def fingerprint(F: IntPolynomial, pool: list[int], count: int = 50) -> FieldFingerprint:
    """Splitting types at the first `count` primes from the shared pool
    that are good for F (bad ones skipped, pool extended as needed)."""
    bad = abs(F.lc) * abs(discriminant(F))
    if bad == 0:
        raise ValueError("fingerprint requires a squarefree polynomial")
    entries = []
    i = 0
    p = None
    while len(entries) < count:
        if i < len(pool):
            p = pool[i]
        else:
            p = next_prime(p if p is not None else 1)
        i += 1
        if bad % p == 0:
            continue
        entries.append((p, tuple(kernels.ddf_degrees(F.coeffs, p))))
    return FieldFingerprint(degree=F.degree, entries=tuple(entries))


# -- census records and classification ----------------------------------------


@dataclass(frozen=True)
class CensusConfig:
    fingerprint_primes: int = 50
    irreducibility_primes: int = 5
    polygon_primes: tuple[int, ...] = (2, 3, 5, 7, 11, 13)
    factor_cap: int = DEFAULT_DEGREE_CAP
    iso_cap: int = 6
    box_cap: int = 100_000_000
    workers: int = 1


@dataclass(frozen=True)
class CensusRecord:
    spec: Specialization
    F: IntPolynomial
    disc_F: int
    status: str
    fingerprint: FieldFingerprint | None = None
    group_certificate: GroupCertificate | None = None
    no_point: bool = False
    class_id: int | None = None


def _np_irreducible(F: IntPolynomial, primes) -> bool:
    """Full-length segment with coprime reduced slope at some small prime."""
    n = F.degree
    for q in primes:
        if F.lc % q == 0:
            continue
        np_ = newton_polygon(F, q)
        if np_.x_power:
            continue
        segs = np_.segments
        if len(segs) == 1 and segs[0].length == n and segs[0].slope.denominator == n:
            return True
    return False


def classify_record(
    curve: HyperellipticCurve,
    shape: FamilyShape,
    s: Specialization,
    pool: list[int],
    cfg: CensusConfig,
) -> CensusRecord:
    F = build_family_member(curve, shape, s)
    h = s.h_poly(shape)
    n = F.degree
    if h.is_zero():
        return CensusRecord(s, F, 0, REDUCIBLE, no_point=True)
    disc_F = discriminant(F)
    if disc_F == 0:
        return CensusRecord(s, F, 0, REDUCIBLE)
    bad = abs(F.lc) * abs(disc_F)

    good: list[int] = []
    i = 0
    p = None
    while len(good) < cfg.fingerprint_primes:
        if i < len(pool):
            p = pool[i]
        else:
            p = next_prime(p if p is not None else 1)
        i += 1
        if bad % p:
            good.append(p)

    partitions: dict[int, tuple[int, ...]] = {}
    irreducible = False
    for q in good[: cfg.irreducibility_primes]:
        partitions[q] = tuple(kernels.ddf_degrees(F.coeffs, q))
        if partitions[q] == (n,):
            irreducible = True
            break
    if not irreducible:
        irreducible = _np_irreducible(F, cfg.polygon_primes)
    if not irreducible:
        if n > cfg.factor_cap:
            raise DegreeCapExceeded(
                f"cannot decide irreducibility at degree {n} above factor cap {cfg.factor_cap}"
            )
        factors = factor_over_q(F, cap=cfg.factor_cap)
        if sum(1 for f in factors if f.degree > 0) > 1:
            return CensusRecord(s, F, disc_F, REDUCIBLE)
        irreducible = True

    for q in good:
        if q not in partitions:
            partitions[q] = tuple(kernels.ddf_degrees(F.coeffs, q))
    fp = FieldFingerprint(degree=n, entries=tuple((q, partitions[q]) for q in good))
    evidence = [(partitions[q], f"frobenius p={q}") for q in good]
    cert = recognize_sn(n, evidence, transitive=True)
    status = SN_CERTIFIED if cert.conclusion == SN else IRREDUCIBLE_UNCERTIFIED
    return CensusRecord(s, F, disc_F, status, fingerprint=fp, group_certificate=cert)


def enumerate_box(
    curve: HyperellipticCurve,
    shape: FamilyShape,
    Y,
    cfg: CensusConfig = CensusConfig(),
):
    """Stream of classified CensusRecords in deterministic odometer order."""
    box = CoefficientBox.build(shape, Y)
    if box.cardinality > cfg.box_cap:
        raise BoxTooLarge(f"box cardinality {box.cardinality} exceeds cap {cfg.box_cap}")
    pool = shared_prime_pool(cfg.fingerprint_primes + 10)
    for s in box.specializations():
        yield classify_record(curve, shape, s, pool, cfg)


# -- (g, h) collision multiplicities ------------------------------------------


def dedupe_gh(records) -> tuple[dict[tuple[int, ...], list[CensusRecord]], int]:
    """Group records by F; return groups and the max (g,h)-multiplicity."""
    groups: dict[tuple[int, ...], list[CensusRecord]] = {}
    for r in records:
        groups.setdefault(r.F.coeffs, []).append(r)
    max_mult = max((len(v) for v in groups.values()), default=0)
    return groups, max_mult


# -- exact isomorphism ---------------------------------------------------------


def _resultant_in_x(F1: IntPolynomial, F2: IntPolynomial, t: int) -> IntPolynomial:
    """R_t(x) = Res_y(F1(y), F2(x + t*y)), by exact interpolation."""
    from .intpoly import resultant

    deg = F1.degree * F2.degree
    xs = range(-(deg // 2), deg - deg // 2 + 1)
    ys = []
    for x0 in xs:
        shifted = scale_x(translate(F2, x0), t)  # F2(t*y + x0) as a polynomial in y
        ys.append(resultant(F1, shifted))
    # Lagrange interpolation, exact.
    coeffs = [Fraction(0)] * (deg + 1)
    for i, x0 in enumerate(xs):
        num = [Fraction(1)]
        denom = Fraction(1)
        for j, x1 in enumerate(xs):
            if i == j:
                continue
            num = _poly_mul_frac(num, [Fraction(-x1), Fraction(1)])
            denom *= Fraction(x0 - x1)
        scale = Fraction(ys[i]) / denom
        for k, c in enumerate(num):
            coeffs[k] += c * scale
    assert all(c.denominator == 1 for c in coeffs)
    return IntPolynomial(int(c) for c in coeffs)


def _poly_mul_frac(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def _squarefree_mod_witness(R: IntPolynomial, tries: int = 8) -> int | None:
    """A prime q with R squarefree mod q (proves R squarefree over Z)."""
    q = 2
    for _ in range(tries):
        while R.lc % q == 0:
            q = next_prime(q)
        try:
            kernels.ddf_degrees(R.coeffs, q)
            return q
        except ValueError:
            q = next_prime(q)
    return None


def _degree_subsets(parts: list[int], target: int):
    """Index subsets of `parts` whose degrees sum to `target`."""
    order = sorted(range(len(parts)), key=lambda i: parts[i])

    def rec(i, remaining, chosen):
        if remaining == 0:
            yield tuple(chosen)
            return
        if i >= len(order) or parts[order[i]] > remaining:
            return
        yield from rec(i + 1, remaining, chosen)
        chosen.append(order[i])
        yield from rec(i + 1, remaining - parts[order[i]], chosen)
        chosen.pop()

    yield from rec(0, target, [])


def _has_degree_n_factor(R: IntPolynomial, n: int) -> bool:
    """Does squarefree R have an irreducible factor of degree exactly n?

    Mod-q degree partitions give a sound early no; candidate subsets of
    lifted modular factors are verified by exact division.
    """
    import random as _random

    from .factor import _factor_mod_full, _mignotte_modulus, _center, hensel_lift_factors
    from ._kernels.pure import _mul_mod as _mulq

    disc = discriminant(R)
    primes = []
    q = 3
    while len(primes) < 6:
        if R.lc % q and disc % q:
            primes.append(q)
        q = next_prime(q)
    best_q, best_parts = None, None
    for q in primes:
        parts = list(kernels.ddf_degrees(R.coeffs, q))
        if not any(True for _ in itertools.islice(_degree_subsets(parts, n), 1)):
            return False  # no mod-q subset sums to n: no degree-n factor exists
        count = sum(1 for _ in itertools.islice(_degree_subsets(parts, n), 20001))
        if best_parts is None or count < best_parts[1]:
            best_q, best_parts = q, (parts, count)
    q = best_q
    rng = _random.Random(hash(R.coeffs) & 0xFFFFFFFF)
    factors = _factor_mod_full(R.coeffs, q, rng)
    target = _mignotte_modulus(R, q)
    lifted = hensel_lift_factors(list(R.coeffs), factors, q, target)
    degs = [len(v) - 1 for v in lifted]
    tested = 0
    for combo in _degree_subsets(degs, n):
        tested += 1
        if tested > 200000:
            raise DegreeCapExceeded("degree-n factor search exploded; raise caps or pick another shift")
        prod = [R.lc % target]
        for i in combo:
            prod = _mulq(prod, lifted[i], target)
        cand = IntPolynomial([_center(c, target) for c in prod]).primitive()
        if cand.degree == n and cand.divides(R):
            return True
    return False


def isomorphic_exact(F1: IntPolynomial, F2: IntPolynomial, cap: int = 6) -> bool:
    """Q[x]/(F1) isomorphic to Q[x]/(F2)? Trager-style resultant test.

    R_t(x) = Res_y(F1(y), F2(x + t*y)) factors over Q along Galois orbits
    of beta_j + t*alpha_i; the fields are isomorphic iff R_t has an
    irreducible factor of degree exactly n (for squarefree R_t).
    """
    n = F1.degree
    if n != F2.degree:
        return False
    if n > cap:
        raise DegreeCapExceeded(f"exact isomorphism capped at degree {cap}")
    if n == 1:
        return True
    if F1.primitive().coeffs == F2.primitive().coeffs:
        return True
    for t in range(1, 40):
        R = _resultant_in_x(F1, F2, t)
        if R.degree != n * n:
            continue
        if _squarefree_mod_witness(R) is None:
            continue
        return _has_degree_n_factor(R, n)
    raise AssertionError("no squarefree shift t found below 40")


# -- root and discriminant bounds ---------------------------------------------

_ROOT_SCALE = 1 << 16


def _ceil_root_scaled(value: Fraction, k: int) -> Fraction:
    """Upper bound for value^(1/k) with denominator 2^16; exact outer rounding."""
    scaled = value * Fraction(_ROOT_SCALE) ** k
    # ceil of the k-th root of ceil(scaled)
    num = -(-scaled.numerator // scaled.denominator)
    r = introot(num, k)
    if r**k < num:
        r += 1
    return Fraction(r, _ROOT_SCALE)


def fujiwara_root_bound(F: IntPolynomial) -> Fraction:
    """Exact rational upper bound 2*max_i |c_{n-i}/c_n|^(1/i) (last term
    halved), at most 2^-16 above the true Fujiwara bound."""
    n = F.degree
    if n < 1:
        raise ValueError("root bound requires degree >= 1")
    lc = F.lc
    best = Fraction(0)
    for i in range(n):
        c = F[i]
        if c == 0:
            continue
        val = Fraction(abs(c), abs(lc))
        if i == 0:
            val /= 2
        term = _ceil_root_scaled(val, n - i)
        best = max(best, term)
    return 2 * best


def root_bound_box(F: IntPolynomial) -> tuple[Fraction, Fraction]:
    """(Fujiwara root bound, implied discriminant bound n^n (2Y')^(n(n-1)))
    for monic F."""
    if abs(F.lc) != 1:
        raise NonMonic("root_bound_box requires monic F")
    n = F.degree
    y = fujiwara_root_bound(F)
    disc_bound = Fraction(n) ** n * (2 * y) ** (n * (n - 1))
    return y, disc_bound


def box_disc_bound(curve: HyperellipticCurve, shape: FamilyShape, Y) -> Fraction:
    """Discriminant bound k*Y^(n(n-1)) over the whole box: coefficient-wise
    triangle-inequality bounds on F feed the Fujiwara bound."""
    box = CoefficientBox.build(shape, Y)
    a_bound = [1] * (shape.d_g + 1)
    b_bound = [1] * (shape.d_h + 1) if shape.b_len or shape.monic_h else []
    for side, j, b in box.bounds:
        if side == "a":
            a_bound[j] = b
        else:
            b_bound[j] = b
    n = shape.n
    f = curve.f
    F_bound = [0] * (n + 1)
    for i, ai in enumerate(a_bound):
        for j, aj in enumerate(a_bound):
            F_bound[i + j] += ai * aj
    for w, cw in enumerate(f.coeffs):
        for i, bi in enumerate(b_bound):
            for j, bj in enumerate(b_bound):
                F_bound[w + i + j] += abs(cw) * bi * bj
    lead = max(1, F_bound[n])
    best = Fraction(0)
    for i in range(n):
        if F_bound[i] == 0:
            continue
        val = Fraction(F_bound[i], lead)
        if i == 0:
            val /= 2
        best = max(best, _ceil_root_scaled(val, n - i))
    y = 2 * best
    return Fraction(n) ** n * (2 * y) ** (n * (n - 1))


# -- exponent calculus ----------------------------------------------------------


@dataclass(frozen=True)
class ExponentReport:
    g: int
    d: int
    n: int
    box_exponent: Fraction
    c_n: Fraction
    c_n_improved: Fraction
    t_exponent: Fraction
    improvement_threshold: int | None = None

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "d": self.d,
            "n": self.n,
            "box_exponent": str(self.box_exponent),
            "c_n": str(self.c_n),
            "c_n_improved": str(self.c_n_improved),
            "t_exponent": str(self.t_exponent),
            "improvement_threshold": (
                self.improvement_threshold if self.improvement_threshold is not None else "NOT_FOUND"
            ),
        }


def exponents(g: int, d: int, n: int, threshold: int | None = None) -> ExponentReport:
    """All growth exponents, exact. Validates the (g, d, n) hypotheses."""
    if g < 1:
        raise HypothesisViolated(f"genus must be >= 1 (got g={g})")
    if d not in (2 * g + 1, 2 * g + 2):
        raise HypothesisViolated(f"degree d={d} inconsistent with genus g={g} (need 2g+1 or 2g+2)")
    if d % 2 == 1:
        if n < d:
            raise HypothesisViolated(f"odd-degree case requires n >= d (got n={n})")
        c = Fraction(n * n + (1 - 2 * g) * n + 2 * g * g, 4)
        c_n = Fraction(1, 4) - Fraction(g * n * n - (g * g - 2 * g - 3) * n - 2 * g * g, 2 * n * n * (n - 1))
    else:
        if n % 2 == 1:
            raise HypothesisViolated(f"even-degree case requires even n (got n={n})")
        if n < d + 2:
            raise HypothesisViolated(f"even-degree case requires n >= d+2 (got n={n})")
        c = Fraction(n * n - 2 * g * n + 2 * g * g + 2 * g, 4)
        c_n = Fraction(1, 4) - Fraction(
            (g + 1) * n * n - (g * g - g - 4) * n - (2 * g * g + 2 * g), 2 * n * n * (n - 1)
        )
    # Large-n improvement: once small-discriminant fields contribute
    # negligibly only the multiplicity bound Y^(n/2) is paid, the count
    # is >> Y^(c - n/2), and the X-exponent is (c - n/2)/(n(n-1)).
    c_imp = (c - Fraction(n, 2)) / (n * (n - 1))
    t_exp = 4 * (c - n) / n
    return ExponentReport(
        g=g, d=d, n=n, box_exponent=c, c_n=c_n, c_n_improved=c_imp, t_exponent=t_exp,
        improvement_threshold=threshold,
    )


def c_n_positive(g: int, d: int, n: int) -> bool:
    """Sign of c_n by cross-multiplied integers (fast sweep form)."""
    if d % 2 == 1:
        num = g * n * n - (g * g - 2 * g - 3) * n - 2 * g * g
    else:
        num = (g + 1) * n * n - (g * g - g - 4) * n - (2 * g * g + 2 * g)
    return 2 * num < n * n * (n - 1)


def ev_threshold_search(g: int, window: int = 100_000, r_max: int = 10) -> int:
    """Least N with admissible Ellenberg-Venkatesh pairs for every n >= N.

    A pair (r, m) is admissible at n when C(r+m, r) > n/2 and
    (4m/(n-2)) C(r+4m, r) < alpha(n, g) = n/4 - (1+2g)/4 + g^2/(2n).
    For fixed r the bound is increasing in m, so only the minimal m with
    C(r+m, r) > n/2 matters; m is capped at 4*sqrt(n) per the search
    spec. Comparisons are cross-multiplied integers (exact).
    """
    if g < 1:
        raise HypothesisViolated("genus must be >= 1")
    m_min = {r: 1 for r in range(1, r_max + 1)}
    binoms = {r: {} for r in range(1, r_max + 1)}

    def binom(r, m):
        out = binoms[r].get(m)
        if out is None:
            out = math.comb(r + m, r)
            binoms[r][m] = out
        return out

    last_bad = None
    for n in range(3, window + 1):
        rhs = (n * n - (1 + 2 * g) * n + 2 * g * g) * (n - 2)
        m_cap = introot(16 * n, 2)  # floor(4*sqrt(n))
        ok = False
        if rhs > 0:
            for r in range(1, r_max + 1):
                m = m_min[r]
                while 2 * math.comb(r + m, r) <= n:
                    m += 1
                m_min[r] = m
                if m > m_cap:
                    continue
                if 16 * m * n * binom(r, 4 * m) < rhs:
                    ok = True
                    break
        if not ok:
            last_bad = n
    if last_bad is None:
        return 3
    if last_bad >= window:
        raise SearchWindowExceeded(f"no admissible pair at the window edge n={window}")
    _check_tail(g, window)
    return last_bad + 1


def _check_tail(g: int, window: int) -> None:
    """Past the window, the naive pair (r=2, m=ceil(sqrt n)-1) must work,
    with a widening margin: checked exactly at geometric sample points."""
    prev_gap = None
    for j in range(9):
        n = window * 2**j
        m = introot(n - 1, 2) + 1 - 1  # ceil(sqrt(n)) - 1 for non-square n
        if (m + 1) * (m + 2) <= n:
            m += 1
        if (m + 1) * (m + 2) <= n:
            raise SearchWindowExceeded(f"naive EV requirement fails at n={n}")
        lhs = 16 * m * n * math.comb(2 + 4 * m, 2)
        rhs = (n * n - (1 + 2 * g) * n + 2 * g * g) * (n - 2)
        gap = rhs - lhs
        if gap <= 0:
            raise SearchWindowExceeded(f"naive EV bound not yet dominant at n={n}")
        if prev_gap is not None and gap <= prev_gap:
            raise SearchWindowExceeded(f"EV gap not increasing at n={n}")
        prev_gap = gap


# -- the full census -----------------------------------------------------------


@dataclass
class CensusResult:
    curve: HyperellipticCurve
    shape: FamilyShape
    Y: Fraction
    records: list[CensusRecord]
    summary: dict
    csv_lines: list[str]


def _class_groups(records: list[CensusRecord], cfg: CensusConfig):
    """Group irreducible records into field classes via fingerprints,
    merging compatible keys and exact-confirming collisions below the cap."""
    keyed: dict[tuple, list[CensusRecord]] = {}
    for r in records:
        if r.fingerprint is None:
            continue
        keyed.setdefault(r.fingerprint.entries, []).append(r)
    keys = list(keyed)
    # Merge keys that agree at every shared prime (index-prime gaps).
    parent = list(range(len(keys)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if len(keys) <= 2000:
        fps = [FieldFingerprint(records[0].F.degree, k) for k in keys]
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                if fps[i].compatible(fps[j]):
                    parent[find(i)] = find(j)
    merged: dict[int, list[CensusRecord]] = {}
    for i, k in enumerate(keys):
        merged.setdefault(find(i), []).extend(keyed[k])
    classes = [sorted(v, key=lambda r: r.F.coeffs) for v in merged.values()]
    classes.sort(key=lambda g: g[0].F.coeffs)
    unconfirmed = 0
    n = records[0].F.degree if records else 0
    for group in classes:
        distinct = sorted({r.F.coeffs for r in group})
        if len(distinct) <= 1:
            continue
        if n > cfg.iso_cap:
            unconfirmed += 1
            continue
        base = IntPolynomial(distinct[0])
        for other in distinct[1:]:
            if not isomorphic_exact(base, IntPolynomial(other), cap=cfg.iso_cap):
                unconfirmed += 1  # fingerprint collision of non-isomorphic fields
                break
    return classes, unconfirmed


def run_census(curve: HyperellipticCurve, n: int, Y, cfg: CensusConfig = CensusConfig()) -> CensusResult:
    shape = FamilyShape.census_shape(curve.d, n)
    Y = Fraction(Y)
    box = CoefficientBox.build(shape, Y)
    if box.cardinality > cfg.box_cap:
        raise BoxTooLarge(f"box cardinality {box.cardinality} exceeds cap {cfg.box_cap}")
    workers = cfg.workers
    env_threads = os.environ.get("HYPERFIELD_THREADS")
    if env_threads:
        workers = max(1, min(workers, int(env_threads)))
    records = _collect_records(curve, shape, Y, cfg, workers)

    groups, max_mult = dedupe_gh(records)
    irreducible = [r for r in records if r.status in (IRREDUCIBLE_UNCERTIFIED, SN_CERTIFIED)]
    # One representative per distinct F for class counting.
    seen_F: dict[tuple[int, ...], CensusRecord] = {}
    for r in irreducible:
        seen_F.setdefault(r.F.coeffs, r)
    classes, unconfirmed = _class_groups(list(seen_F.values()), cfg)

    class_of: dict[tuple[int, ...], int] = {}
    for cid, group in enumerate(classes):
        for r in group:
            class_of[r.F.coeffs] = cid
    records = [
        replace(r, class_id=class_of.get(r.F.coeffs)) if r.fingerprint is not None else r
        for r in records
    ]

    counts = {
        "reducible": sum(r.status == REDUCIBLE for r in records),
        "irreducible": sum(r.status == IRREDUCIBLE_UNCERTIFIED for r in records),
        "sn_certified": sum(r.status == SN_CERTIFIED for r in records),
    }
    pointed = [r for r in records if not r.no_point]
    h_zero = len(records) - len(pointed)
    red_all = counts["reducible"] / len(records) if records else 0.0
    red_pointed = (
        sum(r.status == REDUCIBLE for r in pointed) / len(pointed) if pointed else 0.0
    )

    # Per-class multiplicity against max(Y^n |disc|^(-1/2), Y^(n/2)); the
    # implied constant is unknown, so the ratio is reported, not asserted.
    mk_ratio = 0.0
    class_min_disc = []
    for group in classes:
        mult = sum(len(groups[key]) for key in {r.F.coeffs for r in group})
        dmin = min(abs(r.disc_F) for r in group)
        class_min_disc.append((dmin, mult))
        bound = max(float(Y) ** n * dmin ** -0.5 if dmin else float("inf"), float(Y) ** (n / 2))
        mk_ratio = max(mk_ratio, mult / bound)

    slope = _count_disc_slope(class_min_disc)
    hist: dict[int, int] = {}
    for r in records:
        b = abs(r.disc_F).bit_length()
        hist[b] = hist.get(b, 0) + 1

    report = exponents(curve.genus, curve.d, n)
    summary = {
        "counts": counts,
        "classes": len(classes),
        "max_multiplicity": max_mult,
        "exponent_report": report.to_json(),
        "diagnostics": {
            "box_cardinality": box.cardinality,
            "h_zero_members": h_zero,
            "reducible_proportion_all": red_all,
            "reducible_proportion_pointed": red_pointed,
            "log_cardinality_ratio": box.log_ratio(),
            "box_exponent": str(report.box_exponent),
            "mk_ratio_max": mk_ratio,
            "count_disc_slope": slope,
            "disc_histogram": {str(k): hist[k] for k in sorted(hist)},
            "unconfirmed_classes": unconfirmed,
        },
    }
    csv_lines = [_csv_line(r) for r in records]
    return CensusResult(curve=curve, shape=shape, Y=Y, records=records, summary=summary, csv_lines=csv_lines)


def _collect_records(curve, shape, Y, cfg, workers) -> list[CensusRecord]:
    box = CoefficientBox.build(shape, Y)
    pool = shared_prime_pool(cfg.fingerprint_primes + 10)
    specs = list(box.specializations())
    if workers <= 1:
        return [classify_record(curve, shape, s, pool, cfg) for s in specs]
    from concurrent.futures import ProcessPoolExecutor

    chunk = max(64, len(specs) // (workers * 8) + 1)
    chunks = [specs[i : i + chunk] for i in range(0, len(specs), chunk)]
    out: list[CensusRecord] = []
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for part in ex.map(_classify_chunk, [(curve, shape, c, pool, cfg) for c in chunks]):
            out.extend(part)
    return out


def _classify_chunk(args):
    curve, shape, specs, pool, cfg = args
    return [classify_record(curve, shape, s, pool, cfg) for s in specs]


def _count_disc_slope(class_min_disc) -> float:
    pts = sorted((d, m) for d, m in class_min_disc if d > 1)
    if len(pts) < 3:
        return float("nan")
    xs = [math.log(d) for d, _ in pts]
    ys = [math.log(i + 1) for i in range(len(pts))]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    denom = sum((x - mx) ** 2 for x in xs)
    if denom == 0:
        return float("nan")
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / denom


def _csv_line(r: CensusRecord) -> str:
    spec_a = ",".join(str(c) for c in r.spec.a)
    spec_b = ",".join(str(c) for c in r.spec.b)
    fp = r.fingerprint.hash_hex if r.fingerprint is not None else ""
    cid = str(r.class_id) if r.class_id is not None else ""
    return ";".join([spec_a, spec_b, format_poly(r.F), str(r.disc_F), r.status, fp, cid])


CSV_HEADER = "spec_a;spec_b;F_coeffs;disc_F;status;fingerprint_hash;class_id"
