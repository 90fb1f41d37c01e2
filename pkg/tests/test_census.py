import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from hyperfield.census import (
    IRREDUCIBLE_UNCERTIFIED,
    REDUCIBLE,
    SN_CERTIFIED,
    CensusConfig,
    CoefficientBox,
    box_disc_bound,
    c_n_positive,
    dedupe_gh,
    enumerate_box,
    ev_threshold_search,
    exponents,
    fingerprint,
    floor_pow,
    introot,
    isomorphic_exact,
    root_bound_box,
    run_census,
    shared_prime_pool,
)
from hyperfield.errors import BoxTooLarge, DegreeCapExceeded, HypothesisViolated, NonMonic
from hyperfield.family import FamilyShape, HyperellipticCurve
from hyperfield.intpoly import IntPolynomial, translate

P = IntPolynomial
C3 = HyperellipticCurve(P((1, 1, 0, 1)))
C5 = HyperellipticCurve(P((1, -1, 0, 0, 0, 1)))
C6 = HyperellipticCurve(P((3, 1, 0, 0, 0, 0, 1)))


class TestFloorPow:
    def test_integer_exponents(self):
        assert floor_pow(Fraction(2), Fraction(3)) == 8
        assert floor_pow(Fraction(5, 2), Fraction(2)) == 6
        assert floor_pow(Fraction(7), Fraction(0)) == 1

    def test_half_exponents(self):
        assert floor_pow(Fraction(8), Fraction(1, 2)) == 2
        assert floor_pow(Fraction(8), Fraction(3, 2)) == 22
        assert floor_pow(Fraction(9, 4), Fraction(1, 2)) == 1

    def test_against_float(self):
        rng = random.Random(0)
        for _ in range(500):
            y = Fraction(rng.randint(1, 40), rng.randint(1, 7))
            if y < 1:
                continue
            e = Fraction(rng.randint(0, 9), rng.choice([1, 2]))
            exact = floor_pow(y, e)
            approx = float(y) ** float(e)
            assert exact <= approx < exact + 1.000001

    def test_introot(self):
        rng = random.Random(1)
        for _ in range(500):
            x = rng.randint(0, 10**30)
            k = rng.randint(1, 7)
            r = introot(x, k)
            assert r**k <= x < (r + 1) ** k


class TestBox:
    def test_n3_paper_bounds(self):
        box = CoefficientBox.build(FamilyShape.census_shape(3, 3), 2)
        assert box.bounds == (("a", 1, 1), ("a", 0, 2))
        assert box.cardinality == 15

    def test_n4_bounds(self):
        box = CoefficientBox.build(FamilyShape.census_shape(3, 4), 8)
        assert box.bounds == (("a", 1, 8), ("a", 0, 64), ("b", 0, 2))
        assert box.cardinality == 17 * 129 * 5

    def test_even_shape_bounds(self):
        box = CoefficientBox.build(FamilyShape.census_shape(6, 8), 2)
        # d_g = 4, d_h = 0: a_3..a_0 at Y^1..Y^4, no b (h constant b_0? no:
        # d_h = (8-6)/2 - 1 = 0 so b has the single free coefficient b_0 at Y^1)
        assert dict(((s, j), b) for s, j, b in box.bounds) == {
            ("a", 3): 2,
            ("a", 2): 4,
            ("a", 1): 8,
            ("a", 0): 16,
            ("b", 0): 2,
        }

    def test_cardinality_matches_enumeration_20_pairs(self):
        pairs = []
        for d, n in [(3, 3), (3, 4), (3, 5), (5, 5), (5, 6)]:
            for Y in (1, 2, Fraction(5, 2), 3):
                pairs.append((d, n, Y))
        assert len(pairs) == 20
        for d, n, Y in pairs:
            sh = FamilyShape.census_shape(d, n)
            box = CoefficientBox.build(sh, Y)
            count = sum(1 for _ in box.specializations())
            assert count == box.cardinality, (d, n, Y)

    def test_enumeration_order(self):
        box = CoefficientBox.build(FamilyShape.census_shape(3, 4), 1)
        specs = list(box.specializations())
        assert len(specs) == 27
        assert specs[0].a == (-1, -1) and specs[0].b == (-1,)
        assert specs[-1].a == (1, 1) and specs[-1].b == (1,)
        # most-significant first: a_1 varies slowest
        assert [s.a[1] for s in specs[:9]] == [-1] * 9

    def test_y_below_one_rejected(self):
        with pytest.raises(HypothesisViolated):
            CoefficientBox.build(FamilyShape.census_shape(3, 4), Fraction(1, 2))


class TestEnumerateBox:
    def test_statuses_and_cap(self):
        records = list(enumerate_box(C3, FamilyShape.census_shape(3, 3), 2))
        assert len(records) == 15
        assert {r.status for r in records} <= {REDUCIBLE, IRREDUCIBLE_UNCERTIFIED, SN_CERTIFIED}
        # zero specialization gives F = -f, irreducible with group S3
        zero = [r for r in records if r.spec.a == (0, 0)][0]
        assert zero.F.coeffs == (-1, -1, 0, -1)
        assert zero.status == SN_CERTIFIED
        assert zero.group_certificate is not None and zero.group_certificate.conclusion == "SN"
        assert zero.fingerprint is not None and len(zero.fingerprint.entries) == 50
        with pytest.raises(BoxTooLarge):
            list(enumerate_box(C3, FamilyShape.census_shape(3, 3), 2, CensusConfig(box_cap=10)))

    def test_disc_attached(self):
        for r in enumerate_box(C3, FamilyShape.census_shape(3, 3), 2):
            if r.status != REDUCIBLE:
                from hyperfield.intpoly import discriminant

                assert r.disc_F == discriminant(r.F) != 0

    def test_h_zero_flagged(self):
        records = list(enumerate_box(C3, FamilyShape.census_shape(3, 4), 2))
        flagged = [r for r in records if r.no_point]
        assert flagged and all(r.status == REDUCIBLE for r in flagged)
        assert all(r.spec.b == (0,) for r in flagged)


class TestDedupe:
    def test_sign_collision(self):
        records = list(enumerate_box(C3, FamilyShape.census_shape(3, 4), 2))
        groups, max_mult = dedupe_gh(records)
        assert max_mult == 2  # (g, b0) and (g, -b0) collide
        two = [g for g in groups.values() if len(g) == 2]
        assert two
        for pair in two:
            assert pair[0].spec.a == pair[1].spec.a
            assert pair[0].spec.b == tuple(-x for x in pair[1].spec.b)

    def test_multiplicity_constant_across_sweep(self):
        mults = []
        for Y in (2, 3, 4):
            records = list(enumerate_box(C3, FamilyShape.census_shape(3, 4), Y))
            _, m = dedupe_gh(records)
            mults.append(m)
        assert len(set(mults)) == 1


class TestFingerprint:
    def test_translation_invariant(self):
        pool = shared_prime_pool(60)
        F = P((1, 1, 0, 1))
        assert fingerprint(F, pool).entries == fingerprint(translate(F, 1), pool).entries

    def test_separates_quadratics(self):
        pool = shared_prime_pool(60)
        f2 = fingerprint(P((-2, 0, 1)), pool)
        f3 = fingerprint(P((-3, 0, 1)), pool)
        assert f2.entries != f3.entries
        # both 2 and 3 are non-residues mod 5; the first separating prime is 7
        d2, d3 = dict(f2.entries), dict(f3.entries)
        assert d2[5] == d3[5] == (2,)
        assert d2[7] == (1, 1) and d3[7] == (2,)

    def test_separates_cubics(self):
        pool = shared_prime_pool(60)
        a = fingerprint(P((1, 1, 0, 1)), pool)
        b = fingerprint(P((1, 2, 0, 1)), pool)
        assert a.entries != b.entries

    def test_hash_stable(self):
        pool = shared_prime_pool(60)
        assert fingerprint(P((1, 1, 0, 1)), pool).hash_hex == fingerprint(P((1, 1, 0, 1)), pool).hash_hex

    def test_compatibility_semantics(self):
        from hyperfield.census import FieldFingerprint

        a = FieldFingerprint(2, ((3, (2,)), (5, (2,))))
        b = FieldFingerprint(2, ((3, (2,)), (7, (1, 1))))  # disjoint at 5/7: index-prime gap
        c = FieldFingerprint(2, ((3, (1, 1)), (5, (2,))))
        assert a.compatible(b) and b.compatible(a)
        assert not a.compatible(c)
        assert not a.compatible(FieldFingerprint(3, a.entries))


class TestIsomorphicExact:
    def test_examples(self):
        assert isomorphic_exact(P((-2, 0, 1)), P((-8, 0, 1)))
        assert not isomorphic_exact(P((-2, 0, 1)), P((-3, 0, 1)))
        F = P((1, 1, 0, 1))
        assert isomorphic_exact(F, translate(F, 3))
        assert not isomorphic_exact(F, P((1, 2, 0, 1)))

    def test_cap(self):
        with pytest.raises(DegreeCapExceeded):
            isomorphic_exact(P([1] * 8 + [1]), P([2] * 8 + [1]), cap=6)

    def test_consistent_with_fingerprints(self):
        pool = shared_prime_pool(60)
        polys = [P((1, 1, 0, 1)), P((-2, 0, 0, 1)), P((2, 3, 0, 1)), P((11, 13, 6, 1)), P((-1, -1, 0, 1))]
        for A, B in itertools.combinations(polys, 2):
            iso = isomorphic_exact(A, B)
            fpa, fpb = fingerprint(A, pool), fingerprint(B, pool)
            if iso:
                assert fpa.compatible(fpb)
            if not fpa.compatible(fpb):
                assert not iso

    def test_matches_sympy(self):
        sympy = pytest.importorskip("sympy")
        from sympy import AlgebraicNumber, Poly, Symbol
        from sympy.polys.numberfields import field_isomorphism

        x = Symbol("x")
        rng = random.Random(2)
        pairs = 0
        polys = []
        while len(polys) < 8:
            cand = P([rng.randint(-6, 6) for _ in range(3)] + [1])
            from hyperfield.factor import is_irreducible

            if is_irreducible(cand):
                polys.append(cand)
        polys.append(translate(polys[0], 2))
        for A, B in itertools.combinations(polys, 2):
            mine = isomorphic_exact(A, B)
            ra = AlgebraicNumber(Poly(sum(c * x**i for i, c in enumerate(A.coeffs)), x).all_roots()[0])
            rb = AlgebraicNumber(Poly(sum(c * x**i for i, c in enumerate(B.coeffs)), x).all_roots()[0])
            assert mine == (field_isomorphism(ra, rb) is not None), (A, B)
            pairs += 1
        assert pairs >= 36

    def test_matches_sympy_higher_degrees(self):
        sympy = pytest.importorskip("sympy")
        from sympy import AlgebraicNumber, Poly, Symbol
        from sympy.polys.numberfields import field_isomorphism

        from hyperfield.factor import is_irreducible
        from hyperfield.intpoly import monicize, scale_x

        x = Symbol("x")
        rng = random.Random(5)

        def rand_irr(deg):
            while True:
                cand = P([rng.randint(-5, 5) for _ in range(deg)] + [1])
                if cand.degree == deg and is_irreducible(cand):
                    return cand

        for deg in (4, 5, 6):
            polys = [rand_irr(deg) for _ in range(3)]
            polys.append(translate(polys[0], 2))
            polys.append(monicize(scale_x(polys[1], 2)))  # roots halved: same field
            for A, B in itertools.combinations(polys, 2):
                mine = isomorphic_exact(A, B)
                ra = AlgebraicNumber(Poly(sum(c * x**i for i, c in enumerate(A.coeffs)), x).all_roots()[0])
                rb = AlgebraicNumber(Poly(sum(c * x**i for i, c in enumerate(B.coeffs)), x).all_roots()[0])
                assert mine == (field_isomorphism(ra, rb) is not None), (A, B)


class TestRootBounds:
    def test_linear(self):
        y, _ = root_bound_box(P((-7, 1)))
        assert 7 <= y <= Fraction(7) + Fraction(1, 2**14)

    def test_non_monic_rejected(self):
        with pytest.raises(NonMonic):
            root_bound_box(P((1, 2)))

    def test_dominates_numpy_roots(self):
        rng = random.Random(3)
        for _ in range(2000):
            deg = rng.randint(1, 8)
            F = P([rng.randint(-100, 100) for _ in range(deg)] + [1])
            y, disc_bound = root_bound_box(F)
            roots = np.roots(list(reversed(F.coeffs)))
            assert max(abs(r) for r in roots) <= float(y) * (1 + 1e-12) + 1e-9

    def test_disc_bound_over_box(self):
        from hyperfield.intpoly import discriminant

        sh = FamilyShape.census_shape(3, 4)
        bound = box_disc_bound(C3, sh, 2)
        box = CoefficientBox.build(sh, 2)
        from hyperfield.family import build_family_member

        for s in box.specializations():
            F = build_family_member(C3, sh, s)
            assert abs(discriminant(F)) <= bound


class TestExponents:
    def test_box_exponent_example(self):
        assert exponents(1, 3, 4).box_exponent == Fraction(7, 2)

    def test_limit(self):
        rep = exponents(1, 3, 10**4)
        assert abs(rep.c_n - Fraction(1, 4)) < Fraction(1, 1000)
        assert rep.c_n < Fraction(1, 4)

    def test_t_exponent_display(self):
        # n - (3+2g) + 2g^2/n for the odd case
        for g, n in [(1, 5), (2, 9), (3, 21)]:
            rep = exponents(g, 2 * g + 1, n)
            assert rep.t_exponent == n - (3 + 2 * g) + Fraction(2 * g * g, n)

    def test_improved_beats_unimproved(self):
        for g in (1, 2, 3):
            d = 2 * g + 1
            for n in range(max(d, 20), 1001):
                rep = exponents(g, d, n)
                assert rep.c_n_improved > rep.c_n
                assert rep.c_n_improved < Fraction(1, 4)
            d = 2 * g + 2
            for n in range(max(d + 2, 20), 1001):
                if n % 2:
                    continue
                rep = exponents(g, d, n)
                assert rep.c_n_improved > rep.c_n < Fraction(1, 4)

    def test_positivity_remark(self):
        assert all(c_n_positive(4, 9, n) for n in range(9, 10**6 + 1))
        assert all(c_n_positive(2, 6, n) for n in range(8, 10**6 + 1, 2))
        assert not c_n_positive(1, 3, 3)

    def test_hypothesis_errors(self):
        for g, d, n in [(1, 3, 2), (2, 6, 7), (2, 6, 6), (1, 4, 5), (0, 3, 5), (1, 5, 6)]:
            with pytest.raises(HypothesisViolated):
                exponents(g, d, n)


class TestThreshold:
    def test_g1_value(self):
        assert ev_threshold_search(1) == 16052

    def test_tiny_window_raises(self):
        from hyperfield.errors import SearchWindowExceeded

        with pytest.raises(SearchWindowExceeded):
            ev_threshold_search(1, window=1000)


class TestRunCensus:
    def test_summary_schema(self):
        res = run_census(C3, 3, 4)
        s = res.summary
        assert set(s) == {"counts", "classes", "max_multiplicity", "exponent_report", "diagnostics"}
        assert set(s["counts"]) == {"reducible", "irreducible", "sn_certified"}
        assert sum(s["counts"].values()) == s["diagnostics"]["box_cardinality"] == 27

    def test_classes_weakly_increasing(self):
        prev = -1
        for Y in (2, 3, 4, 6, 8):
            res = run_census(C3, 3, Y)
            assert res.summary["classes"] >= prev
            prev = res.summary["classes"]

    def test_log_ratio_diagnostic_n3_y8(self):
        res = run_census(C3, 3, 8)
        ratio = res.summary["diagnostics"]["log_cardinality_ratio"]
        c = Fraction(res.summary["exponent_report"]["box_exponent"])
        assert abs(ratio - float(c)) / float(c) < 0.15

    def test_csv_deterministic(self):
        a = run_census(C3, 3, 3).csv_lines
        b = run_census(C3, 3, 3).csv_lines
        assert a == b
        assert all(line.count(";") == 6 for line in a)

    def test_workers_agree(self):
        base = run_census(C3, 3, 3, CensusConfig(workers=1))
        multi = run_census(C3, 3, 3, CensusConfig(workers=2))
        assert base.csv_lines == multi.csv_lines
        assert base.summary == multi.summary

    def test_all_sn_have_zero_residue(self):
        from hyperfield.family import point_residue

        res = run_census(C3, 3, 4)
        for r in res.records:
            if r.status == SN_CERTIFIED:
                assert point_residue(C3, res.shape, r.spec).is_zero()

    def test_class_ids_assigned(self):
        res = run_census(C3, 3, 4)
        for r in res.records:
            if r.status in (SN_CERTIFIED, IRREDUCIBLE_UNCERTIFIED):
                assert r.class_id is not None
            else:
                assert r.class_id is None

    def test_even_degree_census(self):
        from hyperfield.family import point_residue

        res = run_census(C6, 8, 1)
        s = res.summary
        assert s["diagnostics"]["box_cardinality"] == 3**5 == len(res.records)
        assert s["counts"]["sn_certified"] > 0
        assert s["diagnostics"]["h_zero_members"] == 3**4
        for r in res.records[:40]:
            if r.status == SN_CERTIFIED:
                assert point_residue(C6, res.shape, r.spec).is_zero()

    def test_quartic_curve_census(self):
        c4 = HyperellipticCurve(P((1, 0, 0, 0, 1)))
        res = run_census(c4, 6, 1)
        assert res.summary["diagnostics"]["box_cardinality"] == 81
        assert res.summary["counts"]["sn_certified"] > 0
