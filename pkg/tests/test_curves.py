# -*- coding: utf-8 -*-
"""
Created on Mon Mar 24 14:31:12 2025

@author: CU
"""
import os
import unittest

import numpy as np

from castlepy.bounds import subcover_for
from castlepy.curves import (
    CurveFunction,
    CurveParams,
    curve_new,
    full_curve_generators,
)
from castlepy.curves.discovery import expected_z_pole
from castlepy.errors import DomainError, ValidationError
from castlepy.numsemi import NumericalSemigroup
from castlepy.qpoly import BivariatePoly

SLOW = os.environ.get("CASTLEPY_SLOW") == "1"
SEED = int(os.environ.get("CASTLEPY_SEED", "2025"))

EX44_GS = "y^4 + a^18*y^2 + a*y"
EX45_GS = "y^8 + a^12*y^4 + a^20*y^2 + a*y"


def ex44(model="reduced"):
    curve = subcover_for(2, 5, 3, 2, EX44_GS, 1)
    if model == "reduced":
        return curve
    return curve_new(CurveParams(2, 5, 3, g_s=curve.g_s, model=model))


def random_function(curve, rng, terms, max_x, max_y):
    F = curve.field
    poly = BivariatePoly(
        F,
        {
            (int(rng.integers(0, max_x)), int(rng.integers(0, max_y))): F.random(rng, nonzero=True)
            for _ in range(terms)
        },
    )
    return curve.fn_reduce(poly)


class TestCurveParams(unittest.TestCase):

    def test_full(self):
        params = CurveParams.full(2, 4, 3)
        self.assertEqual(params.s, 3)
        self.assertTrue(params.is_full)
        self.assertEqual(params.g_s.coeffs, (1, 1, 1, 1))

    def test_infers_s_from_g_s(self):
        params = CurveParams(2, 4, 3, g_s="y^8 + y^4 + y^2 + y")
        self.assertEqual(params.s, 3)
        self.assertTrue(params.is_full)

    def test_trace_split_default(self):
        params = CurveParams(2, 5, 3, s=2)
        self.assertEqual(params.g_s.degree_index, 2)
        self.assertFalse(params.is_full)

    def test_rejects(self):
        with self.assertRaises(ValidationError):
            CurveParams(2, 4, 2)
        with self.assertRaises(ValidationError):
            CurveParams(2, 5, 3, s=5)
        with self.assertRaises(ValidationError):
            CurveParams(6, 4, 3)
        with self.assertRaises(ValidationError):
            CurveParams(2, 4, 3, model="affine")
        with self.assertRaises(ValidationError):
            CurveParams(2, 4, 3, model_sign=2)
        with self.assertRaises(ValidationError):
            CurveParams(2, 5, 3, g_s="y^4")
        with self.assertRaises(ValidationError):
            CurveParams(2, 5, 3, g_s="a*y^4 + y")
        with self.assertRaises(ValidationError):
            CurveParams(2, 5, 3, s=2, g_s="y^8 + y")

    def test_to_dict(self):
        data = CurveParams.full(2, 4, 3).to_dict()
        self.assertEqual(data["g_s"], "y^{q^3} + y^{q^2} + y^q + y")
        self.assertEqual(data["modulus"], [1, 1, 0, 0, 1])


class TestFullCurve(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.curve = curve_new(q=2, n=4, r=3, s=3)

    def test_invariants(self):
        curve = self.curve
        self.assertTrue(curve.is_full)
        self.assertEqual(curve.genus, 28)
        self.assertEqual(curve.expected_points, 129)
        self.assertEqual(len(curve.points()), 128)
        self.assertEqual(curve.x_weight, 8)
        self.assertEqual(curve.y_weight, 18)

    def test_points_lie_on_curve(self):
        xs, ys = self.curve.point_arrays()
        lhs = self.curve.g_s.evaluate_array(ys)
        rhs = self.curve.rhs(xs)
        self.assertTrue(np.array_equal(lhs.view(np.ndarray), rhs.view(np.ndarray)))
        self.assertEqual(len(set(self.curve.points())), 128)

    def test_zwg(self):
        zwg = self.curve.build_zwg()
        self.assertEqual(zwg.u, 0)
        self.assertEqual(zwg.z_pole, 12)
        self.assertEqual(zwg.w_pole, 18)
        self.assertEqual(zwg.gamma_pole, 33)
        self.assertEqual(self.curve.oracle.pole_order(zwg.Gamma, method="resultant"), 33)

    def test_semigroup(self):
        data = self.curve.weierstrass_semigroup()
        self.assertEqual(data.semigroup, NumericalSemigroup([8, 12, 18, 33]))
        self.assertEqual(data.claimed, data.semigroup)
        self.assertEqual(data.semigroup, NumericalSemigroup(full_curve_generators(2, 4, 3)))
        self.assertTrue(data.table.is_complete())

    def test_rr_basis(self):
        basis = self.curve.rr_basis(20)
        poles = [-self.curve.valuation(f) for f in basis]
        self.assertEqual(poles, [0, 8, 12, 16, 18, 20])
        with self.assertRaises(ValidationError):
            self.curve.rr_basis(-1)

    def test_report(self):
        report = self.curve.report()
        self.assertEqual(report["genus"], 28)
        self.assertEqual(report["n_points"], 129)
        self.assertTrue(report["castle"])
        self.assertEqual(len(report["basis_sample"]), 12)
        self.assertEqual(report["basis_sample"][1][0], 8)


class TestSubcover(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.curve = ex44()

    def test_invariants(self):
        self.assertEqual(self.curve.genus, 12)
        self.assertEqual(len(self.curve.points()) + 1, 129)
        self.assertEqual(self.curve.valuation(self.curve.x), -4)
        self.assertEqual(self.curve.valuation(self.curve.y), -36)

    def test_equation_reduces_to_zero(self):
        curve = self.curve
        g = curve.function(curve.g_s.to_text(plain=True))
        rhs = CurveFunction.from_bivariate(
            curve, BivariatePoly(curve.field, {(36, 0): 1, (5, 0): 1})
        )
        self.assertTrue((g - rhs).is_zero())

    def test_zwg(self):
        zwg = self.curve.build_zwg()
        self.assertEqual(zwg.u, 1)
        self.assertEqual(zwg.z_pole, 10)
        self.assertEqual(zwg.w_pole, 18)
        self.assertEqual(zwg.gamma_pole, 17)

    def test_semigroup(self):
        data = self.curve.weierstrass_semigroup()
        self.assertEqual(data.semigroup, NumericalSemigroup([4, 10, 17]))
        self.assertEqual(data.table.poles(), [0, 10, 17, 27])
        self.assertEqual(data.to_dict()["apery"], [0, 10, 17, 27])

    def test_bound_too_small(self):
        with self.assertRaises(ValidationError):
            self.curve.weierstrass_semigroup(bound=10)
        with self.assertRaises(ValidationError):
            self.curve.weierstrass_semigroup(deepening_cap=0)

    def test_trace_model(self):
        curve = ex44("trace")
        self.assertEqual(len(curve.points()), 128)
        self.assertEqual(curve.valuation(curve.y), -20)
        self.assertEqual(curve.weierstrass_semigroup().semigroup.genus, 12)
        with self.assertRaises(ValidationError):
            curve.build_zwg()


class TestValuationOracle(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.curve = ex44()

    def setUp(self):
        self.rng = np.random.default_rng(SEED)

    def test_zero(self):
        zero = CurveFunction.constant(self.curve, 0)
        with self.assertRaises(DomainError):
            self.curve.valuation(zero)
        with self.assertRaises(DomainError):
            self.curve.oracle.pole_order(zero, method="resultant")

    def test_untied_matches_naive_weight(self):
        checked = 0
        while checked < 60:
            f = random_function(self.curve, self.rng, 3, 12, 4)
            weights = f.naive_weights()
            if not weights:
                continue
            top = max(weights.values())
            if list(weights.values()).count(top) != 1:
                continue
            self.assertEqual(
                self.curve.oracle.pole_order(f, method="resultant"), top, msg=f"seed {SEED}: {f}"
            )
            checked += 1

    def test_additivity(self):
        for _ in range(30):
            f = random_function(self.curve, self.rng, 3, 10, 4)
            g = random_function(self.curve, self.rng, 3, 10, 4)
            if f.is_zero() or g.is_zero():
                continue
            self.assertEqual(
                self.curve.valuation(f * g),
                self.curve.valuation(f) + self.curve.valuation(g),
                msg=f"seed {SEED}",
            )

    def test_tied_cancellation(self):
        # y^4 and x^36 share weight 144; their sum keeps only lower terms
        curve = self.curve
        f = curve.y**4 - CurveFunction.x_power(curve, 36)
        self.assertLess(curve.oracle.pole_order(f), 144)


class TestSmallCases(unittest.TestCase):

    def test_point_counts(self):
        cases = [(2, 4, 3, s) for s in range(1, 4)]
        cases += [(2, 5, r, s) for r in (3, 4) for s in range(1, 5)]
        cases += [(3, 4, 3, 1), (3, 4, 3, 2)]
        for q, n, r, s in cases:
            with self.subTest(q=q, n=n, r=r, s=s):
                curve = curve_new(q=q, n=n, r=r, s=s)
                self.assertEqual(len(curve.points()), q ** (n + s))

    def check_semigroup(self, q, n, r, s, generators=None):
        curve = curve_new(q=q, n=n, r=r, s=s)
        data = curve.weierstrass_semigroup()
        self.assertEqual(data.semigroup.genus, q**r * (q**s - 1) // 2)
        self.assertEqual(data.semigroup.genus, curve.genus)
        if generators is not None:
            self.assertEqual(data.semigroup, NumericalSemigroup(generators))

    def test_genus_matches_semigroup(self):
        for q, n, r, s, generators in (
            (2, 4, 3, 1, [2, 9]),
            (2, 4, 3, 2, [4, 9]),
            (2, 5, 3, 1, [2, 9]),
            (2, 5, 3, 2, None),
            (2, 5, 4, 1, [2, 17]),
            (2, 5, 4, 2, [4, 17]),
            (3, 4, 3, 1, [3, 28]),
        ):
            with self.subTest(q=q, n=n, r=r, s=s):
                self.check_semigroup(q, n, r, s, generators)

    @unittest.skipUnless(SLOW, "set CASTLEPY_SLOW=1")
    def test_genus_matches_semigroup_large(self):
        for q, n, r, s, generators in (
            (2, 5, 3, 3, None),
            (2, 5, 4, 3, [8, 17]),
            (2, 5, 4, 4, [16, 24, 34, 129]),
            (3, 4, 3, 2, [9, 28]),
        ):
            with self.subTest(q=q, n=n, r=r, s=s):
                self.check_semigroup(q, n, r, s, generators)

    def test_expected_z_pole(self):
        self.assertEqual(expected_z_pole(2, 5, 3, 2, 1), 10)
        self.assertEqual(expected_z_pole(2, 4, 3, 3, 0), 12)
        self.assertEqual(expected_z_pole(2, 5, 3, 4, 1), 40)
        self.assertEqual(expected_z_pole(2, 5, 3, 1, 0), 9)

    def test_full_x53_z_pole(self):
        curve = curve_new(CurveParams.full(2, 5, 3))
        self.assertEqual(curve.genus, 60)
        self.assertEqual(curve.build_zwg().z_pole, 40)

    def test_n_two_refused(self):
        curve = curve_new(q=2, n=2, r=1, s=1)
        with self.assertRaises(ValidationError):
            curve.build_zwg()

    @unittest.skipUnless(SLOW, "set CASTLEPY_SLOW=1")
    def test_full_x53_semigroup(self):
        curve = curve_new(CurveParams.full(2, 5, 3))
        data = curve.weierstrass_semigroup()
        self.assertEqual(data.semigroup, NumericalSemigroup([16, 20, 34, 41]))


@unittest.skipUnless(SLOW, "set CASTLEPY_SLOW=1")
class TestCubicSubcover(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.curve = subcover_for(2, 5, 3, 3, EX45_GS, 1)

    def test_semigroup(self):
        data = self.curve.weierstrass_semigroup()
        self.assertEqual(data.semigroup.minimal_generators(), [8, 18, 20, 25])
        self.assertEqual(data.semigroup.apery_set(), [0, 25, 18, 43, 20, 45, 38, 63])
        self.assertEqual(self.curve.valuation(self.curve.y), -36)
        self.assertEqual(self.curve.build_zwg().z_pole, 20)

    def test_printed_functions_have_poles(self):
        for text in (
            "y^4 + y^2 + y + a^17*x^10 + a^17*x^9",
            "(a^7x^2 + a^14x + 1)y^4 + (a^7x^2 + a^14x)y^2 + (a^9x^2 + a^14x)y"
            " + a^24x^12 + a^15x^11 + a^30x^10 + a^17x^9 + a^24x^5",
        ):
            f = self.curve.function(text)
            self.assertLess(self.curve.valuation(f), 0)


if __name__ == "__main__":
    unittest.main()
