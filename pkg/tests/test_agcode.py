# -*- coding: utf-8 -*-
"""
Created on Tue Mar 25 16:47:55 2025

@author: CU
"""
import os
import unittest
from unittest.mock import call, mock_open, patch

import numpy as np

from castlepy.agcode import LinearCode, OnePointCode, code_new, distance_witness
from castlepy.curves import curve_new
from castlepy.errors import ValidationError
from castlepy.finite_field import field_new

SLOW = os.environ.get("CASTLEPY_SLOW") == "1"


class TestLinearCode(unittest.TestCase):

    def setUp(self):
        self.F = field_new(2, 4)
        # [4, 2] code over GF(16)
        self.code = LinearCode(self.F, [[1, 0, 1, 1], [0, 1, 1, 2]])

    def test_dependent_rows_dropped(self):
        code = LinearCode(self.F, [[1, 0, 1, 1], [0, 1, 1, 2], [1, 1, 0, 3]])
        self.assertEqual(code.k, 2)
        self.assertEqual(code.G.shape, (2, 4))

    def test_shape_check(self):
        with self.assertRaises(ValidationError):
            LinearCode(self.F, [1, 0, 1])

    def test_encode(self):
        word = self.code.encode([1, 0])
        self.assertEqual(word.values, (1, 0, 1, 1))
        self.assertEqual(word.weight, 3)
        self.assertEqual(len(word), 4)
        with self.assertRaises(ValidationError):
            self.code.encode([1])

    def test_dual(self):
        dual = self.code.dual()
        self.assertEqual(dual.k, 2)
        product = (self.code.G @ dual.G.T).view(np.ndarray)
        self.assertFalse(product.any())

    def test_minimum_distance(self):
        self.assertEqual(self.code.minimum_distance(), 3)
        self.assertEqual(self.code.witness.weight, 3)
        self.assertIsNone(self.code.minimum_distance(budget=10))

    def test_zero_code(self):
        zero = LinearCode(self.F, [[0, 0, 0, 0]])
        self.assertEqual(zero.k, 0)
        with self.assertRaises(ValidationError):
            zero.minimum_distance()

    def test_shorten(self):
        short = self.code.shorten(1)
        self.assertEqual((short.length, short.k), (3, 1))
        self.assertEqual(short.header["shorten_s"], 1)
        with self.assertRaises(ValidationError):
            self.code.shorten(2)
        with self.assertRaises(ValidationError):
            self.code.shorten(1, positions=[7])
        with self.assertRaises(ValidationError):
            self.code.shorten(1, positions=[0, 1])

    @patch("os.makedirs")
    @patch("builtins.open", new_callable=mock_open)
    def test_write_matrix(self, mock_file, mock_makedirs):
        self.code.header["m"] = 3
        self.code.write_matrix("out/code.csv")
        mock_makedirs.assert_called_once_with("out", exist_ok=True)
        mock_file.assert_called_once_with("out/code.csv", "w")
        handle = mock_file()
        self.assertEqual(
            handle.write.call_args_list,
            [
                call("# length=4 k=2 m=3\n"),
                call("1,0,1,1\n"),
                call("0,1,1,a\n"),
            ],
        )


class TestOnePointCode(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.curve = curve_new(q=2, n=4, r=3, s=3)

    def test_dimensions(self):
        for m, k in ((16, 4), (20, 6), (24, 7)):
            code = code_new(self.curve, m)
            self.assertEqual((code.length, code.k), (128, k))
            self.assertEqual(code.k, code.semigroup.iota(m))
            self.assertEqual(code.designed_distance, 128 - m)
        self.assertEqual(code.singleton, 122)

    def test_header(self):
        code = code_new(self.curve, 16)
        self.assertEqual(
            code.header, {"q": 2, "n": 4, "r": 3, "s": 3, "m": 16, "length": 128, "k": 4}
        )

    def test_rejects_m(self):
        for m in (-1, 2.5, True):
            with self.assertRaises(ValidationError):
                OnePointCode(self.curve, m)

    def test_exact_distance(self):
        code = code_new(self.curve, 16)
        self.assertEqual(code.minimum_distance(), 112)
        self.assertEqual(code.witness.weight, 112)

    def test_abundant(self):
        code = code_new(self.curve, 128 + 8)
        self.assertTrue(code.is_abundant)
        iota = code.semigroup.iota
        self.assertEqual(code.k, iota(136) - iota(8))
        self.assertIsNone(code.designed_distance)

    def test_duality(self):
        for m in (16, 20, 24):
            code = code_new(self.curve, m)
            partner = code.dual_isometry_partner()
            self.assertEqual(partner, 128 + 54 - m)
            self.assertEqual(code.dual().k, code_new(self.curve, partner).k)

    def test_shortening_rank(self):
        code = code_new(self.curve, 100)
        for s in (1, 3):
            short = code.shorten(s)
            self.assertEqual((short.length, short.k), (128 - s, code.k - s))

    @unittest.skipUnless(SLOW, "set CASTLEPY_SLOW=1")
    def test_exact_distance_m20(self):
        code = code_new(self.curve, 20)
        self.assertEqual(code.minimum_distance(budget=2**24, workers=2), 108)


class TestDistanceWitness(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.curve = curve_new(q=2, n=4, r=3, s=3)

    def test_vertical_lines(self):
        for a in (1, 2, 4):
            witness = distance_witness(self.curve, 8 * a, 1)
            self.assertEqual(witness.weight, 128 - 8 * a)
            self.assertEqual(witness.codeword.weight, witness.predicted)
            self.assertEqual(-self.curve.valuation(witness.function), 8 * a)

    def test_mixed_lines(self):
        witness = distance_witness(self.curve, 20, 2)
        self.assertEqual(witness.predicted, 108)
        self.assertEqual(witness.weight, 108)
        self.assertEqual(witness.to_dict()["case"], 2)

    def test_reported_case(self):
        witness = distance_witness(self.curve, 128 - 8 + 2, 3)
        self.assertIsNone(witness.weight)
        self.assertEqual(witness.candidates, {"statement": 8, "proof": 4})

    def test_rejects(self):
        with self.assertRaises(ValidationError):
            distance_witness(self.curve, 12, 1)
        with self.assertRaises(ValidationError):
            distance_witness(self.curve, 16, 4)
        with self.assertRaises(ValidationError):
            distance_witness(self.curve, 20, 2, gamma=self.curve.field.generator)
        with self.assertRaises(ValidationError):
            distance_witness(curve_new(q=2, n=4, r=3, s=2), 8, 1)


if __name__ == "__main__":
    unittest.main()
