# -*- coding: utf-8 -*-
"""
Created on Thu Mar 27 15:08:22 2025

@author: CU
"""
import dataclasses
import os
import unittest
from unittest.mock import call, mock_open, patch

from castlepy.agcode import code_new
from castlepy.bounds import (
    BASE_CODES,
    Record,
    RecordLedger,
    bound_report,
    dstar,
    hstar,
    hstar_spot_check,
    hstar_verify,
    records_enumerate,
)
from castlepy.curves import curve_new
from castlepy.errors import ConsistencyError, ValidationError
from castlepy.numsemi import NumericalSemigroup

SLOW = os.environ.get("CASTLEPY_SLOW") == "1"


class TestHStar(unittest.TestCase):

    def setUp(self):
        self.hs = hstar(NumericalSemigroup([4, 10, 17]), 128)

    def test_elements(self):
        self.assertEqual(len(self.hs), 128)
        gaps = (1, 2, 3, 5, 6, 7, 9, 11, 13, 15, 19, 23)
        below_u = tuple(h for h in range(128) if h not in gaps)
        self.assertEqual(len(below_u), 116)
        self.assertEqual(self.hs.elements, below_u + tuple(128 + g for g in gaps))
        self.assertEqual(self.hs.elements[:11], (0, 4, 8, 10, 12, 14, 16, 17, 18, 20, 21))
        self.assertEqual(self.hs.elements[-3:], (143, 147, 151))
        self.assertIn(147, self.hs)
        self.assertNotIn(149, self.hs)
        self.assertNotIn(23, self.hs)

    def test_index(self):
        self.assertEqual(self.hs.index(0), 1)
        self.assertEqual(self.hs.index(151), 128)
        self.assertEqual(self.hs.floor_index(23), self.hs.index(22))
        with self.assertRaises(ValidationError):
            self.hs.index(23)
        with self.assertRaises(ValidationError):
            self.hs.floor_index(-1)

    def test_rejects_u(self):
        with self.assertRaises(ValidationError):
            hstar(NumericalSemigroup([4, 10, 17]), 0)

    def test_dstar_of_records(self):
        self.assertEqual(dstar(self.hs, 105), 24)
        self.assertEqual(dstar(self.hs, 109), 20)

    def test_dstar_outside_hstar(self):
        with self.assertWarns(UserWarning):
            d = dstar(self.hs, 23)
        self.assertEqual(d, dstar(self.hs, 22))

    def test_profile_nonincreasing(self):
        profile = self.hs.dstar_profile()
        self.assertEqual(len(profile), 128)
        bounds = [d for _, _, d in profile]
        self.assertEqual(bounds, sorted(bounds, reverse=True))
        for mi, count, d in profile:
            self.assertLessEqual(d, count)
        # the last code is the whole space
        self.assertEqual(profile[-1][1], 1)

    def test_to_dict(self):
        data = self.hs.to_dict()
        self.assertEqual(data["u"], 128)
        self.assertEqual(len(data["elements"]), 128)


class TestBoundReport(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.curve = curve_new(q=2, n=4, r=3, s=3)

    def test_goppa_is_sharp_at_16(self):
        code = code_new(self.curve, 16)
        report = bound_report(code, exact=112)
        self.assertEqual(report["designed_distance"], 112)
        self.assertEqual(report["dstar"], 112)
        self.assertEqual(report["singleton"], 125)
        self.assertEqual(report["exact_distance"], 112)

    def test_dstar_beats_goppa(self):
        hs = hstar(self.curve.weierstrass_semigroup().semigroup, 128)
        for m in (20, 24, 40, 60):
            code = code_new(self.curve, m)
            report = bound_report(code, hs)
            self.assertGreaterEqual(report["dstar"], report["designed_distance"])
            self.assertIsNone(report["exact_distance"])

    def test_spot_check(self):
        curve = curve_new(q=2, n=4, r=3, s=1)
        hs = hstar(curve.weierstrass_semigroup().semigroup, len(curve.points()))
        self.assertEqual(hstar_spot_check(curve, hs, range(0, 40)), [])

    def test_verify_rejects_wrong_hstar(self):
        curve = curve_new(q=2, n=4, r=3, s=1)
        hs = hstar(curve.weierstrass_semigroup().semigroup, len(curve.points()))
        hstar_verify(curve, hs, seed=7)
        wrong = dataclasses.replace(hs, elements=tuple(h for h in hs.elements if h != 2))
        with self.assertRaises(ConsistencyError):
            hstar_verify(curve, wrong, count=48)


class TestRecordLedger(unittest.TestCase):

    def test_check(self):
        ledger = RecordLedger(expected_count=2)
        ledger.add(Record(128, 94, 24, "ex44:m105"))
        ledger.add(Record(127, 93, 24, "ex44:m105", 1))
        ledger.check()

        ledger.add(Record(128, 94, 24, "ex44:m109"))
        with self.assertRaises(ConsistencyError):
            ledger.check()

    def test_count(self):
        ledger = RecordLedger(expected_count=3)
        ledger.add(Record(128, 94, 24, "ex44:m105"))
        with self.assertRaises(ConsistencyError):
            ledger.check()

    @patch("builtins.open", new_callable=mock_open)
    def test_write_csv(self, mock_file):
        ledger = RecordLedger()
        ledger.add(Record(128, 94, 24, "ex44:m105"))
        ledger.add(Record(127, 93, 24, "ex44:m105", 1))
        ledger.write_csv("records.csv")
        mock_file.assert_called_once_with("records.csv", "w", newline="")
        self.assertEqual(
            mock_file().write.call_args_list,
            [
                call("length,k,d,source,shorten_s\n"),
                call("128,94,24,ex44:m105,0\n"),
                call("127,93,24,ex44:m105,1\n"),
            ],
        )

    def test_to_dict(self):
        ledger = RecordLedger()
        ledger.add(Record(121, 87, 24, "ex44:m105", 7))
        self.assertEqual(ledger.to_dict(), {"count": 1, "records": [[121, 87, 24, "ex44:m105", 7]]})


class TestRecordsEnumerate(unittest.TestCase):

    def test_base_codes(self):
        self.assertEqual(sum(1 + base.shortenings for base in BASE_CODES), 108)
        self.assertEqual(BASE_CODES[0].source, "ex44:m105")

    def test_rejects_only(self):
        with self.assertRaises(ValidationError):
            records_enumerate(only="ex46")

    def test_fast_ex44(self):
        ledger = records_enumerate(only="ex44", verify=False)
        self.assertEqual(len(ledger), 16)
        triples = [rec.triple() for rec in ledger.records]
        self.assertEqual(triples[0], (128, 94, 24))
        self.assertIn((121, 87, 24), triples)
        self.assertIn((121, 91, 20), triples)

    @patch("castlepy.bounds.hstar_spot_check", return_value=[5])
    def test_bad_hstar_raises(self, mock_check):
        with self.assertRaises(ConsistencyError):
            records_enumerate(only="ex44", verify=False)
        mock_check.assert_called_once()
        samples = mock_check.call_args[0][2]
        self.assertEqual(len(samples), 10)
        self.assertLess(max(samples), 128 + 2 * 12)

    @unittest.skipUnless(SLOW, "set CASTLEPY_SLOW=1")
    def test_full_ledger(self):
        ledger = records_enumerate()
        self.assertEqual(len(ledger), 108)
        triples = {rec.triple() for rec in ledger.records}
        self.assertIn((256, 174, 56), triples)
        self.assertIn((240, 176, 38), triples)


if __name__ == "__main__":
    unittest.main()
