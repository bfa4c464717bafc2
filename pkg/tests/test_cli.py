# -*- coding: utf-8 -*-
"""
Created on Wed Apr  2 11:37:50 2025

@author: CU
"""
import argparse
import io
import json
import os
import tempfile
import unittest
from unittest.mock import patch

from castlepy.bounds import Record, RecordLedger
from castlepy.cli import _modulus, build_parser, load_config, main

CONFIGS = os.path.join(os.path.dirname(__file__), "test_configs")
X43 = ["--q", "2", "--n", "4", "--r", "3"]


class TestParser(unittest.TestCase):

    def setUp(self):
        self.parser = build_parser()

    def test_code_arguments(self):
        args = self.parser.parse_args(["code", *X43, "--full", "--m", "16", "--exact"])
        self.assertEqual((args.q, args.n, args.r, args.m), (2, 4, 3, 16))
        self.assertTrue(args.full)
        self.assertTrue(args.exact)
        self.assertEqual(args.shorten, 0)
        self.assertIsNone(args.distance_budget)
        self.assertIsNone(args.verbosity)

    def test_quiet_is_not_q(self):
        args = self.parser.parse_args(["bounds", *X43, "--s", "2", "-q"])
        self.assertEqual(args.q, 2)
        self.assertEqual(args.verbosity, -1)

    def test_exclusive_curve_choice(self):
        with patch("sys.stderr", new_callable=io.StringIO):
            with self.assertRaises(SystemExit):
                self.parser.parse_args(["curve", *X43, "--s", "2", "--full"])
            with self.assertRaises(SystemExit):
                self.parser.parse_args(["records", "--only", "ex46"])

    def test_modulus(self):
        self.assertEqual(_modulus("1,0,1,0,0,1"), [1, 0, 1, 0, 0, 1])
        with self.assertRaises(argparse.ArgumentTypeError):
            _modulus("1,x")

    def test_load_config_overrides(self):
        path = os.path.join(CONFIGS, "subcover.toml")
        args = self.parser.parse_args(["code", *X43, "--m", "8", "--config", path, "--workers", "5"])
        config = load_config(args)
        self.assertEqual(config.workers, 5)
        self.assertEqual(config.model, "trace")
        self.assertEqual(config.deepening_cap, 24)


class TestMain(unittest.TestCase):

    def test_invalid_parameters_exit_2(self):
        self.assertEqual(main(["curve", "--q", "2", "--n", "4", "--r", "2", "-q"]), 2)

    def test_missing_config_exit_2(self):
        missing = os.path.join(CONFIGS, "missing.toml")
        self.assertEqual(main(["curve", *X43, "--config", missing, "-q"]), 2)

    def test_records_exact_exit_4(self):
        self.assertEqual(main(["records", "--exact", "-q"]), 4)

    @patch("castlepy.cli.cmd_curve", side_effect=KeyError("boom"))
    def test_unexpected_exit_1(self, mock_cmd):
        with patch("sys.stderr", new_callable=io.StringIO):
            self.assertEqual(main(["curve", *X43, "-q"]), 1)
        mock_cmd.assert_called_once()

    @patch("castlepy.cli.cmd_bounds", return_value=0)
    def test_dispatch(self, mock_cmd):
        self.assertEqual(main(["bounds", *X43, "--s", "1", "--m", "8", "-q"]), 0)
        args, config = mock_cmd.call_args[0]
        self.assertEqual(args.m, 8)
        self.assertEqual(config.model, "reduced")


class TestOutputs(unittest.TestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def test_code_files(self):
        argv = ["code", *X43, "--s", "1", "--m", "8", "--output-dir", self.tmp, "-q"]
        self.assertEqual(main(argv), 0)
        stem = os.path.join(self.tmp, "code_q2_n4_r3_s1_reduced_m8")
        with open(stem + ".json") as file:
            report = json.load(file)
        self.assertEqual((report["length"], report["k"]), (32, 5))
        self.assertEqual(report["designed_distance"], 24)
        self.assertIsNone(report["exact_distance"])
        with open(stem + ".csv") as file:
            lines = file.read().splitlines()
        self.assertEqual(lines[0], "# q=2 n=4 r=3 s=1 m=8 length=32 k=5")
        self.assertEqual(len(lines), 6)

    def test_code_exact_and_shorten(self):
        argv = [
            "code", *X43, "--s", "1", "--m", "8", "--shorten", "1", "--exact",
            "--output-dir", self.tmp, "-q",
        ]
        with patch("sys.stdout", new_callable=io.StringIO) as out:
            self.assertEqual(main(argv + ["--json"]), 0)
        report = json.loads(out.getvalue())
        self.assertEqual((report["length"], report["k"]), (31, 4))
        self.assertFalse(report["exact_refused"])
        self.assertGreaterEqual(report["exact_distance"], 24)
        self.assertTrue(
            os.path.isfile(os.path.join(self.tmp, "code_q2_n4_r3_s1_reduced_m8_sh1.csv"))
        )

    def test_exact_refused(self):
        argv = [
            "code", *X43, "--s", "1", "--m", "8", "--exact", "--budget", "100",
            "--output-dir", self.tmp, "-q",
        ]
        self.assertEqual(main(argv), 0)
        with open(os.path.join(self.tmp, "code_q2_n4_r3_s1_reduced_m8.json")) as file:
            report = json.load(file)
        self.assertTrue(report["exact_refused"])

    def test_bounds_lookup(self):
        argv = ["bounds", *X43, "--s", "1", "--m", "8", "--output-dir", self.tmp, "-q"]
        self.assertEqual(main(argv), 0)
        with open(os.path.join(self.tmp, "bounds_q2_n4_r3_s1_reduced_m8.json")) as file:
            report = json.load(file)
        self.assertEqual(report["u"], 32)
        self.assertEqual(len(report["hstar"]), 32)
        self.assertGreaterEqual(report["dstar"], 24)

    def test_semigroup_printed_order(self):
        argv = ["semigroup", *X43, "--full", "--output-dir", self.tmp, "-q"]
        self.assertEqual(main(argv), 0)
        with open(os.path.join(self.tmp, "semigroup_q2_n4_r3_s3_reduced.json")) as file:
            report = json.load(file)
        self.assertEqual(report["printed_order"], [8, 12, 33, 18, 57])
        self.assertFalse(report["printed_order_telescopic"])
        self.assertEqual(report["genus"], 28)

    @patch("castlepy.cli.records_enumerate")
    def test_records_csv(self, mock_enumerate):
        ledger = RecordLedger()
        ledger.add(Record(128, 94, 24, "ex44:m105"))
        mock_enumerate.return_value = ledger
        argv = ["records", "--only", "ex44", "--fast", "--output-dir", self.tmp, "-q"]
        self.assertEqual(main(argv), 0)
        mock_enumerate.assert_called_once_with(
            only="ex44", verify=False, modulus=None, deepening_cap=16
        )
        with open(os.path.join(self.tmp, "records_ex44.csv")) as file:
            self.assertEqual(
                file.read(), "length,k,d,source,shorten_s\n128,94,24,ex44:m105,0\n"
            )


if __name__ == "__main__":
    unittest.main()
