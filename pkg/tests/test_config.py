# -*- coding: utf-8 -*-
"""
Created on Tue Apr  1 14:26:09 2025

@author: CU
"""
import os
import tempfile
import unittest
from unittest.mock import mock_open, patch

from castlepy.config import RunConfig
from castlepy.errors import ValidationError

CONFIGS = os.path.join(os.path.dirname(__file__), "test_configs")


class TestRunConfig(unittest.TestCase):

    def setUp(self):
        self.config = RunConfig()

    def test_default_initialization(self):
        self.assertIsNone(self.config.modulus)
        self.assertEqual(self.config.deepening_cap, 16)
        self.assertEqual(self.config.distance_budget, 2**24)
        self.assertEqual(self.config.output_dir, ".")
        self.assertEqual(self.config.workers, 1)
        self.assertEqual(self.config.model, "reduced")
        self.assertEqual(self.config.model_sign, 1)

    def test_validate_values(self):
        with self.assertRaises(ValidationError):
            RunConfig(deepening_cap=0)
        with self.assertRaises(ValidationError):
            RunConfig(distance_budget=True)
        with self.assertRaises(ValidationError):
            RunConfig(workers=1.5)
        with self.assertRaises(ValidationError):
            RunConfig(model="affine")
        with self.assertRaises(ValidationError):
            RunConfig(model_sign=0)
        with self.assertRaises(ValidationError):
            RunConfig(output_dir="  ")
        with self.assertRaises(ValidationError):
            RunConfig(modulus=[1, 0, 1, 0, 0, 2])
        with self.assertRaises(ValidationError):
            RunConfig(modulus="x^5")

    def test_update(self):
        self.config.update(workers=4, model=None)
        self.assertEqual(self.config.workers, 4)
        self.assertEqual(self.config.model, "reduced")
        with self.assertRaises(ValidationError):
            self.config.update(colour="red")

    def test_duplicate(self):
        self.config.modulus = [1, 0, 1, 0, 0, 1]
        duplicate = self.config.duplicate()
        duplicate.workers = 8
        duplicate.modulus.append(0)
        self.assertEqual(self.config.workers, 1)
        self.assertEqual(self.config.modulus, [1, 0, 1, 0, 0, 1])

    def test_to_dict(self):
        self.assertNotIn("modulus", self.config.to_dict())
        self.config.modulus = (1, 1, 0, 0, 1)
        self.assertEqual(self.config.to_dict()["modulus"], [1, 1, 0, 0, 1])

    def test_output_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.config.output_dir = os.path.join(tmp, "runs")
            path = self.config.output_path("records.csv")
            self.assertTrue(os.path.isdir(os.path.join(tmp, "runs")))
            self.assertEqual(path, os.path.join(tmp, "runs", "records.csv"))

    @patch("os.makedirs", side_effect=PermissionError("denied"))
    def test_output_path_unwritable(self, mock_makedirs):
        with self.assertRaises(ValidationError):
            self.config.output_path("records.csv")

    @patch("builtins.open", new_callable=mock_open)
    def test_export(self, mock_open_file):
        with patch("pytomlpp.dump") as mock_dump:
            self.config.export("castlepy_export")
        mock_open_file.assert_called_once_with("castlepy_export.toml", "w")
        mock_dump.assert_called_once_with(self.config.to_dict(), mock_open_file())

    @patch("builtins.open", new_callable=mock_open, read_data="workers = 3")
    @patch("os.path.isfile", return_value=True)
    def test_load_single_mocked(self, mock_isfile, mock_open_file):
        with patch("pytomlpp.load", return_value={"workers": 3, "model": "trace"}):
            config = RunConfig.load_single("configs/run.toml")
        self.assertEqual(config.workers, 3)
        self.assertEqual(config.model, "trace")
        mock_open_file.assert_called_once_with("configs/run.toml", "r")

    def test_load_single_file(self):
        config = RunConfig.load_single(os.path.join(CONFIGS, "subcover.toml"))
        self.assertEqual(config.deepening_cap, 24)
        self.assertEqual(config.distance_budget, 65536)
        self.assertEqual(config.output_dir, "out")
        self.assertEqual(config.workers, 2)
        self.assertEqual(config.model, "trace")
        self.assertEqual(config.model_sign, -1)
        self.assertEqual(config.modulus, [1, 0, 1, 0, 0, 1])

    def test_load_single_errors(self):
        with self.assertRaises(FileNotFoundError):
            RunConfig.load_single(os.path.join(CONFIGS, "missing.toml"))
        with self.assertRaises(ValidationError):
            RunConfig.load_single(os.path.join(CONFIGS, "unknown_key.toml"))
        with self.assertRaises(ValidationError):
            RunConfig.load_single(os.path.join(CONFIGS, "bad_workers.toml"))


if __name__ == "__main__":
    unittest.main()
