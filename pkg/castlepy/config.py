# -*- coding: utf-8 -*-
"""
castlepy
Created on Tue Apr  1 10:12:47 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import copy
import os
from typing import Any, Dict, List, Optional

import pytomlpp as toml

from castlepy.curves.curve import MODELS
from castlepy.errors import ValidationError


class RunConfig:
    """
    Run-wide settings shared by the command-line front end.

    Attributes:
        modulus (List[int], optional): Ascending coefficients of the
            GF(q^n) modulus. None selects the Conway polynomial.
        deepening_cap (int): Largest multiple of the start bound discovery
            may deepen to.
        distance_budget (int): Largest message space the exact distance
            search enumerates.
        output_dir (str): Directory for matrices, reports and ledgers.
        workers (int): Worker processes for the exact distance search.
        model (str): "reduced" or "trace".
        model_sign (int): +1 or -1.
    """

    KEYS = (
        "modulus",
        "deepening_cap",
        "distance_budget",
        "output_dir",
        "workers",
        "model",
        "model_sign",
    )

    def __init__(
        self,
        modulus: Optional[List[int]] = None,
        deepening_cap: int = 16,
        distance_budget: int = 2**24,
        output_dir: str = ".",
        workers: int = 1,
        model: str = "reduced",
        model_sign: int = 1,
    ):
        self.modulus = modulus
        self.deepening_cap = deepening_cap
        self.distance_budget = distance_budget
        self.output_dir = output_dir
        self.workers = workers
        self.model = model
        self.model_sign = model_sign

    @staticmethod
    def _positive_int(name: str, value) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{name} must be an integer. Got {value!r}")
        if value < 1:
            raise ValidationError(f"{name} must be greater than 0. Got {value}")
        return value

    @property
    def modulus(self):
        return self._modulus

    @modulus.setter
    def modulus(self, value):
        if value is not None:
            try:
                value = [int(c) for c in value]
            except (TypeError, ValueError):
                raise ValidationError(f"modulus must be a list of integers. Got {value!r}")
            if len(value) < 2 or value[-1] != 1:
                raise ValidationError(
                    f"modulus must be monic with ascending coefficients. Got {value}"
                )
        self._modulus = value

    @property
    def deepening_cap(self):
        return self._deepening_cap

    @deepening_cap.setter
    def deepening_cap(self, value):
        self._deepening_cap = self._positive_int("deepening_cap", value)

    @property
    def distance_budget(self):
        return self._distance_budget

    @distance_budget.setter
    def distance_budget(self, value):
        self._distance_budget = self._positive_int("distance_budget", value)

    @property
    def workers(self):
        return self._workers

    @workers.setter
    def workers(self, value):
        self._workers = self._positive_int("workers", value)

    @property
    def output_dir(self):
        return self._output_dir

    @output_dir.setter
    def output_dir(self, value):
        value = str(value)
        if not value.strip():
            raise ValidationError("output_dir must be a non-empty path.")
        self._output_dir = value

    @property
    def model(self):
        return self._model

    @model.setter
    def model(self, value):
        if value not in MODELS:
            raise ValidationError(f"model must be one of {', '.join(MODELS)}. Got {value!r}")
        self._model = value

    @property
    def model_sign(self):
        return self._model_sign

    @model_sign.setter
    def model_sign(self, value):
        if value not in (1, -1):
            raise ValidationError(f"model_sign must be 1 or -1. Got {value!r}")
        self._model_sign = int(value)

    def output_path(self, name: str) -> str:
        """
        Path of ``name`` inside the output directory, created on demand.

        Raises:
            ValidationError: If the directory cannot be created or written.
        """
        try:
            os.makedirs(self.output_dir, exist_ok=True)
        except OSError as e:
            raise ValidationError(f"cannot create output_dir {self.output_dir}: {e}")
        if not os.access(self.output_dir, os.W_OK):
            raise ValidationError(f"output_dir {self.output_dir} is not writable")
        return os.path.join(self.output_dir, name)

    def update(self, **overrides) -> "RunConfig":
        """Apply overrides in place, skipping None values (unset CLI flags)."""
        for key, value in overrides.items():
            if key not in self.KEYS:
                raise ValidationError(f"unknown config key {key!r}")
            if value is not None:
                setattr(self, key, value)
        return self

    def duplicate(self) -> "RunConfig":
        """
        Create a duplicate of the current configuration.

        Returns:
            RunConfig: A copy whose changes leave this instance untouched.
        """
        duplicate = copy.copy(self)
        if self.modulus is not None:
            duplicate.modulus = list(self.modulus)
        return duplicate

    def to_dict(self) -> Dict[str, Any]:
        data = {key: getattr(self, key) for key in self.KEYS}
        # TOML has no null
        if data["modulus"] is None:
            del data["modulus"]
        return data

    def export(self, file_path: str = None):
        """
        Export the configuration to a .toml file.

        Parameters:
            file_path (str, optional): Target path. Defaults to
                ``castlepy.toml`` in the output directory.
        """
        if file_path is None:
            file_path = self.output_path("castlepy.toml")
        if not file_path.endswith(".toml"):
            file_path += ".toml"
        with open(file_path, "w") as toml_file:
            toml.dump(self.to_dict(), toml_file)

    @classmethod
    def load_single(cls, file_path: str) -> "RunConfig":
        """
        Load a configuration from a flat .toml file.

        Parameters:
            file_path (str): The path to the .toml file.

        Returns:
            RunConfig: The loaded configuration.

        Raises:
            FileNotFoundError: If the file at file_path does not exist.
            ValueError: If the file cannot be parsed or holds invalid or
                unknown keys.
        """
        if not os.path.isfile(file_path):
            raise FileNotFoundError(f"File not found: {file_path}")

        try:
            with open(file_path, "r") as toml_file:
                data = toml.load(toml_file)
            unknown = sorted(set(data) - set(cls.KEYS))
            if unknown:
                raise ValidationError(f"unknown keys {unknown}")
            instance = cls(**data)
        except Exception as e:
            raise ValidationError(f"Error creating RunConfig from file {file_path}: {e}")
        return instance

    def __repr__(self) -> str:
        items = ", ".join(f"{key}={getattr(self, key)!r}" for key in self.KEYS)
        return f"RunConfig({items})"
