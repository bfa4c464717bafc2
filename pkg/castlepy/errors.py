# -*- coding: utf-8 -*-
"""
castlepy
Created on Mon Mar 10 09:12:41 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
from typing import Iterable


class ValidationError(ValueError):
    """Invalid parameters, inputs or violated preconditions."""


class DomainError(ValidationError):
    """Request that is mathematically undefined (dlog of 0, valuation of 0, ...)."""


class NotTelescopicError(ValidationError):
    """
    Raised when a sequence fails the telescopic membership test.

    Attributes:
        index (int): 1-based position of the first failing generator.
    """

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


class ConsistencyError(RuntimeError):
    """An internal identity, rank or closed-form cross-check failed."""


class DiscoveryError(ConsistencyError):
    """
    Raised when the Riemann-Roch discovery cannot realise every pole order.

    Attributes:
        missing (List[int]): Pole orders that stayed unrealised.
    """

    def __init__(self, missing: Iterable[int], message: str = None):
        self.missing = sorted(missing)
        if message is None:
            message = f"No function found for pole orders {self.missing}"
        super().__init__(message)


class BudgetError(RuntimeError):
    """A hard computation budget was exceeded."""


EXIT_CODES = (
    (BudgetError, 4),
    (ConsistencyError, 3),
    (ValueError, 2),
)


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit status (1 for anything unexpected)."""
    for cls, code in EXIT_CODES:
        if isinstance(error, cls):
            return code
    return 1
