# -*- coding: utf-8 -*-
"""
castlepy
Created on Tue Mar 18 10:02:51 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
from .curve import Curve, CurveParams, curve_new, full_curve_generators
from .discovery import (
    AperyTable,
    WeierstrassData,
    ZWGSet,
    build_zwg,
    discover,
    weierstrass_semigroup,
)
from .function import CurveFunction
from .valuation import ValuationOracle

__all__ = [
    "AperyTable",
    "Curve",
    "CurveFunction",
    "CurveParams",
    "ValuationOracle",
    "WeierstrassData",
    "ZWGSet",
    "build_zwg",
    "curve_new",
    "discover",
    "full_curve_generators",
    "weierstrass_semigroup",
]
