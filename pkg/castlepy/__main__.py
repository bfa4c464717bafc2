# -*- coding: utf-8 -*-
"""
castlepy
Created on Wed Apr  2 16:40:09 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import sys

from castlepy.cli import main

sys.exit(main())
