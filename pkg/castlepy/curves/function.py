# -*- coding: utf-8 -*-
"""
castlepy
Created on Fri Mar 14 11:05:37 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
from typing import TYPE_CHECKING, Dict, Sequence, Tuple

import galois

from castlepy.errors import DomainError, ValidationError
from castlepy.finite_field import FieldElement
from castlepy.qpoly import BivariatePoly

if TYPE_CHECKING:
    from castlepy.curves.curve import Curve


def _is_zero(poly: galois.Poly) -> bool:
    return poly.degree == 0 and int(poly.coeffs[0]) == 0


def _frobenius_poly(poly: galois.Poly, power: int) -> galois.Poly:
    if _is_zero(poly):
        return poly
    return galois.Poly.Degrees(
        poly.nonzero_degrees * power, poly.nonzero_coeffs**power
    )


class CurveFunction:
    """
    Polynomial function on a curve g_s(y) = RHS(x), kept in reduced form.

    The function is sum_j parts[j](x) * y^j with j < q^s; every arithmetic
    result is reduced with y^(q^s) -> RHS(x) - (lower terms of g_s), so
    equal functions have equal parts.

    Attributes:
        curve (Curve): Owning curve.
        parts (Tuple[galois.Poly, ...]): One x-polynomial per y-power.
    """

    __slots__ = ("curve", "parts")

    def __init__(self, curve: "Curve", parts: Sequence[galois.Poly]):
        self.curve = curve
        self.parts = curve.reduce_parts(list(parts))

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def constant(cls, curve: "Curve", c: FieldElement) -> "CurveFunction":
        return cls(curve, [curve.field.constant(c)])

    @classmethod
    def x_power(cls, curve: "Curve", i: int, c: FieldElement = 1) -> "CurveFunction":
        return cls(curve, [galois.Poly.Degrees([i], curve.field.array([c]))])

    @classmethod
    def monomial(cls, curve: "Curve", i: int, j: int, c: FieldElement = 1) -> "CurveFunction":
        zero = galois.Poly.Zero(curve.field.GF)
        parts = [zero] * j + [galois.Poly.Degrees([i], curve.field.array([c]))]
        return cls(curve, parts)

    @classmethod
    def from_bivariate(cls, curve: "Curve", poly: BivariatePoly) -> "CurveFunction":
        if poly.field != curve.field:
            raise ValidationError(f"polynomial over {poly.field} used on a curve over {curve.field}")
        by_y: Dict[int, Dict[int, int]] = {}
        for (i, j), c in poly.terms.items():
            by_y.setdefault(j, {})[i] = c
        field = curve.field
        parts = [galois.Poly.Zero(field.GF)] * (max(by_y, default=0) + 1)
        for j, row in by_y.items():
            degrees = sorted(row)
            parts[j] = galois.Poly.Degrees(degrees, field.array([row[i] for i in degrees]))
        return cls(curve, parts)

    @classmethod
    def parse(cls, curve: "Curve", text: str) -> "CurveFunction":
        from castlepy.qpoly import parse_poly

        return cls.from_bivariate(curve, parse_poly(text, curve.field, curve.q))

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def _check(self, other: "CurveFunction"):
        if not isinstance(other, CurveFunction) or other.curve is not self.curve:
            raise ValidationError("functions live on different curves")

    def is_zero(self) -> bool:
        return all(_is_zero(p) for p in self.parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurveFunction) or other.curve is not self.curve:
            return False
        return self.terms() == other.terms()

    def __hash__(self):
        return hash(frozenset(self.terms().items()))

    def __add__(self, other: "CurveFunction") -> "CurveFunction":
        self._check(other)
        size = max(len(self.parts), len(other.parts))
        zero = galois.Poly.Zero(self.curve.field.GF)
        a = list(self.parts) + [zero] * (size - len(self.parts))
        b = list(other.parts) + [zero] * (size - len(other.parts))
        return CurveFunction(self.curve, [u + v for u, v in zip(a, b)])

    def __neg__(self) -> "CurveFunction":
        return CurveFunction(self.curve, [-p for p in self.parts])

    def __sub__(self, other: "CurveFunction") -> "CurveFunction":
        return self + (-other)

    def __mul__(self, other: "CurveFunction") -> "CurveFunction":
        self._check(other)
        zero = galois.Poly.Zero(self.curve.field.GF)
        out = [zero] * (len(self.parts) + len(other.parts) - 1)
        for j1, p1 in enumerate(self.parts):
            if _is_zero(p1):
                continue
            for j2, p2 in enumerate(other.parts):
                if not _is_zero(p2):
                    out[j1 + j2] = out[j1 + j2] + p1 * p2
        return CurveFunction(self.curve, out)

    def scale(self, c: FieldElement) -> "CurveFunction":
        const = self.curve.field.constant(c)
        return CurveFunction(self.curve, [p * const for p in self.parts])

    def shift_x(self, a: int) -> "CurveFunction":
        """Multiply by x^a."""
        if a == 0:
            return self
        xa = galois.Poly.Degrees([a], self.curve.field.array([1]))
        return CurveFunction(self.curve, [p * xa for p in self.parts])

    def frobenius(self, power: int) -> "CurveFunction":
        """Raise to ``power``, a power of the characteristic."""
        p = self.curve.field.p
        value = power
        while value % p == 0:
            value //= p
        if value != 1:
            raise ValidationError(f"frobenius needs a power of {p}. Got {power}")
        zero = galois.Poly.Zero(self.curve.field.GF)
        out = [zero] * ((len(self.parts) - 1) * power + 1)
        for j, part in enumerate(self.parts):
            out[j * power] = _frobenius_poly(part, power)
        return CurveFunction(self.curve, out)

    def __pow__(self, k: int) -> "CurveFunction":
        if k < 0:
            raise DomainError("negative powers are not polynomial functions")
        result = CurveFunction.constant(self.curve, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    def terms(self) -> Dict[Tuple[int, int], int]:
        out = {}
        for j, part in enumerate(self.parts):
            if _is_zero(part):
                continue
            for i, c in zip(part.nonzero_degrees.tolist(), part.nonzero_coeffs.tolist()):
                out[(int(i), j)] = int(c)
        return out

    def naive_weights(self) -> Dict[Tuple[int, int], int]:
        """Weight i*w_x + j*w_y of every monomial."""
        wx, wy = self.curve.x_weight, self.curve.y_weight
        return {(i, j): i * wx + j * wy for (i, j) in self.terms()}

    def naive_weight(self) -> int:
        weights = self.naive_weights()
        if not weights:
            raise DomainError("the zero function has no weight")
        return max(weights.values())

    def to_bivariate(self) -> BivariatePoly:
        return BivariatePoly(self.curve.field, self.terms())

    def to_text(self) -> str:
        return self.to_bivariate().to_text()

    def __repr__(self) -> str:
        return f"CurveFunction({self.to_text()})"

    def evaluate(self, xs: galois.FieldArray, ys: galois.FieldArray) -> galois.FieldArray:
        """Values at the points (xs[k], ys[k])."""
        total = self.curve.field.GF.Zeros(xs.shape)
        for j, part in enumerate(self.parts):
            if not _is_zero(part):
                total = total + part(xs) * ys**j
        return total
