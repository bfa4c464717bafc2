# -*- coding: utf-8 -*-
"""
castlepy
Created on Tue Mar 18 10:12:44 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from castlepy.curves.function import CurveFunction, _is_zero
from castlepy.curves.valuation import ValuationOracle
from castlepy.errors import ConsistencyError, ValidationError
from castlepy.finite_field import Field, FieldElement, field_new, prime_power
from castlepy.qpoly import (
    BivariatePoly,
    QPolynomial,
    check_nr,
    f_r_poly,
    inner_factor,
    trace_split,
)

log = logging.getLogger("castlepy.curves.curve")

MODELS = ("reduced", "trace")


def full_curve_generators(q: int, n: int, r: int) -> Tuple[int, ...]:
    """Generators of H(P_inf) on the full curve X_{n,r}."""
    check_nr(n, r)
    return (
        q ** (n - 1),
        q ** (n - 1) + q ** (r - 1),
        q ** (2 * r - 1) + q ** (n - r - 1),
        q**n + q ** (n - r),
        q ** (2 * r) - q**n + q**r + 1,
    )


class CurveParams:
    """
    Parameters of the subcover X^s_{n,r}: g_s(y) = RHS(x) over GF(q^n).

    Attributes:
        q (int): Prime power q = p^e.
        p (int): Characteristic.
        e (int): Exponent of q over p.
        n (int): Degree of GF(q^n) over GF(q).
        r (int): Second curve exponent, gcd(n, r) = 1.
        s (int): Degree exponent of g_s, 1 <= s <= n-1.
        model (str): "reduced" for RHS = x^(q^n+q^(n-r)) - x^(q^(n-r)+1),
            "trace" for RHS = f_r(x).
        model_sign (int): +1 or -1, multiplies the right-hand side.
        field (Field): GF(q^n).
        g_s (QPolynomial): Monic separable q-polynomial of degree q^s
            dividing T_n from the left.
    """

    def __init__(
        self,
        q: int,
        n: int,
        r: int,
        s: Optional[int] = None,
        g_s: Union[QPolynomial, str, Sequence[int], None] = None,
        model: str = "reduced",
        model_sign: int = 1,
        modulus: Optional[Sequence[int]] = None,
        subspace_choice: Optional[Sequence[FieldElement]] = None,
    ):
        self.q = q
        self.n = n
        self.r = r
        self.model = model
        self.model_sign = model_sign
        self.modulus = None if modulus is None else tuple(int(c) for c in modulus)
        self.field = field_new(self.p, self.e * self.n, self.modulus)
        if g_s is not None:
            g_s = self._coerce_g_s(g_s)
            if s is None:
                s = g_s.degree_index
        self.s = n - 1 if s is None else s
        self.g_s = self._resolve_g_s(g_s, subspace_choice)

    @classmethod
    def full(cls, q: int, n: int, r: int, **kwargs) -> "CurveParams":
        """The full curve X_{n,r}: s = n-1 and g_s = T_n."""
        return cls(q, n, r, s=n - 1, g_s=None, **kwargs)

    @property
    def q(self):
        return self._q

    @q.setter
    def q(self, value):
        self.p, self.e = prime_power(value)
        self._q = int(value)

    @property
    def n(self):
        return self._n

    @n.setter
    def n(self, value):
        if isinstance(value, bool) or not isinstance(value, int) or value < 2:
            raise ValidationError(f"n must be an integer >= 2. Got {value!r}")
        self._n = value

    @property
    def r(self):
        return self._r

    @r.setter
    def r(self, value):
        check_nr(self.n, value)
        self._r = value

    @property
    def s(self):
        return self._s

    @s.setter
    def s(self, value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"s must be an integer. Got {value!r}")
        if not 1 <= value <= self.n - 1:
            raise ValidationError(f"s must satisfy 1 <= s <= n-1 = {self.n - 1}. Got {value}")
        self._s = value

    @property
    def model(self):
        return self._model

    @model.setter
    def model(self, value):
        if value not in MODELS:
            raise ValidationError(f"model must be one of {MODELS}. Got {value!r}")
        self._model = value

    @property
    def model_sign(self):
        return self._model_sign

    @model_sign.setter
    def model_sign(self, value):
        if value not in (1, -1):
            raise ValidationError(f"model_sign must be +1 or -1. Got {value!r}")
        self._model_sign = int(value)

    @property
    def is_full(self) -> bool:
        return self.s == self.n - 1 and self.g_s == QPolynomial.trace(
            self.field, self.q, self.n
        )

    def _coerce_g_s(self, g_s) -> QPolynomial:
        field, q = self.field, self.q
        if isinstance(g_s, str):
            return QPolynomial.parse(g_s, field, q)
        if isinstance(g_s, QPolynomial):
            if g_s.field != field or g_s.q != q:
                raise ValidationError(f"g_s lives over {g_s.field}, expected {field}")
            return g_s
        return QPolynomial(field, q, [field.parse(c) if isinstance(c, str) else int(c) for c in g_s])

    def _resolve_g_s(self, g_s, subspace_choice) -> QPolynomial:
        field, q, n, s = self.field, self.q, self.n, self.s
        if g_s is None:
            if s == n - 1:
                return QPolynomial.trace(field, q, n)
            _, poly = trace_split(field, q, n, s, subspace_choice)
            return poly
        if subspace_choice is not None:
            raise ValidationError("pass either g_s or subspace_choice, not both")
        poly = g_s
        if not poly.is_monic():
            raise ValidationError(f"g_s must be monic. Got {poly.to_text()}")
        if not poly.is_separable():
            raise ValidationError(f"g_s must be separable (nonzero y coefficient). Got {poly.to_text()}")
        if poly.degree_index != s:
            raise ValidationError(
                f"g_s must have degree q^{s}. Got degree q^{poly.degree_index}"
            )
        if len(poly.roots()) != q**s:
            raise ValidationError(f"g_s = {poly.to_text()} does not split over {field}")
        inner_factor(poly, n)
        return poly

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "n": self.n,
            "r": self.r,
            "s": self.s,
            "model": self.model,
            "model_sign": self.model_sign,
            "g_s": self.g_s.to_text(),
            "modulus": list(self.field.modulus),
        }

    def __repr__(self) -> str:
        return (
            f"CurveParams(q={self.q}, n={self.n}, r={self.r}, s={self.s}, "
            f"g_s={self.g_s.to_text()}, model={self.model!r})"
        )


class Curve:
    """
    The curve X^s_{n,r} with its rational points and function arithmetic.

    Attributes:
        params (CurveParams): Validated parameters.
        field (Field): GF(q^n).
        rhs (galois.Poly): Right-hand side of g_s(y) = RHS(x).
        x_weight (int): Pole order q^s of x.
        y_weight (int): Pole order of y; q^n + q^(n-r) on the reduced
            model, q^(n-1) + q^(r-1) on the trace model.
        genus (int): q^r (q^s - 1) / 2.
        expected_points (int): q^(n+s) + 1, including P_inf.
        oracle (ValuationOracle): Exact pole orders at P_inf.
    """

    def __init__(self, params: CurveParams):
        self.params = params
        self.field: Field = params.field
        self.q, self.n, self.r, self.s = params.q, params.n, params.r, params.s
        self.g_s: QPolynomial = params.g_s
        self.model = params.model
        self.model_sign = params.model_sign

        q, n, r, s = self.q, self.n, self.r, self.s
        self.rhs = self._build_rhs()
        self.x_weight = q**s
        if self.model == "reduced":
            self.y_weight = q**n + q ** (n - r)
        else:
            self.y_weight = q ** (n - 1) + q ** (r - 1)
        self.genus = q**r * (q**s - 1) // 2
        self.expected_points = q ** (n + s) + 1

        # y^(q^s) = rhs - sum_{i<s} c_i y^(q^i)
        self._tail = [
            (q**i, self.field.constant(c)) for i, c in enumerate(self.g_s.coeffs[:-1]) if c
        ]
        self.oracle = ValuationOracle(self)
        self._points: Optional[List[Tuple[FieldElement, FieldElement]]] = None
        self._weierstrass = {}
        self._zwg = None
        log.debug("curve: %r", params)

    def _build_rhs(self) -> galois.Poly:
        field, q, n, r = self.field, self.q, self.n, self.r
        if self.model == "reduced":
            hi, lo = q**n + q ** (n - r), q ** (n - r) + 1
            rhs = galois.Poly.Degrees([hi, lo], field.array([1, field.neg(1)]))
        else:
            rhs = f_r_poly(field, q, n, r)
        if self.model_sign == -1:
            rhs = -rhs
        return rhs

    def __repr__(self) -> str:
        return f"Curve(q={self.q}, n={self.n}, r={self.r}, s={self.s}, model={self.model!r})"

    @property
    def is_full(self) -> bool:
        return self.params.is_full

    # ------------------------------------------------------------------
    # functions
    # ------------------------------------------------------------------
    def reduce_parts(self, parts: List[galois.Poly]) -> Tuple[galois.Poly, ...]:
        """
        Rewrite y^(q^s) through the curve equation until every y-power is
        below q^s.

        Returns:
            Tuple[galois.Poly, ...]: Exactly q^s x-polynomials.
        """
        m = self.x_weight
        zero = galois.Poly.Zero(self.field.GF)
        parts = list(parts) + [zero] * max(0, m - len(parts))
        for j in range(len(parts) - 1, m - 1, -1):
            top = parts[j]
            if _is_zero(top):
                continue
            t = j - m
            parts[t] = parts[t] + top * self.rhs
            for shift, c in self._tail:
                parts[t + shift] = parts[t + shift] - top * c
        return tuple(parts[:m])

    def fn_reduce(self, poly: BivariatePoly) -> CurveFunction:
        return CurveFunction.from_bivariate(self, poly)

    def function(self, text: str) -> CurveFunction:
        """Parse a function such as ``y^4 + y^2 + y + a^17*x^10``."""
        return CurveFunction.parse(self, text)

    @property
    def x(self) -> CurveFunction:
        return CurveFunction.monomial(self, 1, 0)

    @property
    def y(self) -> CurveFunction:
        return CurveFunction.monomial(self, 0, 1)

    def valuation(self, f: CurveFunction) -> int:
        """v_{P_inf}(f) <= 0 for a nonzero polynomial function."""
        return -self.oracle.pole_order(f)

    # ------------------------------------------------------------------
    # points
    # ------------------------------------------------------------------
    def points(self) -> List[Tuple[FieldElement, FieldElement]]:
        """
        Affine rational points in canonical order (dlog of x, then of y).

        Raises:
            ConsistencyError: If the count is not q^(n+s).
        """
        if self._points is not None:
            return self._points
        field = self.field
        elements = list(field.elements())
        if self.model == "reduced":
            # x^(q^n) = x makes the right side vanish on every rational x
            roots = self.g_s.roots()
            points = [(x, y) for x in elements for y in roots]
        else:
            values = self.g_s.evaluate_array(field.array(elements)).view(np.ndarray)
            preimages: Dict[int, List[int]] = {}
            for y, v in zip(elements, values.tolist()):
                preimages.setdefault(int(v), []).append(y)
            targets = self.rhs(field.array(elements)).view(np.ndarray)
            points = [
                (x, y)
                for x, v in zip(elements, targets.tolist())
                for y in preimages.get(int(v), [])
            ]
        expected = self.expected_points - 1
        if len(points) != expected:
            raise ConsistencyError(
                f"{self!r} has {len(points)} affine points, expected {expected}"
            )
        self._points = points
        log.debug("points: %d affine points enumerated", len(points))
        return points

    def point_arrays(self) -> Tuple[galois.FieldArray, galois.FieldArray]:
        points = self.points()
        xs = self.field.array([x for x, _ in points])
        ys = self.field.array([y for _, y in points])
        return xs, ys

    # ------------------------------------------------------------------
    # Weierstrass semigroup
    # ------------------------------------------------------------------
    def build_zwg(self):
        from castlepy.curves.discovery import build_zwg

        if self._zwg is None:
            self._zwg = build_zwg(self)
        return self._zwg

    def weierstrass_semigroup(self, bound: Optional[int] = None, deepening_cap: int = 16):
        """See castlepy.curves.discovery.weierstrass_semigroup."""
        from castlepy.curves.discovery import weierstrass_semigroup

        key = (bound, deepening_cap)
        if key not in self._weierstrass:
            self._weierstrass[key] = weierstrass_semigroup(self, bound, deepening_cap)
        return self._weierstrass[key]

    def rr_basis(self, m: int) -> List[CurveFunction]:
        """Basis of L(m P_inf) ordered by pole order."""
        data = next(iter(self._weierstrass.values()), None) or self.weierstrass_semigroup()
        return data.rr_basis(m)

    def report(self, sample: int = 12, deepening_cap: int = 16) -> Dict[str, Any]:
        data = self.weierstrass_semigroup(deepening_cap=deepening_cap)
        total = len(self.points()) + 1
        basis = data.rr_basis(data.semigroup.element(sample))[:sample]
        return {
            "q": self.q,
            "n": self.n,
            "r": self.r,
            "s": self.s,
            "model": self.model,
            "g_s": self.g_s.to_text(),
            "genus": self.genus,
            "n_points": total,
            "castle": total == self.x_weight * self.q**self.n + 1,
            "semigroup": data.semigroup.to_dict(),
            "basis_sample": [[-self.valuation(f), f.to_text()] for f in basis],
        }


def curve_new(params: Optional[CurveParams] = None, **kwargs) -> Curve:
    """
    Build a curve from CurveParams or from CurveParams keyword arguments.

    Raises:
        ValidationError: If any parameter invariant fails.
    """
    if params is None:
        params = CurveParams(**kwargs)
    elif kwargs:
        raise ValidationError(f"unexpected keyword arguments {sorted(kwargs)} with params")
    curve = Curve(params)
    log.info("curve X^%d_{%d,%d} over GF(%d^%d): genus %d", curve.s, curve.n, curve.r, curve.q, curve.n, curve.genus)
    return curve
