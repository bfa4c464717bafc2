# -*- coding: utf-8 -*-
"""
castlepy
Created on Mon Mar 17 09:48:20 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import logging
from typing import TYPE_CHECKING, List, Tuple

import galois
import numpy as np

from castlepy.errors import ConsistencyError, DomainError
from castlepy.finite_field import Field, FieldElement

if TYPE_CHECKING:
    from castlepy.curves.curve import Curve
    from castlepy.curves.function import CurveFunction

log = logging.getLogger("castlepy.curves.valuation")


def _scalar_resultant(field: Field, a: List[int], b: List[int]) -> int:
    """
    Res(a, b) for ascending coefficient lists, a monic.

    Uses Res(X, Y) = (-1)^(dX dY) lc(Y)^(dX - dR) Res(Y, R) with R = X mod Y.
    """

    def trim(v):
        v = list(v)
        while v and v[-1] == 0:
            v.pop()
        return v

    x, y = trim(a), trim(b)
    result = 1
    while True:
        if not y:
            return 0
        dx, dy = len(x) - 1, len(y) - 1
        if dy == 0:
            return field.mul(result, field.power(y[0], dx))
        lead_inv = field.inv(y[-1])
        rem = list(x)
        for k in range(dx - dy, -1, -1):
            c = field.mul(rem[k + dy], lead_inv)
            if c:
                for j in range(dy + 1):
                    rem[k + j] = field.sub(rem[k + j], field.mul(c, y[j]))
        rem = trim(rem[:dy])
        if not rem:
            return 0
        if (dx * dy) % 2:
            result = field.neg(result)
        result = field.mul(result, field.power(y[-1], dx - (len(rem) - 1)))
        x, y = y, rem


class ValuationOracle:
    """
    Exact pole order at P_inf of polynomial functions on a curve.

    P_inf is the only place over x = inf and is totally ramified, so the
    pole order of f equals deg_x N(f) where N(f) = Res_y(G, f) is the norm
    down to F(x). The norm is computed by evaluating the resultant at
    enough abscissae of an extension field and interpolating.
    """

    def __init__(self, curve: "Curve"):
        self.curve = curve
        self.calls = 0
        # leading coefficient of N(y)
        self._lc_norm_y = int(curve.rhs.coeffs[0])

    def _monomial_leader(self, f: "CurveFunction"):
        weights = f.naive_weights()
        top = max(weights.values())
        leaders = [key for key, w in weights.items() if w == top]
        return top, leaders

    def leading_norm(self, f: "CurveFunction") -> Tuple[int, FieldElement]:
        """
        Pole order of f and the leading coefficient of its norm.

        Raises:
            DomainError: If f is zero.
        """
        if f.is_zero():
            raise DomainError("valuation of the zero function is undefined")
        field = self.curve.field
        top, leaders = self._monomial_leader(f)
        if len(leaders) == 1:
            i, j = leaders[0]
            c = f.terms()[(i, j)]
            lc = field.mul(
                field.power(c, self.curve.x_weight),
                field.power(self._lc_norm_y, j),
            )
            return top, lc
        return self.norm_leader(f, top)

    def pole_order(self, f: "CurveFunction", method: str = "auto") -> int:
        if method == "resultant":
            if f.is_zero():
                raise DomainError("valuation of the zero function is undefined")
            return self.norm_leader(f, f.naive_weight())[0]
        return self.leading_norm(f)[0]

    def norm_leader(self, f: "CurveFunction", bound: int) -> Tuple[int, FieldElement]:
        """Degree and leading coefficient of N(f) by interpolation."""
        self.calls += 1
        curve = self.curve
        small = curve.field
        n_points = bound + 1
        k = 1
        while small.p ** (small.d * k) < n_points:
            k += 1
        big, embedding = small.extension(k)
        xs = big.array(list(big.elements())[:n_points])

        # G(x0, Y) = g_s(Y) - RHS(x0), ascending in Y
        m = curve.q**curve.s
        A = big.GF.Zeros((n_points, m + 1))
        for i, c in enumerate(curve.g_s.coeffs):
            if c:
                A[:, curve.q**i] = big.GF(embedding.to_big(c))
        rhs_big = galois.Poly(embedding.to_big_array(curve.rhs.coeffs))
        A[:, 0] = -rhs_big(xs)

        B = big.GF.Zeros((n_points, m))
        for j, part in enumerate(f.parts):
            if part.degree > 0 or int(part.coeffs[0]):
                B[:, j] = galois.Poly(embedding.to_big_array(part.coeffs))(xs)

        values = self._resultants(big, A, B)
        norm = galois.lagrange_poly(xs, values)
        if norm.degree == 0 and int(norm.coeffs[0]) == 0:
            raise ConsistencyError(f"norm of the nonzero function {f.to_text()} vanished")
        if norm.degree > bound:
            raise ConsistencyError(
                f"norm degree {norm.degree} exceeds the naive bound {bound}"
            )
        lc = embedding.from_big(int(norm.coeffs[0]))
        log.debug("oracle: pole %d (bound %d, %d points)", norm.degree, bound, n_points)
        return int(norm.degree), lc

    def _resultants(self, big: Field, A, B):
        """Res_Y(A[k], B[k]) for every row, vectorised on the generic path."""
        GF = big.GF
        A_rows = A.view(np.ndarray).tolist()
        B_rows = B.view(np.ndarray).tolist()
        out = GF.Zeros(A.shape[0])
        res = GF.Ones(A.shape[0])
        active = np.arange(A.shape[0])
        stragglers: List[int] = []

        while active.size:
            nonzero_cols = np.flatnonzero(np.any(B.view(np.ndarray) != 0, axis=0))
            if nonzero_cols.size == 0:
                out[active] = 0
                break
            dB = int(nonzero_cols[-1])
            B = B[:, : dB + 1]
            lead = B[:, dB]
            bad = lead.view(np.ndarray) == 0
            if bad.any():
                stragglers.extend(active[bad].tolist())
                keep = ~bad
                A, B, res, active = A[keep], B[keep], res[keep], active[keep]
                continue
            dA = A.shape[1] - 1
            if dB == 0:
                out[active] = res * lead**dA
                break
            inv = GF.Ones(lead.shape) / lead
            R = A.copy()
            for k in range(dA - dB, -1, -1):
                coef = R[:, k + dB] * inv
                R[:, k : k + dB + 1] = R[:, k : k + dB + 1] - coef[:, None] * B
            R = R[:, :dB]
            nz = np.flatnonzero(np.any(R.view(np.ndarray) != 0, axis=0))
            if nz.size == 0:
                out[active] = 0
                break
            dR = int(nz[-1])
            R = R[:, : dR + 1]
            bad = R[:, dR].view(np.ndarray) == 0
            if (dA * dB) % 2:
                res = -res
            res = res * lead ** (dA - dR)
            if bad.any():
                stragglers.extend(active[bad].tolist())
                keep = ~bad
                B, R, res, active = B[keep], R[keep], res[keep], active[keep]
            A, B = B, R

        if stragglers:
            log.debug("oracle: %d degenerate abscissae on the scalar path", len(stragglers))
        for idx in stragglers:
            out[idx] = _scalar_resultant(big, A_rows[idx], B_rows[idx])
        return out
