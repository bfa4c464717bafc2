# -*- coding: utf-8 -*-
"""
castlepy
Created on Wed Mar 19 15:31:08 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple

from castlepy.curves.function import CurveFunction
from castlepy.errors import (
    ConsistencyError,
    DiscoveryError,
    ValidationError,
)
from castlepy.finite_field import FieldElement
from castlepy.numsemi import NumericalSemigroup, genus_from_apery, telescopic_sorted
from castlepy.qpoly import BivariatePoly, QUDecomposition, qu_decompose

if TYPE_CHECKING:
    from castlepy.curves.curve import Curve

log = logging.getLogger("castlepy.curves.discovery")


@dataclass
class ZWGSet:
    """
    The functions Z, W and Gamma with their pole orders at P_inf.

    W and Gamma only exist when s = 2r-n+1, u = n-r-1 and s >= 2.

    Attributes:
        decomposition (QUDecomposition): Q, U, u and h behind Z.
        Z (CurveFunction): Q(y) - h(x).
        z_pole (int): Pole order of Z.
        W (CurveFunction, optional): Z^q + a_u^(q^(r+1)) x^(q^(n-r)+1).
        w_pole (int, optional): q^(r+1) + q.
        Gamma (CurveFunction, optional): beta x^(q^(r-1)-q^(n-r-1)) Z - W^(q^(2r-n-1)).
        gamma_pole (int, optional): q^(r+s-1) + 1.
        alpha (int, optional): -a_u^(-1).
        beta (int, optional): alpha^(q^r).
    """

    decomposition: QUDecomposition
    Z: CurveFunction
    z_pole: int
    W: Optional[CurveFunction] = None
    w_pole: Optional[int] = None
    Gamma: Optional[CurveFunction] = None
    gamma_pole: Optional[int] = None
    alpha: Optional[FieldElement] = None
    beta: Optional[FieldElement] = None

    @property
    def u(self) -> int:
        return self.decomposition.u

    @property
    def a_u(self) -> FieldElement:
        return self.decomposition.a_u

    def functions(self) -> List[Tuple[int, CurveFunction]]:
        out = [(self.z_pole, self.Z)]
        if self.W is not None:
            out.append((self.w_pole, self.W))
            out.append((self.gamma_pole, self.Gamma))
        return out


def expected_z_pole(q: int, n: int, r: int, s: int, u: int) -> int:
    if s < r - u:
        return q**r + 1
    return q ** (s + u + r - n) * (q ** (n - r) + 1)


def _check_pole(curve: "Curve", name: str, f: CurveFunction, expected: int) -> int:
    pole = curve.oracle.pole_order(f)
    if pole != expected:
        raise ConsistencyError(
            f"{name} = {f.to_text()} has pole order {pole} at P_inf, expected {expected}"
        )
    return pole


def build_zwg(curve: "Curve") -> ZWGSet:
    """
    Construct Z (and W, Gamma when they exist) and verify their pole orders.

    Raises:
        ValidationError: For n = 2 or the trace model.
        ConsistencyError: If an oracle pole order differs from the formula.
    """
    q, n, r, s = curve.q, curve.n, curve.r, curve.s
    if n == 2:
        raise ValidationError("Z, W and Gamma need 2r != n; n = 2 is not supported")
    if curve.model != "reduced":
        raise ValidationError(f"Z, W and Gamma are built on the reduced model. Got {curve.model!r}")
    F = curve.field
    sign = 1 if curve.model_sign == 1 else F.neg(1)

    dec = qu_decompose(curve.g_s, n, r)
    terms = {(0, q**i): c for i, c in enumerate(dec.Q.coeffs) if c}
    for e, c in dec.h.items():
        terms[(e, 0)] = F.sub(terms.get((e, 0), 0), F.mul(sign, c))
    Z = curve.fn_reduce(BivariatePoly(F, terms))
    z_pole = _check_pole(curve, "Z", Z, expected_z_pole(q, n, r, s, dec.u))
    zwg = ZWGSet(decomposition=dec, Z=Z, z_pole=z_pole)
    log.debug("Z = %s with pole %d (u = %d)", Z.to_text(), z_pole, dec.u)

    if not (s == 2 * r - n + 1 and dec.u == n - r - 1 and s >= 2):
        return zwg

    a_u = dec.a_u
    lift = CurveFunction.x_power(
        curve, q ** (n - r) + 1, F.mul(sign, F.frob(a_u, q, r + 1))
    )
    W = Z.frobenius(q) + lift
    w_pole = _check_pole(curve, "W", W, q ** (r + 1) + q)

    alpha = F.neg(F.inv(a_u))
    beta = F.frob(alpha, q, r)
    if F.frob(beta, q, n - r) != alpha:
        raise ConsistencyError("beta^(q^(n-r)) differs from alpha")
    Gamma = Z.shift_x(q ** (r - 1) - q ** (n - r - 1)).scale(beta) - W.frobenius(
        q ** (2 * r - n - 1)
    )
    gamma_pole = _check_pole(curve, "Gamma", Gamma, q ** (r + s - 1) + 1)

    zwg.W, zwg.w_pole = W, w_pole
    zwg.Gamma, zwg.gamma_pole = Gamma, gamma_pole
    zwg.alpha, zwg.beta = alpha, beta
    return zwg


class AperyTable:
    """
    Least known pole order per residue class modulo q^s, with a function
    realising it.

    Every polynomial function is an F[x]-combination of the table entries
    once the table is complete, so L(m P_inf) is spanned by the x^a b_c.
    """

    def __init__(self, curve: "Curve"):
        self.curve = curve
        self.modulus = curve.x_weight
        self.entries: Dict[int, Tuple[int, CurveFunction, FieldElement]] = {}
        self.reductions = 0

    def __len__(self) -> int:
        return len(self.entries)

    def poles(self) -> List[int]:
        return sorted(pole for pole, _, _ in self.entries.values())

    def selmer_genus(self) -> int:
        return genus_from_apery(self.modulus, self.poles())

    def is_complete(self) -> bool:
        return (
            len(self.entries) == self.modulus
            and self.selmer_genus() == self.curve.genus
        )

    def seed(self, f: CurveFunction, pole: int, lc: FieldElement):
        """Insert a function of known pole and norm leader."""
        self.add(f, pole, lc)

    def add(
        self,
        f: CurveFunction,
        pole: Optional[int] = None,
        lc: Optional[FieldElement] = None,
    ) -> bool:
        """
        Reduce f against the table and file what is left.

        Returns:
            bool: Whether the table changed.
        """
        changed = False
        pending = [(f, pole, lc)]
        while pending:
            g, pole, lc = pending.pop()
            filed = self._reduce(g, pole, lc)
            if filed is None:
                continue
            pole, g, lc = filed
            c = pole % self.modulus
            displaced = self.entries.get(c)
            self.entries[c] = (pole, g, lc)
            changed = True
            if displaced is not None:
                log.debug("apery: residue %d improved %d -> %d", c, displaced[0], pole)
                pending.append((displaced[1], displaced[0], displaced[2]))
        return changed

    def _reduce(self, f, pole, lc) -> Optional[Tuple[int, CurveFunction, FieldElement]]:
        F = self.curve.field
        oracle = self.curve.oracle
        if pole is None or lc is None:
            if f.is_zero():
                return None
            pole, lc = oracle.leading_norm(f)
        while True:
            entry = self.entries.get(pole % self.modulus)
            if entry is None or entry[0] > pole:
                return pole, f, lc
            base_pole, base, base_lc = entry
            t = base.shift_x((pole - base_pole) // self.modulus)
            # N(lambda t) = lambda^(q^s) N(t)
            lam = F.frob(F.div(lc, base_lc), self.curve.q, -self.curve.s)
            f = f - t.scale(lam)
            self.reductions += 1
            if f.is_zero():
                return None
            new_pole, lc = oracle.leading_norm(f)
            if new_pole >= pole:
                raise ConsistencyError(
                    f"elimination did not lower the pole order ({pole} -> {new_pole})"
                )
            pole = new_pole

    def function_for(self, h: int) -> Optional[CurveFunction]:
        """x^a b_c with pole order h, or None when h is a gap."""
        entry = self.entries.get(h % self.modulus)
        if entry is None or entry[0] > h:
            return None
        return entry[1].shift_x((h - entry[0]) // self.modulus)

    def semigroup(self) -> NumericalSemigroup:
        return NumericalSemigroup.from_apery(self.modulus, self.poles())


def _generator_seeds(
    table: AperyTable, generators: List[Tuple[int, CurveFunction]]
) -> int:
    """
    Seed the table with telescopic products of the generator functions.

    Returns:
        int: Number of products filed.
    """
    curve = table.curve
    gens = sorted(generators, key=lambda item: item[0])
    try:
        cert, _ = telescopic_sorted([pole for pole, _ in gens])
    except ValidationError as e:
        log.debug("seeds: %s; skipping products", e)
        return 0
    by_pole = {pole: f for pole, f in gens}
    funcs = [by_pole[a] for a in cert.sequence]
    leaders = [curve.oracle.leading_norm(f)[1] for f in funcs]
    caps = cert.exponent_caps()
    F = curve.field

    combos: List[Tuple[int, ...]] = [()]
    for cap in caps[1:]:
        combos = [c + (e,) for c in combos for e in range(cap)]
    filed = 0
    for exps in combos:
        f = CurveFunction.constant(curve, 1)
        pole, lc = 0, 1
        for e, g, a, l_g in zip(exps, funcs[1:], cert.sequence[1:], leaders[1:]):
            if e:
                f = f * g**e
                pole += e * a
                lc = F.mul(lc, F.power(l_g, e))
        table.seed(f, pole, lc)
        filed += 1
    return filed


def discover(
    curve: "Curve",
    bound: int,
    deepening_cap: int = 16,
    generators: Optional[List[Tuple[int, CurveFunction]]] = None,
) -> AperyTable:
    """
    Fill the Apery table of H(P_inf) modulo q^s.

    Generator products are filed first; then y^j (j < q^s) with naive
    weight at most B' are reduced, B' starting at 2*bound and doubling
    up to deepening_cap*bound.

    Raises:
        DiscoveryError: If the table is incomplete when the cap trips.
    """
    table = AperyTable(curve)
    table.seed(CurveFunction.constant(curve, 1), 0, 1)
    if generators:
        _generator_seeds(table, generators)
    if table.is_complete():
        log.info("discovery: complete from generator products")
        return table

    candidates = sorted(
        (j * curve.y_weight, j) for j in range(1, curve.x_weight)
    )
    done = 0
    limit = max(2 * bound, 1)
    cap = deepening_cap * max(bound, 1)
    while True:
        while done < len(candidates) and candidates[done][0] <= limit:
            table.add(CurveFunction.monomial(curve, 0, candidates[done][1]))
            done += 1
            if table.is_complete():
                log.info(
                    "discovery: complete at B'=%d after %d reductions",
                    limit,
                    table.reductions,
                )
                return table
        log.info(
            "discovery: B'=%d, %d/%d residues filled", limit, len(table), table.modulus
        )
        if done == len(candidates) or limit >= cap:
            break
        limit = min(2 * limit, cap)

    missing = [c for c in range(table.modulus) if c not in table.entries]
    raise DiscoveryError(
        missing,
        f"discovery stopped at B'={limit}: residues {missing} mod {table.modulus} unfilled, "
        f"Apery genus {table.selmer_genus()} against curve genus {curve.genus}",
    )


@dataclass
class WeierstrassData:
    """
    The Weierstrass semigroup H(P_inf) with functions realising it.

    Attributes:
        semigroup (NumericalSemigroup): H(P_inf).
        table (AperyTable): Apery functions modulo q^s.
        bound (int): Search bound B.
        claimed (NumericalSemigroup, optional): Semigroup predicted by the
            closed formulas, when one applies.
        zwg (ZWGSet, optional): Z, W and Gamma when built.
    """

    semigroup: NumericalSemigroup
    table: AperyTable
    bound: int
    claimed: Optional[NumericalSemigroup] = None
    zwg: Optional[ZWGSet] = None
    _basis: Dict[int, CurveFunction] = field(default_factory=dict, repr=False)

    @property
    def basis(self) -> Dict[int, CurveFunction]:
        """Pole order -> function for every member <= bound."""
        if not self._basis:
            for h in self.semigroup.elements(self.bound):
                self._basis[h] = self.table.function_for(h)
        return self._basis

    def rr_basis(self, m: int) -> List[CurveFunction]:
        """
        Basis of L(m P_inf), one function per member h <= m.

        Raises:
            ValidationError: If m < 0.
        """
        if m < 0:
            raise ValidationError(f"m must be nonnegative. Got {m}")
        out = []
        for h in self.semigroup.elements(m):
            f = self.table.function_for(h)
            if f is None:
                raise DiscoveryError([h])
            out.append(f)
        return out

    def to_dict(self) -> Dict[str, Any]:
        report = self.semigroup.to_dict()
        report["apery"] = self.table.poles()
        report["claimed"] = None if self.claimed is None else list(self.claimed.generators)
        return report


def claimed_generators(curve: "Curve", zwg: Optional[ZWGSet]) -> List[Tuple[int, ...]]:
    """Closed-form generator sets that apply to this curve."""
    q, n, r, s = curve.q, curve.n, curve.r, curve.s
    claims = []
    if s <= 2 * r - n:
        claims.append((q**s, q**r + 1))
    elif s == 2 * r - n + 1 and zwg is not None:
        if zwg.z_pole == q**r + 1:
            claims.append((q**s, q**r + 1))
        elif zwg.W is not None:
            claims.append((q**s, q**r + q ** (s - 1), q ** (r + 1) + q, q ** (r + s - 1) + 1))
    if curve.is_full:
        from castlepy.curves.curve import full_curve_generators

        claims.append(full_curve_generators(q, n, r))
    return claims


def weierstrass_semigroup(
    curve: "Curve", bound: Optional[int] = None, deepening_cap: int = 16
) -> WeierstrassData:
    """
    Compute H(P_inf) and a function for each of its members.

    Parameters:
        curve (Curve): The curve.
        bound (int, optional): Search bound B >= 2g. Defaults to 2g.
        deepening_cap (int): B' stops growing at deepening_cap * B.

    Returns:
        WeierstrassData: Semigroup, Apery functions and the closed-form claim.

    Raises:
        ValidationError: If B < 2g or deepening_cap < 1.
        DiscoveryError: If discovery cannot finish within the cap.
        ConsistencyError: If a closed-form claim differs from discovery.
    """
    if bound is None:
        bound = 2 * curve.genus
    if bound < 2 * curve.genus:
        raise ValidationError(f"bound must be at least 2g = {2 * curve.genus}. Got {bound}")
    if deepening_cap < 1:
        raise ValidationError(f"deepening_cap must be at least 1. Got {deepening_cap}")

    zwg = None
    if curve.model == "reduced" and curve.n >= 3:
        zwg = curve.build_zwg()
    generators = [(curve.x_weight, curve.x)]
    if zwg is not None:
        generators += zwg.functions()
    else:
        generators.append((curve.y_weight, curve.y))

    table = discover(curve, bound, deepening_cap, generators)
    found = table.semigroup()
    if found.genus != curve.genus:
        raise ConsistencyError(
            f"semigroup {found} has {found.genus} gaps, curve genus is {curve.genus}"
        )

    claimed = None
    for gens in claimed_generators(curve, zwg):
        claim = NumericalSemigroup(gens)
        if claim != found:
            raise ConsistencyError(
                f"closed form predicts {claim} but discovery found {found}"
            )
        claimed = claimed or claim
    log.info(
        "H(P_inf) = <%s>, genus %d", ", ".join(map(str, found.minimal_generators())), found.genus
    )
    return WeierstrassData(
        semigroup=found, table=table, bound=bound, claimed=claimed, zwg=zwg
    )
