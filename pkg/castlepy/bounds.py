# -*- coding: utf-8 -*-
"""
castlepy
Created on Thu Mar 27 09:41:16 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import bisect
import csv
import itertools
import logging
import os
import warnings
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from castlepy.agcode import LinearCode, OnePointCode
from castlepy.curves import Curve, CurveParams, curve_new
from castlepy.errors import ConsistencyError, ValidationError
from castlepy.finite_field import field_new, prime_power
from castlepy.numsemi import NumericalSemigroup
from castlepy.qpoly import qu_decompose, span, trace_kernel

log = logging.getLogger("castlepy.bounds")


@dataclass
class HStarSet:
    """
    H* = H \\ (u + H): the m for which C_m strictly grows.

    Attributes:
        elements (Tuple[int, ...]): m_1 < ... < m_u.
        semigroup (NumericalSemigroup): H(P_inf).
        u (int): Number of evaluation points.
    """

    elements: Tuple[int, ...]
    semigroup: NumericalSemigroup
    u: int
    _lambda_counts: List[int] = field(default_factory=list, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, m: int) -> bool:
        i = bisect.bisect_left(self.elements, m)
        return i < len(self.elements) and self.elements[i] == m

    def index(self, m: int) -> int:
        """1-based i with m_i = m."""
        if m not in self:
            raise ValidationError(f"{m} is not in H*")
        return bisect.bisect_left(self.elements, m) + 1

    def floor_index(self, m: int) -> int:
        """1-based index of the largest m_i <= m."""
        if m < 0:
            raise ValidationError(f"m must be nonnegative. Got {m}")
        return bisect.bisect_right(self.elements, m)

    def lambda_counts(self) -> List[int]:
        """#Lambda*_i for i = 1..u."""
        if not self._lambda_counts:
            members = set(self.elements)
            self._lambda_counts = [
                sum(1 for h in self.elements if h >= mi and (h - mi) in members)
                for mi in self.elements
            ]
        return self._lambda_counts

    def dstar_profile(self) -> List[Tuple[int, int, int]]:
        """(m_i, #Lambda*_i, d*(i)) for every i."""
        profile, running = [], None
        for mi, count in zip(self.elements, self.lambda_counts()):
            running = count if running is None else min(running, count)
            profile.append((mi, count, running))
        return profile

    def to_dict(self) -> Dict[str, Any]:
        return {"u": self.u, "elements": list(self.elements)}


def hstar(semigroup: NumericalSemigroup, u: int) -> HStarSet:
    """
    H(P_inf) without u + H(P_inf).

    Raises:
        ValidationError: If u < 1.
        ConsistencyError: If the set does not have exactly u elements.
    """
    if u < 1:
        raise ValidationError(f"u must be positive. Got {u}")
    top = u + semigroup.conductor
    elements = tuple(h for h in semigroup.elements(top) if (h - u) not in semigroup)
    if len(elements) != u:
        raise ConsistencyError(f"H* has {len(elements)} elements, expected u = {u}")
    return HStarSet(elements=elements, semigroup=semigroup, u=u)


def dstar(hs: HStarSet, m: int) -> int:
    """
    Order bound d*(i) for the code C_{m_i}, i the index of m in H*.

    For m outside H* the bound of the largest m_i <= m is returned, since
    the two codes coincide.
    """
    i = hs.floor_index(m)
    if i == 0:
        raise ValidationError(f"no element of H* lies at or below {m}")
    if hs.elements[i - 1] != m:
        warnings.warn(
            f"m={m} is not in H*; reporting d* of m_{i} = {hs.elements[i - 1]}",
            UserWarning,
        )
    return min(hs.lambda_counts()[:i])


def bound_report(
    code: OnePointCode,
    hs: Optional[HStarSet] = None,
    exact: Optional[int] = None,
) -> Dict[str, Any]:
    """Goppa, Singleton and order bounds of a one-point code."""
    if hs is None:
        hs = hstar(code.semigroup, code.length)
    d = dstar(hs, code.m)
    if exact is None:
        exact = code.distance
    return {
        "length": code.length,
        "k": code.k,
        "m": code.m,
        "designed_distance": code.designed_distance,
        "singleton": code.singleton,
        "dstar": d,
        "exact_distance": exact,
    }


def hstar_spot_check(curve: Curve, hs: HStarSet, samples: Sequence[int]) -> List[int]:
    """
    Compare H* membership with rank growth of C_m for the given m.

    Returns:
        List[int]: The m where the two disagree.
    """
    basis = curve.rr_basis(max(samples))
    xs, ys = curve.point_arrays()
    rows = curve.field.GF.Zeros((len(basis), xs.size))
    for i, f in enumerate(basis):
        rows[i] = f.evaluate(xs, ys)

    def dim(m: int) -> int:
        count = hs.semigroup.iota(m)
        return int(np.linalg.matrix_rank(rows[:count])) if count else 0

    return [m for m in samples if (dim(m) > dim(m - 1)) != (m in hs)]


def hstar_verify(curve: Curve, hs: HStarSet, count: int = 10, seed: int = 0):
    """
    Spot check H* on ``count`` seeded random m in [0, u + 2g).

    Raises:
        ConsistencyError: If rank growth and H* membership disagree.
    """
    top = hs.u + 2 * hs.semigroup.genus
    rng = np.random.default_rng(seed)
    samples = sorted(int(m) for m in rng.choice(top, size=min(count, top), replace=False))
    bad = hstar_spot_check(curve, hs, samples)
    if bad:
        raise ConsistencyError(
            f"H* of {curve} disagrees with the rank growth of C_m at m = {bad} "
            f"(seed {seed})"
        )
    log.debug("H* spot check passed on %s", samples)


# ----------------------------------------------------------------------
# records ledger
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Record:
    length: int
    k: int
    d: int
    source: str
    shorten_s: int = 0

    def triple(self) -> Tuple[int, int, int]:
        return self.length, self.k, self.d


@dataclass(frozen=True)
class BaseCode:
    """A record base code: curve, m, its stated parameters and shortenings."""

    example: str
    q: int
    n: int
    r: int
    s: int
    g_s: str
    u: int
    m: int
    expected: Tuple[int, int, int]
    shortenings: int

    @property
    def source(self) -> str:
        return f"{self.example}:m{self.m}"


_EX44 = dict(example="ex44", q=2, n=5, r=3, s=2, g_s="y^4 + a^18*y^2 + a*y", u=1)
_EX45 = dict(example="ex45", q=2, n=5, r=3, s=3, g_s="y^8 + a^12*y^4 + a^20*y^2 + a*y", u=1)

BASE_CODES = (
    BaseCode(**_EX44, m=105, expected=(128, 94, 24), shortenings=7),
    BaseCode(**_EX44, m=109, expected=(128, 98, 20), shortenings=7),
    BaseCode(**_EX45, m=201, expected=(256, 174, 56), shortenings=24),
    BaseCode(**_EX45, m=209, expected=(256, 182, 48), shortenings=24),
    BaseCode(**_EX45, m=217, expected=(256, 190, 40), shortenings=24),
    BaseCode(**_EX45, m=219, expected=(256, 192, 38), shortenings=16),
)

EXPECTED_COUNTS = {"ex44": 16, "ex45": 92, None: 108}


def subcover_for(
    q: int,
    n: int,
    r: int,
    s: int,
    g_s: str,
    u: int,
    modulus: Optional[Sequence[int]] = None,
) -> Curve:
    """
    The subcover with the printed g_s, or the first subspace choice with
    the same u when the printed polynomial does not divide T_n under the
    active modulus.
    """
    try:
        curve = curve_new(CurveParams(q, n, r, s, g_s=g_s, modulus=modulus))
        if qu_decompose(curve.g_s, n, r).u == u:
            return curve
        log.warning("g_s = %s gives u != %d under this modulus; searching subspaces", g_s, u)
    except ValidationError as e:
        log.warning("%s; searching subspaces for u = %d", e, u)

    p, ext = prime_power(q)
    F = field_new(p, ext * n, modulus)
    kernel = [e for e in trace_kernel(F, q, n) if e]
    seen = set()
    for choice in itertools.combinations(kernel, n - 1 - s):
        try:
            elements = frozenset(span(F, q, choice))
        except ValidationError:
            continue
        if elements in seen:
            continue
        seen.add(elements)
        candidate = CurveParams(q, n, r, s, modulus=modulus, subspace_choice=choice)
        if qu_decompose(candidate.g_s, n, r).u == u:
            log.info("using g_s = %s", candidate.g_s.to_text())
            return curve_new(candidate)
    raise ValidationError(f"no subcover X^{s}_({n},{r}) with u = {u} found")


@dataclass
class RecordLedger:
    """
    Record triples with provenance.

    Attributes:
        records (List[Record]): In ledger order.
        expected_count (int, optional): Count the ledger must reach.
    """

    records: List[Record] = field(default_factory=list)
    expected_count: Optional[int] = None

    def __len__(self) -> int:
        return len(self.records)

    def add(self, record: Record):
        self.records.append(record)

    def check(self):
        """
        Raises:
            ConsistencyError: On a repeated triple or a wrong count.
        """
        seen = {}
        for record in self.records:
            if record.triple() in seen:
                raise ConsistencyError(
                    f"triple {list(record.triple())} from {record.source} repeats "
                    f"{seen[record.triple()].source}"
                )
            seen[record.triple()] = record
        if self.expected_count is not None and len(self) != self.expected_count:
            raise ConsistencyError(
                f"ledger has {len(self)} records, expected {self.expected_count}"
            )

    def write_csv(self, path: str):
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", newline="") as file:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(["length", "k", "d", "source", "shorten_s"])
            for rec in self.records:
                writer.writerow([rec.length, rec.k, rec.d, rec.source, rec.shorten_s])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "count": len(self),
            "records": [
                [rec.length, rec.k, rec.d, rec.source, rec.shorten_s] for rec in self.records
            ],
        }


def records_enumerate(
    only: Optional[str] = None,
    verify: bool = True,
    modulus: Optional[Sequence[int]] = None,
    deepening_cap: int = 16,
) -> RecordLedger:
    """
    Rebuild the record ledger from its base codes.

    Parameters:
        only (str, optional): "ex44" or "ex45" to restrict the ledger.
        verify (bool): Build every code and check shortened ranks. Without
            it, dimensions come from iota and k' = k - s is assumed.
        modulus (Sequence[int], optional): GF(q^n) modulus override.
        deepening_cap (int): Passed to the semigroup discovery.

    Raises:
        ValidationError: If ``only`` names no example.
        ConsistencyError: If a base code misses its stated parameters, H*
            fails its spot check, a shortened rank is off, or the ledger
            check fails.
    """
    if only not in EXPECTED_COUNTS:
        raise ValidationError(f"only must be one of ex44, ex45. Got {only!r}")
    ledger = RecordLedger(expected_count=EXPECTED_COUNTS[only])
    curves: Dict[str, Curve] = {}
    checked = set()
    for base in BASE_CODES:
        if only is not None and base.example != only:
            continue
        if base.example not in curves:
            curves[base.example] = subcover_for(
                base.q, base.n, base.r, base.s, base.g_s, base.u, modulus
            )
        curve = curves[base.example]
        data = curve.weierstrass_semigroup(deepening_cap=deepening_cap)
        u = curve.expected_points - 1
        hs = hstar(data.semigroup, u)
        if base.example not in checked:
            hstar_verify(curve, hs)
            checked.add(base.example)
        d = dstar(hs, base.m)

        code: Optional[LinearCode] = None
        if verify:
            code = OnePointCode(curve, base.m, deepening_cap)
            k = code.k
        else:
            k = data.semigroup.iota(base.m)
        found = (u, k, d)
        if found != base.expected:
            raise ConsistencyError(
                f"{base.source}: computed [{u}, {k}, {d}] but the record states "
                f"{list(base.expected)}"
            )
        ledger.add(Record(u, k, d, base.source))
        log.info("records: %s = [%d, %d, %d]", base.source, u, k, d)

        for s in range(1, base.shortenings + 1):
            if code is not None:
                shortened = code.shorten(s)
                if shortened.k != k - s:
                    raise ConsistencyError(
                        f"{base.source} shortened by {s} has dimension {shortened.k}, "
                        f"expected {k - s}"
                    )
            ledger.add(Record(u - s, k - s, d, base.source, s))

    ledger.check()
    return ledger
