# -*- coding: utf-8 -*-
"""
castlepy
Created on Wed Mar 12 16:40:02 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import bisect
import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Optional, Sequence, Tuple

from castlepy.errors import ConsistencyError, NotTelescopicError, ValidationError

log = logging.getLogger("castlepy.numsemi")


def _check_generators(generators: Sequence[int]) -> List[int]:
    try:
        values = [int(g) for g in generators]
    except (TypeError, ValueError):
        raise ValidationError(f"generators must be integers. Got {generators!r}")
    if not values:
        raise ValidationError("generators must not be empty.")
    if any(g <= 0 for g in values):
        raise ValidationError(f"generators must be positive. Got {values}")
    if reduce(math.gcd, values) != 1:
        raise ValidationError(
            f"gcd of generators must be 1 for finitely many gaps. Got gcd "
            f"{reduce(math.gcd, values)} for {values}"
        )
    return values


class NumericalSemigroup:
    """
    Numerical semigroup given by generators.

    Membership is tabulated by dynamic programming until a run of
    multiplicity-many consecutive members pins the conductor.

    Attributes:
        generators (Tuple[int, ...]): Sorted distinct generators.
        conductor (int): Smallest c with every n >= c a member.
        frobenius (int): Largest gap, c - 1.
        genus (int): Number of gaps.
    """

    def __init__(self, generators: Sequence[int]):
        self.generators = tuple(sorted(set(_check_generators(generators))))
        self._tabulate()

    def _tabulate(self):
        gens = self.generators
        multiplicity = gens[0]
        # Schur: frobenius <= (a_min - 1)(a_max - 1) - 1
        guard = (gens[0] - 1) * (gens[-1] - 1) + gens[0] + 1
        member = bytearray([1])
        run = 1 if multiplicity == 1 else 0
        n = 0
        while run < multiplicity:
            n += 1
            if n > guard:
                raise ConsistencyError(
                    f"membership table for {list(gens)} exceeded its guard {guard}"
                )
            hit = any(n >= g and member[n - g] for g in gens)
            member.append(1 if hit else 0)
            run = run + 1 if hit else 0
        self.conductor = n - multiplicity + 1 if multiplicity > 1 else 0
        for _ in range(n + 1, self.conductor + gens[-1] + 1):
            member.append(1)
        self._member = member
        self.frobenius = self.conductor - 1
        self._gaps = [m for m in range(self.conductor) if not member[m]]
        self._small = [m for m in range(self.conductor) if member[m]]
        self.genus = len(self._gaps)

    @classmethod
    def from_apery(cls, multiplicity: int, apery: Sequence[int]) -> "NumericalSemigroup":
        """Semigroup generated by a multiplicity and an Apery set."""
        return cls([multiplicity] + [w for w in apery if w])

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    def __contains__(self, value: int) -> bool:
        if value < 0:
            return False
        if value >= self.conductor:
            return True
        return bool(self._member[value])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NumericalSemigroup)
            and self.conductor == other.conductor
            and self._gaps == other._gaps
        )

    def __hash__(self):
        return hash(tuple(self._gaps))

    def __repr__(self) -> str:
        return f"NumericalSemigroup<{', '.join(map(str, self.generators))}>"

    def gaps(self) -> List[int]:
        return list(self._gaps)

    def elements(self, up_to: int) -> List[int]:
        """Members in [0, up_to]."""
        small = [m for m in self._small if m <= up_to]
        return small + list(range(self.conductor, up_to + 1))

    def iota(self, m: int) -> int:
        """Number of members <= m."""
        if m < 0:
            return 0
        if m >= self.conductor:
            return m + 1 - self.genus
        return bisect.bisect_right(self._small, m)

    def element(self, i: int) -> int:
        """The i-th member h_i (1-based, h_1 = 0)."""
        if i < 1:
            raise ValidationError(f"index must be at least 1. Got {i}")
        if i <= len(self._small):
            return self._small[i - 1]
        return self.conductor + (i - 1 - len(self._small))

    def minimal_generators(self) -> List[int]:
        """Members that are not a sum of two nonzero members."""
        minimal = []
        for g in self.generators:
            if not any((g - h) in self and (g - h) > 0 for h in self.elements(g - 1) if h):
                minimal.append(g)
        return minimal

    def is_symmetric(self) -> bool:
        return self.frobenius == 2 * self.genus - 1

    def apery_set(self, w: Optional[int] = None) -> List[int]:
        """Least member in each residue class modulo ``w``."""
        w = w or self.multiplicity
        least: Dict[int, int] = {}
        n = 0
        while len(least) < w:
            if n in self and n % w not in least:
                least[n % w] = n
            n += 1
        return [least[c] for c in range(w)]

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready report."""
        # generators are stored ascending, so only one order is tried
        try:
            order = list(sg_telescopic(self.generators).sequence)
        except NotTelescopicError:
            order = None
        return {
            "generators": list(self.generators),
            "minimal_generators": self.minimal_generators(),
            "genus": self.genus,
            "frobenius": self.frobenius,
            "symmetric": self.is_symmetric(),
            "telescopic_order": order,
        }


def genus_from_apery(multiplicity: int, apery: Sequence[int]) -> int:
    """Selmer's formula: sum of floor(w / multiplicity) over the Apery set."""
    return sum(w // multiplicity for w in apery)


def _representation(target: int, generators: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Nonnegative coefficients c with sum c_j g_j = target, or None."""
    back = [-1] * (target + 1)
    back[0] = len(generators)
    for v in range(1, target + 1):
        for j, g in enumerate(generators):
            if v >= g and back[v - g] >= 0:
                back[v] = j
                break
    if back[target] < 0:
        return None
    counts = [0] * len(generators)
    v = target
    while v:
        j = back[v]
        counts[j] += 1
        v -= generators[j]
    return tuple(counts)


@dataclass(frozen=True)
class TelescopicCertificate:
    """
    Certificate that a sequence is telescopic.

    Attributes:
        sequence (Tuple[int, ...]): a_1, ..., a_m in certified order.
        d_sequence (Tuple[int, ...]): d_i = gcd(a_1, ..., a_i).
        witnesses (Tuple[Tuple[int, ...], ...]): For i >= 2, coefficients
            writing a_i/d_i over a_1/d_{i-1}, ..., a_{i-1}/d_{i-1}.
        l_g (int): Largest gap from the closed formula.
        genus (int): (l_g + 1) / 2.
    """

    sequence: Tuple[int, ...]
    d_sequence: Tuple[int, ...]
    witnesses: Tuple[Tuple[int, ...], ...] = field(default_factory=tuple)
    l_g: int = 0
    genus: int = 0

    def exponent_caps(self) -> Tuple[int, ...]:
        """d_{i-1}/d_i per position; the first entry is unbounded (None)."""
        caps = [None]
        for i in range(1, len(self.sequence)):
            caps.append(self.d_sequence[i - 1] // self.d_sequence[i])
        return tuple(caps)


def sg_telescopic(sequence: Sequence[int]) -> TelescopicCertificate:
    """
    Certify that ``sequence`` is telescopic in the given order.

    Parameters:
        sequence (Sequence[int]): Positive integers with gcd 1.

    Returns:
        TelescopicCertificate: d-sequence, witnesses and formula values.

    Raises:
        NotTelescopicError: If a_i/d_i is not in the previous semigroup.
        ConsistencyError: If formula and enumeration disagree.
    """
    seq = _check_generators(sequence)
    d_seq = []
    d = 0
    for a in seq:
        d = math.gcd(d, a)
        d_seq.append(d)

    witnesses = []
    for i in range(1, len(seq)):
        target = seq[i] // d_seq[i]
        scaled = [a // d_seq[i - 1] for a in seq[:i]]
        witness = _representation(target, scaled)
        if witness is None:
            raise NotTelescopicError(
                i + 1,
                f"{list(seq)} is not telescopic: a_{i + 1}/d_{i + 1} = {target} "
                f"is not in <{', '.join(map(str, scaled))}>",
            )
        witnesses.append(witness)

    l_g = 0
    previous = 0
    for a, d in zip(seq, d_seq):
        l_g += (previous // d - 1) * a
        previous = d
    genus = (l_g + 1) // 2

    enumerated = NumericalSemigroup(seq)
    if enumerated.genus != genus or enumerated.frobenius != l_g:
        raise ConsistencyError(
            f"telescopic formulas give l_g={l_g}, g={genus} but enumeration gives "
            f"frobenius={enumerated.frobenius}, g={enumerated.genus} for {list(seq)}"
        )
    return TelescopicCertificate(
        sequence=tuple(seq),
        d_sequence=tuple(d_seq),
        witnesses=tuple(witnesses),
        l_g=l_g,
        genus=genus,
    )


def telescopic_sorted(sequence: Sequence[int]) -> Tuple[TelescopicCertificate, bool]:
    """
    Try the given order first, then the ascending order.

    Returns:
        Tuple[TelescopicCertificate, bool]: The certificate and whether the
        given order itself was telescopic.

    Raises:
        NotTelescopicError: If neither order is telescopic.
    """
    try:
        return sg_telescopic(sequence), True
    except NotTelescopicError as e:
        ascending = sorted(int(a) for a in sequence)
        if list(sequence) == ascending:
            raise
        log.warning("%s; retrying in ascending order", e)
        return sg_telescopic(ascending), False


def printed_order_report(printed: Sequence[int]) -> Dict[str, Any]:
    """Whether ``printed`` is telescopic as written, falling back to ascending."""
    try:
        _, printed_ok = telescopic_sorted(printed)
    except NotTelescopicError:
        printed_ok = False
    return {
        "printed_order": [int(a) for a in printed],
        "printed_order_telescopic": printed_ok,
    }
