# -*- coding: utf-8 -*-
"""
castlepy
Created on Mon Mar 10 10:03:55 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import logging
import math
import re
import warnings
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import galois
import numpy as np

from castlepy.errors import ConsistencyError, DomainError, ValidationError

log = logging.getLogger("castlepy.finite_field")

# Elements are the integers of galois' integer representation: the residue
# polynomial c_0 + c_1 x + ... evaluated at x = p.
FieldElement = int

_POWER_RE = re.compile(r"^a(?:\^\{?(-?\d+)\}?)?$")
_TUPLE_RE = re.compile(r"^\[([0-9,\s]*)\]$")


class Field:
    """
    Finite field GF(p^d) with a pinned primitive generator.

    The generator is the residue class of the indeterminate, so the modulus
    has to be primitive. Scalar arithmetic runs on exponent/logarithm tables,
    vector arithmetic is delegated to the underlying galois field class.

    Attributes:
        p (int): Characteristic.
        d (int): Degree over the prime field.
        order (int): Number of elements p^d.
        modulus (Tuple[int, ...]): Ascending coefficients of the modulus.
        generator (int): The primitive element written ``a`` in text form.
        is_conway (bool): Whether the modulus is the Conway polynomial.
        GF (type): The galois FieldArray subclass for vectorised work.
    """

    def __init__(
        self, p: int, d: int, modulus: Optional[Sequence[int]] = None
    ):
        self.p = p
        self.d = d
        self.order = self.p**self.d

        prime_field = galois.GF(self.p)
        conway = self._conway_or_none()
        if modulus is None:
            if conway is None:
                raise ValidationError(
                    f"No Conway polynomial known for GF({self.p}^{self.d}); "
                    "pass a modulus explicitly."
                )
            poly = conway
        else:
            coeffs = [int(c) % self.p for c in modulus]
            if len(coeffs) != self.d + 1 or coeffs[-1] != 1:
                raise ValidationError(
                    f"modulus must be monic of degree {self.d}. Got {list(modulus)}"
                )
            poly = galois.Poly(coeffs[::-1], field=prime_field)
            if not poly.is_irreducible():
                raise ValidationError(f"modulus {poly} is reducible over GF({self.p})")
            if not poly.is_primitive():
                raise ValidationError(
                    f"modulus {poly} is not primitive; its root does not "
                    f"generate GF({self.order})*"
                )
        self.is_conway = conway is not None and poly == conway
        if not self.is_conway:
            warnings.warn(
                f"GF({self.order}) uses the non-Conway modulus {poly}; literal "
                "coefficients in a^k form are not comparable with Conway tables.",
                UserWarning,
            )

        self.modulus = tuple(int(c) for c in poly.coeffs[::-1])
        if self.d == 1:
            self.GF = galois.GF(self.p)
            self.generator = (-self.modulus[0]) % self.p
        else:
            self.GF = galois.GF(self.order, irreducible_poly=poly)
            self.generator = self.p
        self._extensions: Dict[int, Tuple["Field", "FieldEmbedding"]] = {}
        self._build_tables()

    @property
    def p(self):
        return self._p

    @p.setter
    def p(self, value):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise ValidationError(f"p must be an integer. Got {value!r}")
        if not galois.is_prime(int(value)):
            raise ValidationError(f"p must be prime. Got {value}")
        self._p = int(value)

    @property
    def d(self):
        return self._d

    @d.setter
    def d(self, value):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise ValidationError(f"d must be an integer. Got {value!r}")
        if value < 1:
            raise ValidationError(f"d must be at least 1. Got {value}")
        self._d = int(value)

    def _conway_or_none(self) -> Optional[galois.Poly]:
        try:
            return galois.conway_poly(self.p, self.d)
        except LookupError:
            return None

    def _build_tables(self):
        n_units = self.order - 1
        base = self.GF(np.full(n_units, self.generator, dtype=np.int64))
        powers = (base ** np.arange(n_units)).view(np.ndarray).astype(np.int64)
        logs = np.full(self.order, -1, dtype=np.int64)
        logs[powers] = np.arange(n_units)
        if np.count_nonzero(logs >= 0) != n_units:
            raise ConsistencyError(
                f"generator {self.generator} does not have order {n_units}"
            )
        self._exp: List[int] = powers.tolist() * 2
        self._log: List[int] = logs.tolist()
        if self.p == 2:
            self._zech = None
        else:
            plus_one = (self.GF(powers) + self.GF(1)).view(np.ndarray)
            self._zech = logs[plus_one].tolist()
        log.debug("built log tables for GF(%d^%d)", self.p, self.d)

    def __repr__(self) -> str:
        return f"Field(GF({self.p}^{self.d}), modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.d == other.d
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    # ------------------------------------------------------------------
    # scalar arithmetic
    # ------------------------------------------------------------------
    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: FieldElement) -> FieldElement:
        if self.p == 2 or not a:
            return a
        return self._exp[self._log[a] + (self.order - 1) // 2]

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.add(a, self.neg(b))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: FieldElement) -> FieldElement:
        if not a:
            raise DomainError("0 has no multiplicative inverse")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.mul(a, self.inv(b))

    def power(self, a: FieldElement, k: int) -> FieldElement:
        if not a:
            if k > 0:
                return 0
            if k == 0:
                return 1
            raise DomainError("negative power of 0")
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def exp(self, k: int) -> FieldElement:
        """Return a^k for the pinned generator a."""
        return self._exp[k % (self.order - 1)]

    def dlog(self, e: FieldElement) -> int:
        """
        Discrete logarithm of ``e`` to the pinned generator.

        Raises:
            DomainError: If e is 0.
        """
        if not e:
            raise DomainError("dlog of 0 is undefined")
        return self._log[e]

    def sort_key(self, e: FieldElement) -> int:
        """dlog-or-minus-one, the canonical ordering key."""
        return self._log[e] if e else -1

    def elements(self) -> Iterator[FieldElement]:
        """All elements in canonical order: 0, 1, a, a^2, ..."""
        yield 0
        yield from self._exp[: self.order - 1]

    # ------------------------------------------------------------------
    # Frobenius and trace
    # ------------------------------------------------------------------
    def q_exponent(self, q: int) -> int:
        """
        Return e with q = p^e, e dividing d.

        Raises:
            ValidationError: If q is not such a power of p.
        """
        e, value = 0, 1
        while value < q:
            value *= self.p
            e += 1
        if value != q or e == 0 or self.d % e:
            raise ValidationError(
                f"q must be a power p^e of {self.p} with e dividing {self.d}. Got {q}"
            )
        return e

    def frob(self, e: FieldElement, q: int, k: int) -> FieldElement:
        """Return e^(q^k); negative k gives q^|k|-th roots."""
        period = self.d // self.q_exponent(q)
        if not e:
            return 0
        n_units = self.order - 1
        return self._exp[
            (self._log[e] * pow(q, k % period, n_units)) % n_units
        ]

    def frob_array(self, values, q: int, k: int):
        """Vectorised frob over a galois array."""
        period = self.d // self.q_exponent(q)
        return values ** (q ** (k % period))

    def rel_trace(self, e: FieldElement, q: int, n: int) -> FieldElement:
        """
        Relative trace T_n(e) = e + e^q + ... + e^(q^(n-1)) to GF(q).

        Raises:
            ValidationError: If the field is not GF(q^n).
        """
        if self.q_exponent(q) * n != self.d:
            raise ValidationError(
                f"rel_trace needs the field GF({q}^{n}); this is GF({self.p}^{self.d})"
            )
        total = 0
        for i in range(n):
            total = self.add(total, self.frob(e, q, i))
        return total

    def in_subfield(self, e: FieldElement, q: int) -> bool:
        return self.frob(e, q, 1) == e

    # ------------------------------------------------------------------
    # representations
    # ------------------------------------------------------------------
    def rep(self, e: FieldElement) -> Tuple[int, ...]:
        """Residue-polynomial coefficients (c_0, ..., c_{d-1})."""
        digits = []
        for _ in range(self.d):
            e, c = divmod(e, self.p)
            digits.append(c)
        return tuple(digits)

    def from_rep(self, coeffs: Sequence[int]) -> FieldElement:
        if len(coeffs) > self.d:
            raise ValidationError(
                f"coefficient tuple longer than {self.d}. Got {list(coeffs)}"
            )
        value = 0
        for c in reversed(list(coeffs)):
            value = value * self.p + int(c) % self.p
        return value

    def format(self, e: FieldElement) -> str:
        if not e:
            return "0"
        k = self._log[e]
        if k == 0:
            return "1"
        if k == 1:
            return "a"
        return f"a^{k}"

    def parse(self, text: str) -> FieldElement:
        """
        Parse ``0``, ``1``, ``a``, ``a^k``, an integer of the prime field
        or a coefficient tuple ``[c0,c1,...]``.
        """
        token = str(text).strip().replace(" ", "")
        match = _POWER_RE.match(token)
        if match:
            return self.exp(int(match.group(1) or 1))
        match = _TUPLE_RE.match(token)
        if match:
            body = match.group(1)
            coeffs = [int(c) for c in body.split(",") if c != ""]
            return self.from_rep(coeffs)
        if token.isdigit():
            return int(token) % self.p
        raise ValidationError(f"cannot parse field element {text!r}")

    # ------------------------------------------------------------------
    # galois bridges
    # ------------------------------------------------------------------
    def array(self, values) -> galois.FieldArray:
        return self.GF(np.asarray(values, dtype=np.int64))

    def poly(self, coeffs: Sequence[int]) -> galois.Poly:
        """galois.Poly from ascending integer coefficients."""
        if len(coeffs) == 0:
            return galois.Poly.Zero(self.GF)
        return galois.Poly(self.array(list(coeffs)[::-1]))

    def constant(self, c: FieldElement) -> galois.Poly:
        return galois.Poly([int(c)], field=self.GF)

    @staticmethod
    def ascending(poly: galois.Poly) -> List[int]:
        return [int(c) for c in poly.coeffs[::-1]]

    def random(self, rng: np.random.Generator, nonzero: bool = False) -> int:
        low = 1 if nonzero else 0
        return int(rng.integers(low, self.order))

    def extension(self, k: int) -> Tuple["Field", "FieldEmbedding"]:
        """
        Degree-k extension GF(p^(d*k)) with a fixed embedding of this field.
        """
        if k < 1:
            raise ValidationError(f"extension degree must be positive. Got {k}")
        if k not in self._extensions:
            big = field_new(self.p, self.d * k)
            self._extensions[k] = (big, FieldEmbedding(self, big))
        return self._extensions[k]


class FieldEmbedding:
    """
    Embedding of a small field into an extension, fixed by sending the small
    generator to a root of the small modulus inside the big field.
    """

    def __init__(self, small: Field, big: Field):
        if small.p != big.p or big.d % small.d:
            raise ValidationError(f"{small} does not embed into {big}")
        self.small = small
        self.big = big
        n_small = small.order - 1
        n_big = big.order - 1
        step = n_big // n_small

        # Conway-compatible tables make j = 1 succeed immediately.
        for j in range(1, n_small + 1):
            if math.gcd(j, n_small) != 1:
                continue
            root = big.exp(step * j)
            if self._evaluate_modulus(root) == 0:
                break
        else:
            raise ConsistencyError(f"no root of {small.modulus} found in {big}")
        self._shift = step * j

        table = np.zeros(small.order, dtype=np.int64)
        for k in range(n_small):
            table[small.exp(k)] = big.exp(k * self._shift)
        self.table = table
        self._inverse = {int(b): s for s, b in enumerate(table.tolist())}

    def _evaluate_modulus(self, x: FieldElement) -> FieldElement:
        acc = 0
        for c in reversed(self.small.modulus):
            acc = self.big.add(self.big.mul(acc, x), c)
        return acc

    def to_big(self, e: FieldElement) -> FieldElement:
        return int(self.table[e])

    def to_big_array(self, values) -> galois.FieldArray:
        ints = np.asarray(values).view(np.ndarray).astype(np.int64)
        return self.big.array(self.table[ints])

    def from_big(self, e: FieldElement) -> FieldElement:
        try:
            return self._inverse[e]
        except KeyError:
            raise ValidationError(
                f"{self.big.format(e)} does not lie in GF({self.small.order})"
            )


_FIELDS: Dict[Tuple[int, int, Optional[Tuple[int, ...]]], Field] = {}


def field_new(p: int, d: int, modulus: Optional[Sequence[int]] = None) -> Field:
    """
    Create (or fetch the cached) field GF(p^d).

    Parameters:
        p (int): Prime characteristic.
        d (int): Extension degree.
        modulus (Sequence[int], optional): Ascending coefficients of a monic,
            primitive degree-d polynomial. Defaults to the Conway polynomial.

    Returns:
        Field: The field.

    Raises:
        ValidationError: If p is not prime or the modulus is unusable.
    """
    key = (p, d, None if modulus is None else tuple(int(c) for c in modulus))
    if key not in _FIELDS:
        _FIELDS[key] = Field(p, d, modulus)
    return _FIELDS[key]


def prime_power(q: int) -> Tuple[int, int]:
    """
    Split q into (p, e) with q = p^e.

    Raises:
        ValidationError: If q is not a prime power.
    """
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)) or q < 2:
        raise ValidationError(f"q must be a prime power. Got {q}")
    q = int(q)
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            value = q
            while value % p == 0:
                value //= p
                e += 1
            if value != 1:
                raise ValidationError(f"q must be a prime power. Got {q}")
            return p, e
    raise ValidationError(f"q must be a prime power. Got {q}")
