# -*- coding: utf-8 -*-
"""
castlepy
Created on Tue Mar 11 14:27:10 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import itertools
import logging
import math
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np

from castlepy.errors import ConsistencyError, DomainError, ValidationError
from castlepy.finite_field import Field, FieldElement

log = logging.getLogger("castlepy.qpoly")

Monomial = Tuple[int, int]


def check_nr(n: int, r: int):
    """
    Validate the curve exponents: gcd(n, r) = 1 and ceil(n/2) <= r <= n-1.

    Raises:
        ValidationError: If either condition fails.
    """
    if not isinstance(n, int) or not isinstance(r, int):
        raise ValidationError(f"n and r must be integers. Got n={n!r}, r={r!r}")
    if n < 2:
        raise ValidationError(f"n must be at least 2. Got {n}")
    if math.gcd(n, r) != 1:
        raise ValidationError(f"gcd(n, r) must be 1. Got gcd({n}, {r}) = {math.gcd(n, r)}")
    if not (n + 1) // 2 <= r <= n - 1:
        raise ValidationError(
            f"r must satisfy ceil(n/2) <= r <= n-1 = {n - 1}. Got r={r}"
        )


class BivariatePoly:
    """
    Sparse polynomial in x and y over a finite field.

    Terms are stored as ``{(i, j): c}`` for c x^i y^j with no explicit zeros.
    Exponents are never reduced.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Optional[Dict[Monomial, int]] = None):
        self.field = field
        self.terms: Dict[Monomial, int] = {}
        for key, c in (terms or {}).items():
            if c:
                self.terms[(int(key[0]), int(key[1]))] = int(c)

    @classmethod
    def constant(cls, field: Field, c: FieldElement) -> "BivariatePoly":
        return cls(field, {(0, 0): c})

    @classmethod
    def monomial(cls, field: Field, i: int, j: int, c: FieldElement = 1) -> "BivariatePoly":
        return cls(field, {(i, j): c})

    @classmethod
    def from_univariate(
        cls, field: Field, coeffs: Dict[int, int], var: str = "x"
    ) -> "BivariatePoly":
        if var == "x":
            return cls(field, {(e, 0): c for e, c in coeffs.items()})
        return cls(field, {(0, e): c for e, c in coeffs.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(key == (0, 0) for key in self.terms)

    def constant_term(self) -> FieldElement:
        return self.terms.get((0, 0), 0)

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    @property
    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BivariatePoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = self.field.add(out.get(key, 0), c)
        return BivariatePoly(self.field, out)

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly(
            self.field, {k: self.field.neg(c) for k, c in self.terms.items()}
        )

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        return self + (-other)

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        f = self.field
        out: Dict[Monomial, int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = f.add(out.get(key, 0), f.mul(c1, c2))
        return BivariatePoly(f, out)

    def scale(self, c: FieldElement) -> "BivariatePoly":
        return BivariatePoly(
            self.field, {k: self.field.mul(v, c) for k, v in self.terms.items()}
        )

    def frobenius(self, power: int) -> "BivariatePoly":
        """Raise to a power of the characteristic, term by term."""
        f = self.field
        if power % f.p or f.p ** round(math.log(power, f.p)) != power:
            raise ValidationError(f"frobenius needs a power of {f.p}. Got {power}")
        return BivariatePoly(
            f,
            {
                (i * power, j * power): f.power(c, power)
                for (i, j), c in self.terms.items()
            },
        )

    def __pow__(self, k: int) -> "BivariatePoly":
        if k < 0:
            raise DomainError("negative powers of polynomials are not supported")
        result = BivariatePoly.constant(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda t: (-t[0][1], -t[0][0])):
            factors = []
            if c != 1 or (i == 0 and j == 0):
                factors.append(self.field.format(c))
            for var, e in (("x", i), ("y", j)):
                if e == 1:
                    factors.append(var)
                elif e > 1:
                    factors.append(f"{var}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BivariatePoly({self.to_text()})"


# ----------------------------------------------------------------------
# text parsing
# ----------------------------------------------------------------------
_TOKEN_RE = re.compile(r"\s*(\[[0-9,\s]*\]|\d+|[axyq]|[-+*^(){}])")


def _tokenize(text: str) -> List[str]:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ValidationError(f"unexpected character in {text!r} at {pos}")
        tokens.append(match.group(1))
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


class _Parser:
    def __init__(self, text: str, field: Field, q: Optional[int]):
        self.text = text
        self.field = field
        self.q = q
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None or (expected is not None and token != expected):
            raise ValidationError(
                f"cannot parse {self.text!r}: expected {expected or 'more input'}"
            )
        self.pos += 1
        return token

    def parse(self) -> BivariatePoly:
        result = self.expr()
        if self.peek() is not None:
            raise ValidationError(f"cannot parse {self.text!r}: trailing {self.peek()!r}")
        return result

    def expr(self) -> BivariatePoly:
        negate = False
        if self.peek() in ("+", "-"):
            negate = self.take() == "-"
        result = self.term()
        if negate:
            result = -result
        while self.peek() in ("+", "-"):
            op = self.take()
            term = self.term()
            result = result + term if op == "+" else result - term
        return result

    def term(self) -> BivariatePoly:
        result = self.factor()
        while self.peek() is not None and self.peek() not in ("+", "-", ")"):
            if self.peek() == "*":
                self.take()
            result = result * self.factor()
        return result

    def factor(self) -> BivariatePoly:
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take("^")
        k = self.exponent()
        if k < 0:
            if not base.is_constant():
                raise ValidationError(f"negative exponent on a non-constant in {self.text!r}")
            return BivariatePoly.constant(
                self.field, self.field.power(base.constant_term(), k)
            )
        if base.is_constant():
            return BivariatePoly.constant(
                self.field, self.field.power(base.constant_term(), k)
            )
        return base**k

    def exponent(self) -> int:
        braced = self.peek() == "{"
        if braced:
            self.take("{")
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        token = self.take()
        if token == "q":
            if self.q is None:
                raise ValidationError(f"'q' exponent needs q in {self.text!r}")
            value = self.q
            if self.peek() == "^":
                self.take("^")
                value = self.q ** int(self.take())
        elif token.isdigit():
            value = int(token)
        else:
            raise ValidationError(f"bad exponent {token!r} in {self.text!r}")
        if braced:
            self.take("}")
        return sign * value

    def atom(self) -> BivariatePoly:
        token = self.take()
        if token == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if token == "x":
            return BivariatePoly.monomial(self.field, 1, 0)
        if token == "y":
            return BivariatePoly.monomial(self.field, 0, 1)
        if token == "a" or token.startswith("[") or token.isdigit():
            return BivariatePoly.constant(self.field, self.field.parse(token))
        raise ValidationError(f"unexpected token {token!r} in {self.text!r}")


def parse_poly(text: str, field: Field, q: Optional[int] = None) -> BivariatePoly:
    """
    Parse a polynomial in x, y such as ``(a^7x^2 + 1)*y^4 + a^17*x^10``.

    ``a`` is the pinned generator; exponents may be integers, ``q``,
    ``q^k`` or braced forms like ``{q^2}``. Juxtaposition multiplies.
    """
    return _Parser(str(text), field, q).parse()


# ----------------------------------------------------------------------
# q-polynomials
# ----------------------------------------------------------------------
class QPolynomial:
    """
    Linearized polynomial sum_i c_i x^(q^i) over a finite field.

    Attributes:
        field (Field): Coefficient field.
        q (int): Base prime power.
        coeffs (Tuple[int, ...]): c_0, ..., c_l with c_l != 0; empty for zero.
    """

    def __init__(self, field: Field, q: int, coeffs: Sequence[int]):
        field.q_exponent(q)
        self.field = field
        self.q = q
        trimmed = [int(c) for c in coeffs]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        self.coeffs = tuple(trimmed)

    @classmethod
    def monomial(cls, field: Field, q: int, k: int, c: FieldElement = 1) -> "QPolynomial":
        return cls(field, q, [0] * k + [c])

    @classmethod
    def identity(cls, field: Field, q: int) -> "QPolynomial":
        return cls(field, q, [1])

    @classmethod
    def trace(cls, field: Field, q: int, n: int) -> "QPolynomial":
        """T_n = x + x^q + ... + x^(q^(n-1))."""
        return cls(field, q, [1] * n)

    @property
    def degree_index(self) -> int:
        """l with degree q^l; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return self.q**self.degree_index if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_separable(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] != 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check_compatible(self, other: "QPolynomial"):
        if self.field != other.field or self.q != other.q:
            raise ValidationError(
                f"q-polynomials over different rings: {self.field}, q={self.q} "
                f"vs {other.field}, q={other.q}"
            )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QPolynomial)
            and self.field == other.field
            and self.q == other.q
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        self._check_compatible(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(
            self.field,
            self.q,
            [self.field.add(self.coefficient(i), other.coefficient(i)) for i in range(size)],
        )

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(self.field, self.q, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return self + (-other)

    def scale(self, c: FieldElement) -> "QPolynomial":
        return QPolynomial(self.field, self.q, [self.field.mul(c, v) for v in self.coeffs])

    def evaluate(self, e: FieldElement) -> FieldElement:
        """Return sum_i c_i e^(q^i)."""
        f = self.field
        total = 0
        for i, c in enumerate(self.coeffs):
            if c:
                total = f.add(total, f.mul(c, f.frob(e, self.q, i)))
        return total

    def evaluate_array(self, values: galois.FieldArray) -> galois.FieldArray:
        total = self.field.GF.Zeros(values.shape)
        for i, c in enumerate(self.coeffs):
            if c:
                total = total + self.field.GF(c) * self.field.frob_array(values, self.q, i)
        return total

    def compose(self, other: "QPolynomial") -> "QPolynomial":
        """Return self o other, i.e. self(other(x))."""
        self._check_compatible(other)
        f = self.field
        out = [0] * max(0, len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, e in enumerate(other.coeffs):
                if e:
                    out[i + j] = f.add(out[i + j], f.mul(c, f.frob(e, self.q, i)))
        return QPolynomial(f, self.q, out)

    def divide(self, g: "QPolynomial") -> Tuple["QPolynomial", "QPolynomial"]:
        """
        Composition division: self = Q o g + R with deg R < deg g.

        Returns:
            Tuple[QPolynomial, QPolynomial]: (Q, R).

        Raises:
            DomainError: If g is the zero polynomial.
        """
        self._check_compatible(g)
        if g.is_zero():
            raise DomainError("composition division by the zero q-polynomial")
        f = self.field
        lg = g.degree_index
        remainder = list(self.coeffs)
        quotient = [0] * max(0, len(remainder) - lg)
        lead_g = g.coeffs[-1]
        for top in range(len(remainder) - 1, lg - 1, -1):
            lead = remainder[top]
            if not lead:
                continue
            k = top - lg
            c = f.div(lead, f.frob(lead_g, self.q, k))
            quotient[k] = c
            for j, e in enumerate(g.coeffs):
                if e:
                    term = f.mul(c, f.frob(e, self.q, k))
                    remainder[j + k] = f.sub(remainder[j + k], term)
        return QPolynomial(f, self.q, quotient), QPolynomial(f, self.q, remainder[:lg])

    def roots(self) -> List[FieldElement]:
        """All roots in the coefficient field, in canonical order."""
        values = self.evaluate_array(self.field.array(list(self.field.elements())))
        ints = values.view(np.ndarray)
        return [e for e, v in zip(self.field.elements(), ints.tolist()) if v == 0]

    def sparse(self) -> Dict[int, int]:
        """Exponent -> coefficient as an ordinary polynomial."""
        return {self.q**i: c for i, c in enumerate(self.coeffs) if c}

    def to_text(self, var: str = "y", plain: bool = False) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree_index, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                mono = var
            elif plain:
                mono = f"{var}^{self.q ** i}"
            elif i == 1:
                mono = f"{var}^q"
            else:
                mono = f"{var}^{{q^{i}}}"
            parts.append(mono if c == 1 else f"{self.field.format(c)}*{mono}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, field: Field, q: int, var: str = "y") -> "QPolynomial":
        """
        Parse ``y^{q^2} + a^18*y^q + a*y`` or ``y^4 + a^18*y^2 + a*y``.

        Raises:
            ValidationError: If a term is not a q-power monomial in ``var``.
        """
        poly = parse_poly(text, field, q)
        coeffs: Dict[int, int] = {}
        for (i, j), c in poly.terms.items():
            exponent = j if var == "y" else i
            other = i if var == "y" else j
            k = round(math.log(exponent, q)) if exponent > 0 else -1
            if other or exponent < 1 or q**k != exponent:
                raise ValidationError(
                    f"{text!r} is not a q-polynomial in {var}: term "
                    f"x^{i}*y^{j} has a non q-power exponent"
                )
            coeffs[k] = c
        size = max(coeffs, default=-1) + 1
        return cls(field, q, [coeffs.get(k, 0) for k in range(size)])

    def __repr__(self) -> str:
        return f"QPolynomial({self.to_text()}, q={self.q})"


def f_q_elements(field: Field, q: int) -> List[FieldElement]:
    """The subfield GF(q) inside ``field``."""
    field.q_exponent(q)
    step = (field.order - 1) // (q - 1)
    return [0] + [field.exp(step * k) for k in range(q - 1)]


def span(field: Field, q: int, basis: Sequence[FieldElement]) -> List[FieldElement]:
    """
    GF(q)-span of ``basis``.

    Raises:
        ValidationError: If the basis is linearly dependent.
    """
    scalars = f_q_elements(field, q)
    elements = {0}
    for b in basis:
        elements = {field.add(s, field.mul(c, b)) for s in elements for c in scalars}
    if len(elements) != q ** len(basis):
        raise ValidationError(
            f"basis {[field.format(b) for b in basis]} is not GF({q})-linearly independent"
        )
    return sorted(elements, key=field.sort_key)


def subspace_polynomial(field: Field, q: int, basis: Sequence[FieldElement]) -> QPolynomial:
    """
    Monic product of (x - b) over the GF(q)-span of ``basis``.

    The product of a GF(q)-subspace is a q-polynomial; any other surviving
    coefficient is treated as a consistency failure.
    """
    roots = span(field, q, basis)
    product = galois.Poly.Roots(field.array(roots))
    coeffs: Dict[int, int] = {}
    for degree, c in zip(product.nonzero_degrees.tolist(), product.nonzero_coeffs.tolist()):
        k = round(math.log(degree, q)) if degree > 0 else -1
        if degree == 0 or q**k != degree:
            raise ConsistencyError(
                f"subspace polynomial has a non q-power term of degree {degree}"
            )
        coeffs[k] = int(c)
    return QPolynomial(field, q, [coeffs.get(k, 0) for k in range(len(basis) + 1)])


def trace_kernel(field: Field, q: int, n: int) -> List[FieldElement]:
    """ker T_n in canonical order."""
    values = QPolynomial.trace(field, q, n).evaluate_array(field.array(list(field.elements())))
    return [
        e for e, v in zip(field.elements(), values.view(np.ndarray).tolist()) if v == 0
    ]


def default_subspace_choice(field: Field, q: int, n: int, s: int) -> List[FieldElement]:
    """
    First n-1-s kernel elements, in canonical order, that stay independent.
    """
    choice: List[FieldElement] = []
    covered = {0}
    scalars = f_q_elements(field, q)
    for e in trace_kernel(field, q, n):
        if len(choice) == n - 1 - s:
            break
        if e in covered:
            continue
        choice.append(e)
        covered = {field.add(v, field.mul(c, e)) for v in covered for c in scalars}
    return choice


def trace_split(
    field: Field,
    q: int,
    n: int,
    s: int,
    subspace_choice: Optional[Sequence[FieldElement]] = None,
) -> Tuple[QPolynomial, QPolynomial]:
    """
    Factor T_n = g_s o g through a subspace of ker T_n.

    Parameters:
        field (Field): GF(q^n).
        q (int): Base prime power.
        n (int): Relative degree.
        s (int): Target degree exponent of g_s, 1 <= s <= n-1.
        subspace_choice (Sequence[int], optional): n-1-s independent
            elements of ker T_n. Defaults to default_subspace_choice.

    Returns:
        Tuple[QPolynomial, QPolynomial]: (g, g_s).

    Raises:
        ValidationError: If s is out of range or the choice leaves ker T_n.
        ConsistencyError: If the quotient fails its checks.
    """
    if field.q_exponent(q) * n != field.d:
        raise ValidationError(f"trace_split needs GF({q}^{n}). Got {field}")
    if not 1 <= s <= n - 1:
        raise ValidationError(f"s must satisfy 1 <= s <= n-1 = {n - 1}. Got {s}")
    if subspace_choice is None:
        subspace_choice = default_subspace_choice(field, q, n, s)
    choice = [int(e) for e in subspace_choice]
    if len(choice) != n - 1 - s:
        raise ValidationError(
            f"subspace choice must have n-1-s = {n - 1 - s} elements. Got {len(choice)}"
        )
    for e in choice:
        if field.rel_trace(e, q, n) != 0:
            raise ValidationError(f"{field.format(e)} is not in the kernel of T_{n}")

    trace = QPolynomial.trace(field, q, n)
    g = subspace_polynomial(field, q, choice)
    g_s, remainder = trace.divide(g)
    if not remainder.is_zero():
        raise ConsistencyError("T_n is not composition-divisible by the subspace polynomial")
    if g_s.compose(g) != trace:
        raise ConsistencyError("g_s o g does not recompose to T_n")
    if not g_s.is_monic() or g_s.degree_index != s:
        raise ConsistencyError(f"g_s = {g_s.to_text()} is not monic of degree q^{s}")
    if len(g_s.roots()) != q**s:
        raise ConsistencyError(f"g_s = {g_s.to_text()} does not split over {field}")
    log.debug("trace_split(q=%d, n=%d, s=%d): g_s = %s", q, n, s, g_s.to_text())
    return g, g_s


def f_r_poly(field: Field, q: int, n: int, r: int) -> galois.Poly:
    """
    f_r(x) = T_n(x^(1+q^r)) reduced modulo x^(q^n) - x.

    Raises:
        ValidationError: If (n, r) are invalid exponents.
        ConsistencyError: If the degree differs from q^(n-1) + q^(r-1).
    """
    check_nr(n, r)
    qn = q**n
    coeffs: Dict[int, int] = {}
    for i in range(n):
        e = (1 + q**r) * q**i
        if e >= qn:
            e = (e - 1) % (qn - 1) + 1
        coeffs[e] = field.add(coeffs.get(e, 0), 1)
    degrees = sorted(e for e, c in coeffs.items() if c)
    poly = galois.Poly.Degrees(degrees, field.array([coeffs[e] for e in degrees]))
    if poly.degree != q ** (n - 1) + q ** (r - 1):
        raise ConsistencyError(
            f"deg f_{r} = {poly.degree}, expected {q ** (n - 1) + q ** (r - 1)}"
        )
    return poly


@dataclass(frozen=True)
class QUDecomposition:
    """
    Result of qu_decompose.

    Attributes:
        Q (QPolynomial): Remainder of x^(q^r) under composition division by g_s.
        U (QPolynomial): Quotient with Q^(q^(n-r)) - y = U o g_s.
        u (int): Degree index of U.
        h (Dict[int, int]): Exponent -> coefficient of h(x).
    """

    Q: QPolynomial
    U: QPolynomial
    u: int
    h: Dict[int, int]

    @property
    def a_u(self) -> FieldElement:
        return self.U.coeffs[-1]


def qu_decompose(g_s: QPolynomial, n: int, r: int) -> QUDecomposition:
    """
    Build Q, U, u and h for the curve equation g_s(y) = RHS(x).

    Raises:
        ValidationError: If g_s is not separable.
        ConsistencyError: If g_s does not divide Q^(q^(n-r)) - y, if u is
            out of range, or if h fails its identity.
    """
    if not g_s.is_separable():
        raise ValidationError(f"g_s = {g_s.to_text()} is not separable")
    field, q = g_s.field, g_s.q
    s = g_s.degree_index

    _, Q = QPolynomial.monomial(field, q, r).divide(g_s)
    lhs = QPolynomial.monomial(field, q, n - r).compose(Q) - QPolynomial.identity(field, q)
    U, remainder = lhs.divide(g_s)
    if not remainder.is_zero():
        raise ConsistencyError(
            f"g_s = {g_s.to_text()} does not divide Q^(q^{n - r}) - y; g_s is invalid"
        )
    u = U.degree_index
    if not 0 <= u <= n - r - 1:
        raise ConsistencyError(f"deg U = q^{u} violates u <= n-r-1 = {n - r - 1}")
    if s >= r + 1 and (Q != QPolynomial.monomial(field, q, r) or u != n - s):
        raise ConsistencyError(
            f"for s >= r+1 expected Q = y^(q^{r}) and u = {n - s}; got "
            f"Q = {Q.to_text()}, u = {u}"
        )

    h: Dict[int, int] = {}
    for i, c in enumerate(U.coeffs):
        if c:
            h[(q**r + 1) * q**i] = field.frob(c, q, r)

    # h(x)^(q^(n-r)) == U(x^(q^n + q^(n-r)))
    lift = q ** (n - r)
    lhs_terms = {e * lift: field.frob(c, q, n - r) for e, c in h.items()}
    rhs_terms = {
        (q**n + q ** (n - r)) * q**i: c for i, c in enumerate(U.coeffs) if c
    }
    if lhs_terms != rhs_terms:
        raise ConsistencyError("h(x)^(q^(n-r)) differs from U(x^(q^n+q^(n-r)))")
    return QUDecomposition(Q=Q, U=U, u=u, h=h)


def artin_schreier_form(g_s: QPolynomial, n: int) -> Tuple[BivariatePoly, QPolynomial]:
    """
    Build G(x, y) and R_s(x) with

        G^q - G = x^(q^n) g_s(y) - y R_s(x)^(q^(n-s)),

    and verify the identity by expansion.

    Returns:
        Tuple[BivariatePoly, QPolynomial]: (G, R_s).

    Raises:
        ValidationError: If g_s is not monic and separable or s > n.
        ConsistencyError: If the recursion or the identity fails.
    """
    field, q = g_s.field, g_s.q
    s = g_s.degree_index
    if not g_s.is_monic() or not g_s.is_separable():
        raise ValidationError(f"g_s = {g_s.to_text()} must be monic and separable")
    if s > n:
        raise ValidationError(f"deg g_s = q^{s} exceeds q^{n}")
    a = g_s.coeffs

    frob_q = QPolynomial.monomial(field, q, 1)
    G_parts = [None, QPolynomial.identity(field, q)]
    for i in range(2, s + 2):
        c = field.frob(a[s - i + 1], q, n - s + i - 1)
        G_parts.append(frob_q.compose(G_parts[i - 1]) + QPolynomial(field, q, [c]))
    if G_parts[s + 1] != g_s:
        raise ConsistencyError("G_{s+1} does not reproduce g_s")

    G = BivariatePoly(field)
    for i in range(1, s + 1):
        G = G + BivariatePoly.monomial(field, q ** (n - i), 0) * BivariatePoly.from_univariate(
            field, G_parts[s - i + 1].sparse(), var="y"
        )

    R = [0] * (s + 1)
    R[0] = 1
    for j in range(s):
        R[s - j] = field.frob(a[j], q, s - j)
    R_s = QPolynomial(field, q, R)

    lhs = G.frobenius(q) - G
    lifted = QPolynomial.monomial(field, q, n - s).compose(R_s)
    rhs = BivariatePoly.monomial(field, q**n, 0) * BivariatePoly.from_univariate(
        field, g_s.sparse(), var="y"
    ) - BivariatePoly.monomial(field, 0, 1) * BivariatePoly.from_univariate(
        field, lifted.sparse(), var="x"
    )
    if lhs != rhs:
        raise ConsistencyError("G^q - G does not match x^(q^n) g_s(y) - y R_s^(q^(n-s))")
    return G, R_s


def inner_factor(g_s: QPolynomial, n: int) -> QPolynomial:
    """
    Find the monic g with g_s o g = T_n.

    g is the subspace polynomial of some (n-1-s)-dimensional subspace of
    ker T_n; candidate subspaces are tried in canonical order.

    Raises:
        ValidationError: If g_s does not left-divide T_n.
    """
    field, q = g_s.field, g_s.q
    s = g_s.degree_index
    if not 0 <= s <= n - 1:
        raise ValidationError(f"deg g_s = q^{s} is out of range for n = {n}")
    trace = QPolynomial.trace(field, q, n)
    kernel = [e for e in trace_kernel(field, q, n) if e]
    seen = set()
    for choice in itertools.combinations(kernel, n - 1 - s):
        try:
            elements = frozenset(span(field, q, choice))
        except ValidationError:
            continue
        if elements in seen:
            continue
        seen.add(elements)
        g = subspace_polynomial(field, q, choice)
        quotient, remainder = trace.divide(g)
        if remainder.is_zero() and quotient == g_s:
            return g
    raise ValidationError(
        f"g_s = {g_s.to_text()} does not composition-divide T_{n} from the left"
    )
