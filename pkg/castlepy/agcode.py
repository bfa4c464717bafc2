# -*- coding: utf-8 -*-
"""
castlepy
Created on Mon Mar 24 13:20:05 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import logging
import os
import warnings
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import galois
import numpy as np

from castlepy.curves import Curve, CurveFunction, CurveParams, curve_new
from castlepy.errors import ConsistencyError, ValidationError
from castlepy.finite_field import Field, field_new
from castlepy.qpoly import QPolynomial

log = logging.getLogger("castlepy.agcode")

CHUNK = 4096


@dataclass(frozen=True)
class Codeword:
    """
    A word of a code over ``field``.

    Attributes:
        alphabet (Field): Field the coordinates live in.
        values (Tuple[int, ...]): Coordinates in canonical point order.
    """

    alphabet: Field = field(compare=False, repr=False)
    values: Tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(1 for v in self.values if v)

    def __len__(self) -> int:
        return len(self.values)

    def to_text(self) -> List[str]:
        return [self.alphabet.format(v) for v in self.values]


def _progress_bar(enabled: bool, total: int, desc: str):
    if not enabled:
        return None
    try:
        from tqdm import tqdm
    except ImportError:
        return None
    return tqdm(total=total, desc=desc, leave=False)


def _projective_blocks(k: int, order: int, chunk: int) -> Iterator[Tuple[int, int, int]]:
    """(lead, start, stop) blocks covering messages with first nonzero entry 1."""
    for lead in range(k):
        total = order ** (k - 1 - lead)
        for start in range(0, total, chunk):
            yield lead, start, min(start + chunk, total)


def _block_min_weight(field_key, G_ints, lead: int, start: int, stop: int):
    """Least codeword weight in one message block; runs in worker processes."""
    F = field_new(*field_key)
    G = F.GF(np.asarray(G_ints, dtype=np.int64))
    k = G.shape[0]
    order = F.order
    t = np.arange(start, stop, dtype=np.int64)
    M = np.zeros((t.size, k), dtype=np.int64)
    M[:, lead] = 1
    for j in range(k - 1 - lead):
        M[:, lead + 1 + j] = (t // order**j) % order
    words = F.GF(M) @ G
    weights = np.count_nonzero(words.view(np.ndarray), axis=1)
    best = int(np.argmin(weights))
    return int(weights[best]), M[best].tolist(), int(t.size)


class LinearCode:
    """
    Linear code over GF(q^n) given by a generator matrix.

    Dependent rows are removed on construction, so ``G`` always has full
    row rank.

    Attributes:
        field (Field): Alphabet.
        G (galois.FieldArray): k x length generator matrix.
        length (int): Number of coordinates.
        k (int): Dimension.
        header (Dict[str, Any]): Key/value pairs for the matrix file header.
    """

    def __init__(self, field: Field, G, header: Optional[Dict[str, Any]] = None):
        self.field = field
        G = field.GF(np.asarray(G.view(np.ndarray) if isinstance(G, galois.FieldArray) else G, dtype=np.int64))
        if G.ndim != 2:
            raise ValidationError(f"generator matrix must be 2-dimensional. Got shape {G.shape}")
        rank = int(np.linalg.matrix_rank(G)) if G.shape[0] else 0
        if rank < G.shape[0]:
            reduced = G.row_reduce()
            G = reduced[:rank]
        self.G = G
        self.length = int(G.shape[1])
        self.k = rank
        self.header = dict(header or {})
        self.header.update(length=self.length, k=self.k)
        self.distance: Optional[int] = None
        self.witness: Optional[Codeword] = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}[{self.length}, {self.k}]"

    def floor(self) -> int:
        """Lowest possible nonzero weight; enumeration stops when it is met."""
        return 1

    def encode(self, message: Sequence[int]) -> Codeword:
        if len(message) != self.k:
            raise ValidationError(f"message must have {self.k} symbols. Got {len(message)}")
        word = self.field.array(list(message)) @ self.G
        return Codeword(self.field, tuple(int(v) for v in word.tolist()))

    def dual(self) -> "LinearCode":
        """Dual code spanned by the null space of G."""
        H = self.G.null_space() if self.k else self.field.GF.Identity(self.length)
        dual = LinearCode(self.field, H, {"dual_of": self.k})
        if dual.k != self.length - self.k:
            raise ConsistencyError(
                f"dual dimension {dual.k} differs from length - k = {self.length - self.k}"
            )
        if self.k and dual.k and np.any((self.G @ dual.G.T).view(np.ndarray)):
            raise ConsistencyError("G H^T is not zero")
        return dual

    def shorten(self, s: int, positions: Optional[Sequence[int]] = None) -> "LinearCode":
        """
        Keep codewords vanishing on ``positions`` and delete those coordinates.

        Parameters:
            s (int): Number of coordinates, 0 <= s < k.
            positions (Sequence[int], optional): Coordinates to shorten on.
                Defaults to the first s canonical coordinates.

        Returns:
            LinearCode: The [length - s, >= k - s] shortened code.

        Raises:
            ValidationError: If s or the positions are out of range.
        """
        if not 0 <= s < self.k:
            raise ValidationError(f"s must satisfy 0 <= s < k = {self.k}. Got {s}")
        positions = list(range(s)) if positions is None else [int(i) for i in positions]
        if len(positions) != s or len(set(positions)) != s:
            raise ValidationError(f"need {s} distinct positions. Got {positions}")
        if any(not 0 <= i < self.length for i in positions):
            raise ValidationError(f"positions must lie in [0, {self.length}). Got {positions}")
        header = dict(self.header, shorten_s=s)
        if s == 0:
            return LinearCode(self.field, self.G, header)
        keep = [i for i in range(self.length) if i not in set(positions)]
        N = self.G[:, positions].left_null_space()
        G = (N @ self.G)[:, keep]
        return LinearCode(self.field, G, header)

    def minimum_distance(
        self,
        budget: int = 2**24,
        workers: int = 1,
        progress: bool = False,
    ) -> Optional[int]:
        """
        Exact minimum distance by enumerating projective messages.

        Parameters:
            budget (int): Largest message-space size (q^n)^k to enumerate.
            workers (int): Worker processes for the message blocks.
            progress (bool): Draw a progress bar when tqdm is available.

        Returns:
            Optional[int]: The distance, or None when the budget refuses.
        """
        if self.k == 0:
            raise ValidationError("the zero code has no minimum distance")
        order = self.field.order
        if order**self.k > budget:
            log.warning(
                "exact distance refused: (%d)^%d messages exceed the budget %d",
                order,
                self.k,
                budget,
            )
            return None

        key = (self.field.p, self.field.d, None if self.field.is_conway else self.field.modulus)
        G_ints = self.G.view(np.ndarray).tolist()
        blocks = list(_projective_blocks(self.k, order, CHUNK))
        floor = self.floor()
        best, best_message, checked = self.length + 1, None, 0
        bar = _progress_bar(progress, len(blocks), "distance")

        def record(result):
            nonlocal best, best_message, checked
            weight, message, count = result
            checked += count
            if weight < best:
                best, best_message = weight, message
            if bar is not None:
                bar.update(1)

        if workers <= 1:
            for block in blocks:
                record(_block_min_weight(key, G_ints, *block))
                if best <= floor:
                    break
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                pending = {pool.submit(_block_min_weight, key, G_ints, *b) for b in blocks}
                while pending:
                    done, pending = wait(pending, return_when=FIRST_COMPLETED)
                    for future in done:
                        record(future.result())
                    if best <= floor:
                        for future in pending:
                            future.cancel()
                        break
        if bar is not None:
            bar.close()

        log.info("distance: d = %d after %d messages", best, checked)
        self.distance = best
        self.witness = self.encode(best_message)
        return best

    def write_matrix(self, path: str):
        """
        CSV generator matrix, one row per line in ``a^k`` text form, under a
        ``# key=value ...`` header line.
        """
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        head = " ".join(f"{key}={value}" for key, value in self.header.items())
        with open(path, "w") as file:
            file.write(f"# {head}\n")
            for row in self.G.view(np.ndarray).tolist():
                file.write(",".join(self.field.format(int(v)) for v in row) + "\n")


class OnePointCode(LinearCode):
    """
    The one-point code C_m = ev(L(m P_inf)) on the affine points of a curve.

    Attributes:
        curve (Curve): The curve.
        m (int): Multiplicity of P_inf.
        basis (List[CurveFunction]): Basis of L(m P_inf) evaluated for G.
    """

    def __init__(self, curve: Curve, m: int, deepening_cap: int = 16):
        if isinstance(m, bool) or not isinstance(m, int) or m < 0:
            raise ValidationError(f"m must be a nonnegative integer. Got {m!r}")
        self.curve = curve
        self.m = m
        data = curve.weierstrass_semigroup(deepening_cap=deepening_cap)
        self.semigroup = data.semigroup
        self.basis: List[CurveFunction] = data.rr_basis(m)

        xs, ys = curve.point_arrays()
        u = xs.size
        G = curve.field.GF.Zeros((len(self.basis), u))
        for i, f in enumerate(self.basis):
            G[i] = f.evaluate(xs, ys)
        header = {"q": curve.q, "n": curve.n, "r": curve.r, "s": curve.s, "m": m}
        super().__init__(curve.field, G, header)

        expected = self.expected_dimension()
        if self.k != expected:
            raise ConsistencyError(
                f"C_{m} has rank {self.k}, expected {expected}; the basis of L({m} P_inf) is incomplete"
            )
        log.info("code: C_%d = [%d, %d]", m, self.length, self.k)

    def expected_dimension(self) -> int:
        iota = self.semigroup.iota
        u = self.curve.expected_points - 1
        if self.m < u:
            return iota(self.m)
        return iota(self.m) - iota(self.m - u)

    @property
    def is_abundant(self) -> bool:
        return self.m >= self.length

    @property
    def designed_distance(self) -> Optional[int]:
        """Goppa bound u - m, defined for m < u."""
        return self.length - self.m if self.m < self.length else None

    @property
    def singleton(self) -> int:
        return self.length - self.k + 1

    def floor(self) -> int:
        return max(self.designed_distance or 1, 1)

    def dual_isometry_partner(self) -> int:
        """m' with C_m^perp isometric to C_m'."""
        return self.length + 2 * self.curve.genus - 2 - self.m


def code_new(curve: Curve, m: int, deepening_cap: int = 16) -> OnePointCode:
    return OnePointCode(curve, m, deepening_cap)


@dataclass
class DistanceWitness:
    """
    Explicit low-weight codeword of C_m on the full curve.

    Attributes:
        case (int): 1, 2 or 3.
        m (int): Code parameter.
        predicted (int): Weight predicted by the closed form.
        weight (int, optional): Achieved weight; None for case 3.
        function (CurveFunction, optional): The evaluated function.
        codeword (Codeword, optional): Its evaluation.
        candidates (Dict[str, int]): Case 3 only; both stated values.
    """

    case: int
    m: int
    predicted: int
    weight: Optional[int] = None
    function: Optional[CurveFunction] = None
    codeword: Optional[Codeword] = None
    candidates: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case,
            "m": self.m,
            "predicted": self.predicted,
            "weight": self.weight,
            "function": None if self.function is None else self.function.to_text(),
            "candidates": dict(self.candidates),
        }


def _evaluate(curve: Curve, f: CurveFunction) -> Codeword:
    xs, ys = curve.point_arrays()
    return Codeword(curve.field, tuple(int(v) for v in f.evaluate(xs, ys).tolist()))


def _linear_product(curve: Curve, roots: Sequence[int], var: str) -> CurveFunction:
    g = CurveFunction.constant(curve, 1)
    for root in roots:
        linear = (curve.x if var == "x" else curve.y) - CurveFunction.constant(curve, root)
        g = g * linear
    return g


def distance_witness(
    curve: Curve,
    m: int,
    case: int,
    gamma: Optional[int] = None,
) -> DistanceWitness:
    """
    Build a codeword of weight q^(2n-1) - m on the full curve X_{n,r}.

    Case 1 takes m = a q^(n-1), 0 <= a < q^n, and evaluates a product of
    vertical lines. Case 2 takes m = a q^(n-1) + b (q^(n-1) + q^(r-1)) and
    works on the trace model T_n(y) = f_r(x), multiplying lines x = alpha
    (f_r(alpha) != gamma) with lines y = beta (T_n(beta) = gamma). Case 3,
    m = q^(2n-1) - q^(n-1) + b, is reported only.

    Raises:
        ValidationError: If the curve is not full or m has the wrong shape.
        ConsistencyError: If the case 1 weight differs from the prediction.
    """
    if not curve.is_full:
        raise ValidationError(f"distance witnesses need the full curve. Got {curve!r}")
    q, n, r = curve.q, curve.n, curve.r
    F = curve.field
    u = q ** (2 * n - 1)
    step = q ** (n - 1)
    predicted = u - m

    if case == 1:
        a, rest = divmod(m, step)
        if rest or not 0 <= a < q**n:
            raise ValidationError(f"case 1 needs m = a*{step} with 0 <= a < {q ** n}. Got m={m}")
        g = _linear_product(curve, list(F.elements())[:a], "x")
        word = _evaluate(curve, g)
        if word.weight != predicted:
            raise ConsistencyError(f"case 1 codeword has weight {word.weight}, expected {predicted}")
        return DistanceWitness(1, m, predicted, word.weight, g, word)

    if case == 2:
        y_step = q ** (n - 1) + q ** (r - 1)
        shape = None
        for b in range(q ** (n - 1)):
            rest = m - b * y_step
            if rest >= 0 and rest % step == 0 and rest // step <= q**n - step - q ** (r - 1):
                shape = (rest // step, b)
                break
        if shape is None:
            raise ValidationError(
                f"case 2 needs m = a*{step} + b*{y_step} within the stated ranges. Got m={m}"
            )
        a, b = shape
        if curve.model != "trace":
            curve = curve_new(
                CurveParams.full(q, n, r, model="trace", modulus=curve.params.modulus)
            )
            F = curve.field
        gamma = 1 if gamma is None else int(gamma)
        if not gamma or not F.in_subfield(gamma, q):
            raise ValidationError(f"gamma must lie in GF({q})^*. Got {F.format(gamma)}")
        elements = list(F.elements())
        fr = curve.rhs(F.array(elements)).view(np.ndarray).tolist()
        A = [x for x, v in zip(elements, fr) if v != gamma]
        trace = QPolynomial.trace(F, q, n).evaluate_array(F.array(elements)).view(np.ndarray).tolist()
        B = [y for y, v in zip(elements, trace) if v == gamma]
        if len(A) < a or len(B) < b:
            raise ValidationError(f"not enough lines for a={a}, b={b}: #A={len(A)}, #B={len(B)}")
        g = _linear_product(curve, A[:a], "x") * _linear_product(curve, B[:b], "y")
        word = _evaluate(curve, g)
        if word.weight != predicted:
            warnings.warn(
                f"case 2 codeword for m={m} (a={a}, b={b}) has weight {word.weight}, "
                f"closed form predicts {predicted}",
                UserWarning,
            )
        return DistanceWitness(2, m, predicted, word.weight, g, word)

    if case == 3:
        b = m - (u - step)
        if not 0 <= b <= step:
            raise ValidationError(
                f"case 3 needs m = {u - step} + b with 0 <= b <= {step}. Got m={m}"
            )
        return DistanceWitness(
            3,
            m,
            q ** (n - 1),
            candidates={"statement": q ** (n - 1), "proof": q ** (r - 1)},
        )

    raise ValidationError(f"case must be 1, 2 or 3. Got {case!r}")
