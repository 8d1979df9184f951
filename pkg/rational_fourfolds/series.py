"""
Exact truncated power series and the counting solvers built on them.

Everything here works over ``fractions.Fraction``; the truncation order is always an
explicit argument. The Witt/PBW pair relates the dimensions of a graded Lie algebra L
to the Hilbert series of its universal enveloping algebra UL:

    H_UL(t) = prod_{k odd} (1 + t^k)^{L_k} / prod_{k even} (1 - t^k)^{L_k}
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from sympy.functions.combinatorial.numbers import mobius as _sympy_mobius

from rational_fourfolds.errors import ConsistencyError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series sum_{k<=order} c_k t^k with exact rational coefficients."""

    coefficients: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise DomainError(f"truncation order must be non-negative, got {self.order}")
        coefficients = tuple(Fraction(c) for c in self.coefficients)
        if len(coefficients) != self.order + 1:
            raise DomainError(
                f"expected {self.order + 1} coefficients for order {self.order}, "
                f"got {len(coefficients)}"
            )
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def from_coefficients(cls, coefficients: Iterable, order: int) -> "TruncatedSeries":
        """Pad with zeros or cut to exactly ``order + 1`` coefficients."""
        values = list(coefficients)[: order + 1]
        values += [0] * (order + 1 - len(values))
        return cls(tuple(values), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_coefficients([1], order)

    @classmethod
    def monomial(cls, degree: int, order: int, coefficient=1) -> "TruncatedSeries":
        values = [0] * (order + 1)
        if degree <= order:
            values[degree] = coefficient
        return cls(tuple(values), order)

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(k)
        return self.coefficients[k] if k <= self.order else Fraction(0)

    def __len__(self) -> int:
        return self.order + 1

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries.from_coefficients(self.coefficients, order)

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.monomial(0, self.order, other)
        n = self._common(other)
        return TruncatedSeries(tuple(self[k] + other[k] for k in range(n + 1)), n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coefficients), self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            scalar = Fraction(other)
            return TruncatedSeries(tuple(scalar * c for c in self.coefficients), self.order)
        n = self._common(other)
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if not a[i]:
                continue
            for j in range(n + 1 - i):
                if b[j]:
                    out[i + j] += a[i] * b[j]
        return TruncatedSeries(tuple(out), n)

    __rmul__ = __mul__

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse up to the same order; needs a nonzero constant term."""
        a0 = self.coefficients[0]
        if a0 == 0:
            raise DomainError("cannot invert a series with zero constant coefficient")
        inv = [Fraction(0)] * (self.order + 1)
        inv[0] = 1 / a0
        for k in range(1, self.order + 1):
            acc = sum(
                (self.coefficients[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0)
            )
            inv[k] = -acc / a0
        return TruncatedSeries(tuple(inv), self.order)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def as_integers(self) -> list[int]:
        if not self.is_integral():
            raise DomainError(f"series has non-integer coefficients: {self.coefficients}")
        return [int(c) for c in self.coefficients]

    def __repr__(self) -> str:
        terms = [f"{c}*t^{k}" for k, c in enumerate(self.coefficients) if c]
        return f"TruncatedSeries({' + '.join(terms) or '0'} + O(t^{self.order + 1}))"


@dataclass(frozen=True)
class GradedDims:
    """Dimensions of a graded vector space split by degree parity.

    ``odd`` and ``even`` map degree -> positive count; zero counts are dropped.
    """

    odd: Mapping[int, int]
    even: Mapping[int, int]
    order: int

    def __post_init__(self):
        for bucket, parity in ((self.odd, 1), (self.even, 0)):
            for degree, count in bucket.items():
                if degree < 1:
                    raise DomainError(f"graded dimensions need degrees >= 1, got {degree}")
                if degree % 2 != parity:
                    raise DomainError(f"degree {degree} filed under the wrong parity")
                if count < 0:
                    raise DomainError(f"negative dimension {count} in degree {degree}")
        object.__setattr__(self, "odd", {k: v for k, v in sorted(self.odd.items()) if v})
        object.__setattr__(self, "even", {k: v for k, v in sorted(self.even.items()) if v})

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], order: int) -> "GradedDims":
        odd = {k: v for k, v in counts.items() if k % 2}
        even = {k: v for k, v in counts.items() if not k % 2}
        return cls(odd, even, order)

    def dim(self, degree: int) -> int:
        bucket = self.odd if degree % 2 else self.even
        return bucket.get(degree, 0)

    def items(self) -> list[tuple[int, int]]:
        return sorted({**self.odd, **self.even}.items())

    def generating_polynomial(self, order: int) -> TruncatedSeries:
        """P_V(t) = sum_k dim V_k t^k truncated at ``order``."""
        values = [0] * (order + 1)
        for degree, count in self.items():
            if degree <= order:
                values[degree] = count
        return TruncatedSeries(tuple(values), order)


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError(f"the Mobius function is defined for n >= 1, got {n}")
    return int(_sympy_mobius(n))


def power_sums(poly: TruncatedSeries, count: int) -> list[Fraction]:
    """Power sums S_1..S_count of the inverse roots of Q (the alpha_i in Q = prod(1 - alpha_i t)).

    Newton's identities on the coefficients q_k of Q with q_0 = 1:
        S_d = -d q_d - sum_{i=1}^{d-1} q_i S_{d-i}
    Coefficients past the series order are treated as zero, so Q is read as a polynomial.
    """
    if poly[0] != 1:
        raise DomainError(f"power sums need Q(0) = 1, got Q(0) = {poly[0]}")
    if count < 1:
        raise DomainError(f"need at least one power sum, got count={count}")
    sums: list[Fraction] = []
    for d in range(1, count + 1):
        value = -d * poly[d]
        for i in range(1, d):
            value -= poly[i] * sums[d - i - 1]
        sums.append(value)
    return sums


def _exterior_factor(degree: int, multiplicity: int, order: int) -> TruncatedSeries:
    """(1 + t^degree)^multiplicity."""
    values = [0] * (order + 1)
    for i in range(min(multiplicity, order // degree) + 1):
        values[i * degree] = comb(multiplicity, i)
    return TruncatedSeries(tuple(values), order)


def _symmetric_factor(degree: int, multiplicity: int, order: int) -> TruncatedSeries:
    """(1 - t^degree)^(-multiplicity)."""
    values = [0] * (order + 1)
    for i in range(order // degree + 1):
        values[i * degree] = comb(multiplicity + i - 1, i)
    return TruncatedSeries(tuple(values), order)


def pbw_factor(degree: int, multiplicity: int, order: int) -> TruncatedSeries:
    if degree % 2:
        return _exterior_factor(degree, multiplicity, order)
    return _symmetric_factor(degree, multiplicity, order)


def tensor_hilbert(generators: GradedDims, order: int) -> TruncatedSeries:
    """Hilbert series 1/(1 - P_V(t)) of the tensor algebra TV."""
    return (1 - generators.generating_polynomial(order)).invert()


def witt_decompose(generators: GradedDims, order: int) -> GradedDims:
    """Dimensions of the free graded Lie algebra on ``generators`` up to degree ``order``.

    Solves prod_k pbw_factor(k, L_k) = 1/(1 - P_V) one degree at a time: the factor for
    degree k contributes exactly L_k t^k at order k.
    """
    target = tensor_hilbert(generators, order)
    running = TruncatedSeries.one(order)
    dims: dict[int, int] = {}
    for k in range(1, order + 1):
        missing = target[k] - running[k]
        if missing.denominator != 1 or missing < 0:
            raise ConsistencyError(f"Witt inversion in degree {k}", "non-negative integer", missing)
        if missing:
            dims[k] = int(missing)
            running = running * pbw_factor(k, dims[k], order)
    logger.debug("witt_decompose %s up to %d -> %s", generators.items(), order, dims)
    return GradedDims.from_counts(dims, order)


def pbw_hilbert(lie_dims: GradedDims, order: int) -> TruncatedSeries:
    """Hilbert series of UL from the dimensions of L (odd degrees exterior, even symmetric)."""
    series = TruncatedSeries.one(order)
    for degree, count in lie_dims.items():
        if degree <= order:
            series = series * pbw_factor(degree, count, order)
    return series


def newton_recurrence_holds(poly: TruncatedSeries, sums: Sequence[Fraction]) -> bool:
    """Check d q_d + sum_{i=0}^{d-1} q_i S_{d-i} = 0 for every computed S_d."""
    for d in range(1, len(sums) + 1):
        total = d * poly[d] + sum(poly[i] * sums[d - i - 1] for i in range(d))
        if total != 0:
            return False
    return True
