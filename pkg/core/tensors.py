"""
Complex tensors of rank 1 to 4 and nested mixed sequence norms.

Axis 1 in the 1-based notation is numpy axis 0. It is reduced first
(innermost) by mixed_norm; axis k is reduced last.

Classes:
    Exponent: Exponent p in [1, inf] with an explicit infinity tag
    ExponentVector: One exponent per tensor axis
    AxisPermutation: Bijection of axis indices, 1-based

Functions:
    as_complex_tensor: Validate and convert array-likes
    permute_axes: Realize F o c~ as a pure rearrangement of entries
    mixed_norm: Nested l^{p_1,...,p_k} norm
    dual_exponents: Entrywise conjugate exponents
    pairing: Sesquilinear pairing sum T * conj(U)
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from django.core.exceptions import ValidationError

MAX_RANK = 4

_INFINITY_SPELLINGS = {"inf", "infinity", "∞"}


@dataclass(frozen=True)
class Exponent:
    """
    Exponent p in [1, inf].

    Finite exponents keep their exact rational value, so conjugation is an
    exact involution: p'' == p for every float p.

    Attributes:
        finite: The exponent as a float, or None for the infinity tag
        ratio: Exact rational value of a finite exponent
    """

    finite: float | None
    ratio: Fraction | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.ratio is not None:
            if self.ratio < 1:
                raise ValidationError(f"Exponent must lie in [1, inf], got {self.ratio}")
            object.__setattr__(self, "finite", float(self.ratio))
            return
        value = self.finite
        if value is None:
            return
        if isinstance(value, str):
            if value.strip().lower() in _INFINITY_SPELLINGS:
                object.__setattr__(self, "finite", None)
                return
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise ValidationError(f"Exponent must be a number >= 1 or 'inf', got {self.finite!r}")
        if math.isinf(value) and value > 0:
            object.__setattr__(self, "finite", None)
            return
        if math.isnan(value) or value < 1:
            raise ValidationError(f"Exponent must lie in [1, inf], got {self.finite!r}")
        object.__setattr__(self, "finite", value)
        object.__setattr__(self, "ratio", Fraction(value))

    @classmethod
    def infinity(cls):
        return cls(None)

    @classmethod
    def coerce(cls, value):
        """Return value unchanged if already an Exponent, otherwise parse it."""
        if isinstance(value, Exponent):
            return value
        return cls(value)

    @property
    def is_infinite(self):
        return self.finite is None

    @property
    def value(self):
        """Float value, math.inf for the infinity tag (display and comparison only)."""
        return math.inf if self.finite is None else self.finite

    def conjugate(self):
        """Conjugate exponent p' with 1/p + 1/p' = 1."""
        if self.is_infinite:
            return Exponent(1.0)
        if self.finite == 1.0:
            return Exponent.infinity()
        return Exponent(None, ratio=self.ratio / (self.ratio - 1))

    def __str__(self):
        if self.is_infinite:
            return "inf"
        return f"{self.finite:g}"


@dataclass(frozen=True)
class ExponentVector:
    """
    Ordered exponents (p_1, ..., p_k), k in 1..4; p_1 drives the innermost axis.

    Attributes:
        entries: Tuple of Exponent
    """

    entries: tuple

    def __post_init__(self):
        entries = tuple(Exponent.coerce(entry) for entry in self.entries)
        if not 1 <= len(entries) <= MAX_RANK:
            raise ValidationError(
                f"Exponent vector must have 1 to {MAX_RANK} entries, got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *values):
        return cls(tuple(values))

    @classmethod
    def coerce(cls, value):
        """Accept an ExponentVector, a sequence of exponents or a string like '1,inf'."""
        if isinstance(value, ExponentVector):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(tuple(value))

    @classmethod
    def parse(cls, text):
        """
        Parse a comma separated exponent list.

        Args:
            text: e.g. "1,inf,2,4"

        Returns:
            ExponentVector
        """
        parts = [part.strip() for part in text.split(",") if part.strip()]
        return cls(tuple(parts))

    def conjugate(self):
        return ExponentVector(tuple(entry.conjugate() for entry in self.entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __str__(self):
        return "(" + ",".join(str(entry) for entry in self.entries) + ")"


@dataclass(frozen=True)
class AxisPermutation:
    """
    Permutation c of {1..k} identified with c~(x_1..x_k) = (x_c(1), ..., x_c(k)).

    Attributes:
        map: Tuple (c(1), ..., c(k)) of 1-based indices
    """

    map: tuple

    def __post_init__(self):
        try:
            mapping = tuple(int(index) for index in self.map)
        except (TypeError, ValueError):
            raise ValidationError(f"Permutation entries must be integers, got {self.map!r}")
        if not 1 <= len(mapping) <= MAX_RANK:
            raise ValidationError(
                f"Permutation length must be 1 to {MAX_RANK}, got {len(mapping)}"
            )
        if sorted(mapping) != list(range(1, len(mapping) + 1)):
            raise ValidationError(f"{mapping} is not a bijection of 1..{len(mapping)}")
        object.__setattr__(self, "map", mapping)

    @classmethod
    def identity(cls, length):
        return cls(tuple(range(1, length + 1)))

    @classmethod
    def from_matrix(cls, matrix):
        """Build c from a permutation matrix P with (P x)_i = x_c(i)."""
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError(f"Permutation matrix must be square, got shape {matrix.shape}")
        is_binary = np.isin(matrix, (0, 1)).all()
        if not (is_binary and (matrix.sum(axis=0) == 1).all() and (matrix.sum(axis=1) == 1).all()):
            raise ValidationError("Not a permutation matrix: need a single 1 per row and column")
        return cls(tuple(int(np.argmax(row)) + 1 for row in matrix))

    def __len__(self):
        return len(self.map)

    @property
    def matrix(self):
        """Permutation matrix P with (P x)_i = x_c(i)."""
        size = len(self.map)
        matrix = np.zeros((size, size), dtype=int)
        for row, column in enumerate(self.map):
            matrix[row, column - 1] = 1
        return matrix

    def inverse(self):
        inverse = [0] * len(self.map)
        for position, index in enumerate(self.map, start=1):
            inverse[index - 1] = position
        return AxisPermutation(tuple(inverse))

    def compose(self, other):
        """
        Composition c~_self o c~_other, i.e. the matrix product P_self P_other.

        Args:
            other: AxisPermutation of the same length

        Returns:
            AxisPermutation whose map is i -> other(self(i))
        """
        if len(other) != len(self):
            raise ValidationError(
                f"Cannot compose permutations of lengths {len(self)} and {len(other)}"
            )
        return AxisPermutation(tuple(other.map[index - 1] for index in self.map))

    def apply(self, point):
        """Evaluate c~ on a coordinate tuple."""
        if len(point) != len(self.map):
            raise ValidationError(f"Point {point!r} does not have {len(self.map)} coordinates")
        return tuple(point[index - 1] for index in self.map)

    def __str__(self):
        return "(" + ",".join(str(index) for index in self.map) + ")"


def as_complex_tensor(values, name="tensor"):
    """
    Convert an array-like to a finite complex128 array of rank 1..4.

    Args:
        values: Array-like of numbers
        name: Field name used in error messages

    Returns:
        numpy.ndarray: complex128 array (no copy if already conforming)

    Raises:
        ValidationError: On rank outside 1..4, an empty axis or a non-finite entry
    """
    try:
        array = np.asarray(values, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{name}: cannot convert to a complex array ({e})")
    if not 1 <= array.ndim <= MAX_RANK:
        raise ValidationError(f"{name}: rank must be 1 to {MAX_RANK}, got {array.ndim}")
    if 0 in array.shape:
        raise ValidationError(f"{name}: empty axes are not allowed, shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"{name}: entries must be finite")
    return array


def coerce_permutation(permutation):
    """Accept an AxisPermutation or a sequence of 1-based indices."""
    if isinstance(permutation, AxisPermutation):
        return permutation
    return AxisPermutation(tuple(permutation))


def permute_axes(tensor, permutation):
    """
    Compose a tensor with the coordinate map of a permutation.

    (F o c~)(y_1, ..., y_k) = F(y_c(1), ..., y_c(k)), so axis i of F becomes
    axis c(i) of the result.

    Args:
        tensor: Complex tensor F of rank k
        permutation: AxisPermutation of length k

    Returns:
        numpy.ndarray: The rearranged tensor

    Raises:
        ValidationError: If the permutation length differs from the rank
    """
    tensor = as_complex_tensor(tensor)
    permutation = coerce_permutation(permutation)
    if len(permutation) != tensor.ndim:
        raise ValidationError(
            f"Permutation of length {len(permutation)} applied to a rank {tensor.ndim} tensor"
        )
    destination = [index - 1 for index in permutation.map]
    return np.ascontiguousarray(np.moveaxis(tensor, list(range(tensor.ndim)), destination))


def _group_exponents(exponents):
    """Runs of equal consecutive exponents as (exponent, run length) pairs."""
    groups = []
    for exponent in exponents:
        if groups and groups[-1][0] == exponent:
            groups[-1][1] += 1
        else:
            groups.append([exponent, 1])
    return [(exponent, count) for exponent, count in groups]


def _flat_norm(magnitudes, exponent):
    # fsum is correctly rounded, so the value depends only on the multiset of entries
    if exponent.is_infinite:
        return float(magnitudes.max())
    if exponent.finite == 1.0:
        return math.fsum(magnitudes.tolist())
    scale = float(magnitudes.max())
    if scale == 0.0:
        return 0.0
    return scale * math.fsum(((magnitudes / scale) ** exponent.finite).tolist()) ** (
        1.0 / exponent.finite
    )


def _reduce_leading_axis(magnitudes, exponent):
    # last axis contiguous so numpy sums pairwise
    values = np.ascontiguousarray(np.moveaxis(magnitudes, 0, -1))
    if exponent.is_infinite:
        return values.max(axis=-1)
    if exponent.finite == 1.0:
        return values.sum(axis=-1)
    scale = values.max(axis=-1)
    safe = np.where(scale > 0, scale, 1.0)
    total = ((values / safe[..., None]) ** exponent.finite).sum(axis=-1)
    return scale * total ** (1.0 / exponent.finite)


def mixed_norm(tensor, exponents):
    """
    Nested mixed norm with axis 1 innermost and axis k outermost.

    Consecutive axes with equal exponents are reduced jointly, which is the
    same quantity (l^{p,p} = l^p on the product index set). When every
    exponent is equal the whole tensor is reduced with a correctly rounded sum,
    so the value is invariant under any rearrangement of entries.

    Args:
        tensor: Complex tensor of rank k
        exponents: ExponentVector (or coercible) of length k

    Returns:
        float: The nonnegative norm value

    Raises:
        ValidationError: If lengths disagree
    """
    tensor = as_complex_tensor(tensor)
    exponents = ExponentVector.coerce(exponents)
    if len(exponents) != tensor.ndim:
        raise ValidationError(
            f"Exponent vector of length {len(exponents)} applied to a rank {tensor.ndim} tensor"
        )
    magnitudes = np.abs(tensor)
    groups = _group_exponents(exponents)
    if len(groups) == 1:
        return _flat_norm(magnitudes.ravel(), groups[0][0])

    current = magnitudes
    for exponent, count in groups:
        merged = int(np.prod(current.shape[:count]))
        current = current.reshape((merged,) + current.shape[count:], order="F")
        current = _reduce_leading_axis(current, exponent)
    return float(current)


def dual_exponents(exponents):
    """
    Entrywise conjugate exponents, 1 <-> inf.

    Args:
        exponents: ExponentVector (or coercible)

    Returns:
        ExponentVector
    """
    return ExponentVector.coerce(exponents).conjugate()


def pairing(tensor, other):
    """
    Sesquilinear pairing sum over all indices of T * conj(U).

    Raises:
        ValidationError: On shape mismatch
    """
    tensor = as_complex_tensor(tensor, name="T")
    other = as_complex_tensor(other, name="U")
    if tensor.shape != other.shape:
        raise ValidationError(f"Pairing needs equal shapes, got {tensor.shape} and {other.shape}")
    return complex(np.sum(tensor * np.conj(other)))
