"""Partitions inside the p x (m-p) rectangle and the linear forms they index.

A partition is a weakly decreasing tuple of p nonnegative parts, each at most
m-p, always padded internally to exactly p entries; user-facing text drops
trailing zeros ("2,1", with "0" or "" for the empty partition).

The boundary of a partition's Young diagram, walked from the NE corner of the
rectangle to the SW corner, has p vertical and m-p horizontal steps; the
vertical positions I(lambda) = { m-p+i-lambda_i } drive every linear form
used by the coefficient recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .poly import LinearForm, Polynomial


@dataclass(frozen=True)
class Rect:
    """Shape (p, m) of the ambient Grassmannian: p rows, m-p columns."""

    p: int
    m: int

    def __post_init__(self):
        if not 1 <= self.p < self.m:
            raise ValueError(f"need 1 <= p < m, got p={self.p}, m={self.m}")

    @property
    def cols(self):
        return self.m - self.p

    def partition(self, parts):
        return Partition(self, tuple(parts))

    def zero(self):
        return Partition(self, (0,) * self.p)

    def box(self):
        """The single-box partition (1, 0, ..., 0)."""
        return Partition(self, (1,) + (0,) * (self.p - 1))

    def full(self):
        """The whole rectangle (m-p)^p."""
        return Partition(self, (self.cols,) * self.p)

    def __str__(self):
        return f"Gr({self.p},{self.m})"


class Partition:
    """Partition in a fixed rectangle; immutable and hashable."""

    __slots__ = ("rect", "parts")

    def __init__(self, rect, parts):
        parts = tuple(int(x) for x in parts)
        if len(parts) < rect.p:
            parts = parts + (0,) * (rect.p - len(parts))
        if len(parts) > rect.p:
            if any(parts[rect.p:]):
                raise ValueError(f"partition {parts} has more than {rect.p} parts")
            parts = parts[:rect.p]
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts {parts} are not weakly decreasing")
        if parts and (parts[0] > rect.cols or parts[-1] < 0):
            raise ValueError(f"partition {parts} does not fit in {rect.p}x{rect.cols}")
        object.__setattr__(self, "rect", rect)
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.rect == other.rect and self.parts == other.parts

    def __hash__(self):
        return hash((self.rect, self.parts))

    def __lt__(self, other):
        return self.parts < other.parts

    def __le__(self, other):
        return self.parts <= other.parts

    def __repr__(self):
        return f"Partition({self.rect}, {self.parts})"

    def __str__(self):
        return "(" + format_partition(self) + ")"

    @property
    def weight(self):
        return sum(self.parts)

    @property
    def is_zero(self):
        return not any(self.parts)

    @property
    def is_box(self):
        return self.weight == 1

    @property
    def is_full(self):
        return self.parts == (self.rect.cols,) * self.rect.p

    def contains(self, other):
        """Componentwise containment of Young diagrams."""
        if self.rect != other.rect:
            raise ValueError("rectangle mismatch")
        return all(a >= b for a, b in zip(self.parts, other.parts))

    def covers_above(self):
        """All partitions obtained by adding one box, still in the rectangle."""
        out = []
        p, cols = self.rect.p, self.rect.cols
        for i in range(p):
            cap = cols if i == 0 else self.parts[i - 1]
            if self.parts[i] < cap:
                grown = self.parts[:i] + (self.parts[i] + 1,) + self.parts[i + 1:]
                out.append(Partition(self.rect, grown))
        return out

    def covers_below(self):
        """All partitions obtained by removing one box."""
        out = []
        p = self.rect.p
        for i in range(p):
            floor = 0 if i == p - 1 else self.parts[i + 1]
            if self.parts[i] > floor:
                shrunk = self.parts[:i] + (self.parts[i] - 1,) + self.parts[i + 1:]
                out.append(Partition(self.rect, shrunk))
        return out

    def dual(self):
        """180-degree rotation of the complement in the rectangle."""
        cols = self.rect.cols
        return Partition(self.rect, tuple(cols - x for x in reversed(self.parts)))

    def conjugate(self):
        """Transpose; lives in the (m-p) x p rectangle."""
        target = Rect(self.rect.cols, self.rect.m)
        parts = tuple(sum(1 for x in self.parts if x > j) for j in range(target.p))
        return Partition(target, parts)

    def rim_minus(self):
        """Remove the m-1 boxes of the border rim, or None.

        Exists exactly when the rim has m-1 boxes, i.e. the first part spans
        the rectangle and the last row is nonempty.
        """
        p, cols = self.rect.p, self.rect.cols
        if self.parts[0] != cols or self.parts[-1] == 0:
            return None
        return Partition(self.rect, tuple(x - 1 for x in self.parts[1:]) + (0,))

    def rim_plus(self):
        """Add a border rim of m-1 boxes, or None; inverse of rim_minus."""
        p, cols = self.rect.p, self.rect.cols
        if self.parts[-1] != 0 or self.parts[0] + 1 > cols:
            return None
        return Partition(self.rect, (cols,) + tuple(x + 1 for x in self.parts[:-1]))

    def remove_rows(self, d):
        """Drop the first d rows; lands in the (p-d)-row rectangle of the same m."""
        if not 0 <= d < self.rect.p:
            raise ValueError(f"cannot remove {d} rows from {self.rect.p}")
        return Partition(Rect(self.rect.p - d, self.rect.m), self.parts[d:])

    def remove_cols(self, d):
        """Drop the leftmost d columns; lands in the (p+d)-row rectangle of the same m."""
        if not 0 <= d < self.rect.cols:
            raise ValueError(f"cannot remove {d} columns from {self.rect.cols}")
        return Partition(Rect(self.rect.p + d, self.rect.m), tuple(max(x - d, 0) for x in self.parts))

    def i_set(self):
        """Positions of the vertical steps of the boundary path, as a frozenset."""
        p, m = self.rect.p, self.rect.m
        return frozenset(m - p + i - self.parts[i - 1] for i in range(1, p + 1))

    def j_set(self):
        """Positions of the horizontal steps: the complement of i_set in 1..m."""
        return frozenset(range(1, self.rect.m + 1)) - self.i_set()


def parse_partition(text, rect):
    """Partition from comma-separated parts; '' and '0' mean the zero partition."""
    text = text.strip()
    if text in ("", "0"):
        return rect.zero()
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse partition {text!r}") from None
    return Partition(rect, parts)


def format_partition(partition):
    parts = partition.parts
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    if not parts:
        return "0"
    return ",".join(str(x) for x in parts)


@lru_cache(maxsize=None)
def all_partitions(rect):
    """Every partition in the rectangle, ordered by (weight, parts)."""
    out = []

    def grow(prefix, remaining, cap):
        if remaining == 0:
            out.append(Partition(rect, tuple(prefix)))
            return
        for x in range(cap + 1):
            prefix.append(x)
            grow(prefix, remaining - 1, x)
            prefix.pop()

    grow([], rect.p, rect.cols)
    out.sort(key=lambda lam: (lam.weight, lam.parts))
    return tuple(out)


def f_form(nu, lam):
    """The linear form with +1 on I(nu), -1 on I(lam); antisymmetric in its arguments."""
    if nu.rect != lam.rect:
        raise ValueError("rectangle mismatch")
    m = nu.rect.m
    coeffs = [0] * m
    for i in nu.i_set():
        coeffs[i - 1] += 1
    for i in lam.i_set():
        coeffs[i - 1] -= 1
    return LinearForm(coeffs)


def pieri_diag_coeff(lam):
    """Diagonal coefficient of the box multiplication: sum over I(lam) minus the tail sum."""
    m, p = lam.rect.m, lam.rect.p
    coeffs = [0] * m
    for i in lam.i_set():
        coeffs[i - 1] += 1
    for j in range(m - p + 1, m + 1):
        coeffs[j - 1] -= 1
    return LinearForm(coeffs).as_polynomial()


def diag_closed_form(lam):
    """Product of (T_i - T_j) over i in I(lam), j in J(lam) with i < j."""
    m = lam.rect.m
    result = Polynomial.const(m, 1)
    js = sorted(lam.j_set())
    for i in sorted(lam.i_set()):
        for j in js:
            if i < j:
                diff = [0] * m
                diff[i - 1] = 1
                diff[j - 1] = -1
                result = result * LinearForm(diff).as_polynomial()
    return result
