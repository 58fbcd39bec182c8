"""Integer partitions: enumeration, conjugation, hooks, SYT counts, contents, profiles.

Coordinates for profiles follow the Russian convention: a box in row ``i`` and
column ``j`` (both 1-indexed) has content ``j - i``; the boundary point at
French position ``(col, row)`` maps to ``x = col - row``, ``y = col + row``.
Every unit box therefore has area 2 in ``(x, y)`` and area ``2/n`` after the
``1/sqrt(n)`` rescaling, so ``integral(psi - |x|) = 2`` for a partition of n.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Immutable and hashable; ``size`` and ``length`` are cached on construction.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        self = super().__new__(cls, (int(p) for p in parts))
        prev = None
        for p in self:
            if p < 1:
                raise ValueError(f"non-positive part in {tuple(self)}")
            if prev is not None and p > prev:
                raise ValueError(f"parts not weakly decreasing: {tuple(self)}")
            prev = p
        self._size = sum(self)
        return self

    @classmethod
    def _trusted(cls, parts: Sequence[int]) -> "Partition":
        # Skips validation; callers guarantee a valid part sequence.
        self = tuple.__new__(cls, parts)
        self._size = sum(parts)
        return self

    @property
    def size(self) -> int:
        return self._size

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-indexed part, zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"[4,2,1]"`` (text form) or ``[4, 2, 1]`` (JSON array)."""
        value = json.loads(text)
        if not isinstance(value, list) or not all(isinstance(p, int) for p in value):
            raise ValueError(f"not a partition: {text!r}")
        return cls(value)

    def to_json(self) -> list[int]:
        return list(self)


EMPTY = Partition()


def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    return _partition_counts(n)[n]


@lru_cache(maxsize=None)
def _partition_counts(n: int) -> tuple[int, ...]:
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return tuple(p)


def partitions_of(n: int, first_part: int | None = None) -> Iterator[Partition]:
    """Yield every partition of ``n`` in lexicographically descending order.

    With ``first_part`` set, yield only the (contiguous) block of partitions
    whose largest part equals it; the blocks for ``first_part = n, ..., 1``
    concatenate to the full stream, which is how the Frobenius sum is split
    across workers.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        if first_part in (None, 0):
            yield EMPTY
        return
    if first_part is not None and not 1 <= first_part <= n:
        return
    top = n if first_part is None else first_part
    # greedy start: largest part `top`, rest filled as lexicographically large as possible
    a = [top]
    rest = n - top
    while rest:
        a.append(min(top, rest))
        rest -= a[-1]
    while True:
        yield Partition._trusted(a)
        # drop trailing ones, then decrement the last part > 1
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        if first_part is not None and len(a) == 1:
            return
        v = a.pop() - 1
        rest = ones + 1
        a.append(v)
        while rest:
            a.append(min(v, rest))
            rest -= a[-1]


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return EMPTY
    out = []
    i = len(lam)
    for j in range(1, lam[0] + 1):
        while lam[i - 1] < j:
            i -= 1
        out.append(i)
    return Partition._trusted(out)


def hook_lengths(lam: Sequence[int]) -> list[int]:
    """Hook length of every box, row-major."""
    conj = conjugate(lam)
    return [
        row - i + conj[j] - j - 1
        for i, row in enumerate(lam)
        for j in range(row)
    ]


def dim_syt(lam: Sequence[int]) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook-length formula)."""
    n = sum(lam)
    return _factorial(n) // math.prod(hook_lengths(lam))


@lru_cache(maxsize=256)
def _factorial(n: int) -> int:
    return math.factorial(n)


def log_dim_syt(lam: Sequence[int]) -> float:
    n = sum(lam)
    if n < 1:
        raise ValueError("log_dim_syt needs a non-empty partition")
    return math.lgamma(n + 1) - math.fsum(math.log(h) for h in hook_lengths(lam))


def content_sum(lam: Sequence[int]) -> int:
    return sum(p * (p - 2 * i - 1) for i, p in enumerate(lam)) // 2


def split_big_small(lam: Sequence[int], threshold: int) -> tuple[Partition, Partition]:
    """Split into parts ``> threshold`` and parts ``<= threshold``."""
    big = [p for p in lam if p > threshold]
    small = [p for p in lam if p <= threshold]
    return Partition._trusted(big), Partition._trusted(small)


def addable_rows(lam: Sequence[int]) -> list[int]:
    """0-indexed rows where a box can be appended."""
    rows = [0]
    rows.extend(i for i in range(1, len(lam)) if lam[i - 1] > lam[i])
    if lam:
        rows.append(len(lam))
    return rows


def removable_rows(lam: Sequence[int]) -> list[int]:
    """0-indexed rows whose last box is a removable corner."""
    k = len(lam)
    return [i for i in range(k) if i == k - 1 or lam[i] > lam[i + 1]]


def add_box(lam: Sequence[int], row: int) -> Partition:
    parts = list(lam)
    if row == len(parts):
        parts.append(1)
    else:
        parts[row] += 1
    return Partition._trusted(parts)


def remove_box(lam: Sequence[int], row: int) -> Partition:
    parts = list(lam)
    parts[row] -= 1
    if parts[row] == 0:
        parts.pop()
    return Partition._trusted(parts)


def add_box_shapes(mu: Sequence[int]) -> list[Partition]:
    return [add_box(mu, r) for r in addable_rows(mu)]


def remove_box_shapes(lam: Sequence[int]) -> list[Partition]:
    if not lam:
        raise ValueError("cannot remove a box from the empty partition")
    return [remove_box(lam, r) for r in removable_rows(lam)]


@dataclass(frozen=True)
class Profile:
    """Piecewise-linear rescaled boundary of a Young diagram.

    ``raw`` holds the integer corner points ``(x, y)`` before rescaling; the
    encoded function is ``y / sqrt(n)`` against ``x / sqrt(n)`` on the hull of
    the breakpoints and ``|x|`` outside it.
    """

    n: int
    raw: tuple[tuple[int, int], ...]

    @property
    def scale(self) -> float:
        return 1.0 / math.sqrt(self.n)

    @property
    def breakpoints(self) -> np.ndarray:
        return np.asarray(self.raw, dtype=float) * self.scale

    def __call__(self, x):
        pts = self.breakpoints
        x = np.asarray(x, dtype=float)
        inside = np.interp(x, pts[:, 0], pts[:, 1])
        outside = (x < pts[0, 0]) | (x > pts[-1, 0])
        return np.where(outside, np.abs(x), inside)

    def area(self) -> Fraction:
        """Exact value of the integral of ``psi - |x|`` in rescaled units."""
        return Fraction(_raw_moment(self.raw, 0), self.n)

    def first_moment(self) -> Fraction:
        """Exact value of the integral of ``x (psi - |x|)`` times ``n^{3/2}``."""
        return Fraction(_raw_moment(self.raw, 1))


def _raw_moment(raw, k: int) -> Fraction:
    # integral of x^k (psi(x) - |x|) over the integer breakpoints, exactly;
    # segments have slope +-1, so (k+1)(k+2) times the integral is an integer
    total = 0
    for (x0, y0), (x1, y1) in zip(raw, raw[1:]):
        if x1 == x0:
            continue
        s = (y1 - y0) // (x1 - x0)
        total += (k + 1) * s * (x1 ** (k + 2) - x0 ** (k + 2))
        total += (k + 2) * (y0 - s * x0) * (x1 ** (k + 1) - x0 ** (k + 1))
        total -= (k + 1) * (_abs_power(x1, k + 2) - _abs_power(x0, k + 2))
    return Fraction(total, (k + 1) * (k + 2))


def _abs_power(x: int, p: int) -> int:
    # x^(p-1) |x|, the antiderivative of x^k |x| up to the factor 1/(k+2)
    return x**p if x >= 0 else -(x**p)


def rescaled_profile(lam: Sequence[int], n: int | None = None) -> Profile:
    """Profile of ``lam`` rescaled by ``1/sqrt(n)`` (``n`` defaults to ``|lam|``).

    ``n`` may exceed ``|lam|``, as when profiling the partition with its first
    part removed against the scaling of the full partition.
    """
    size = sum(lam)
    if n is None:
        n = size
    if n < size:
        raise ValueError("normalisation size smaller than the partition")
    if n < 1:
        n = 1
    if not lam:
        return Profile(n, ((0, 0),))
    # walk the French boundary from (col 0, row len) to (col lam_1, row 0)
    pts = []
    row = len(lam)
    pts.append((0, row))
    for i in range(len(lam) - 1, -1, -1):
        pts.append((lam[i], row))
        row = i
        pts.append((lam[i], row))
    raw = []
    for col, r in pts:
        p = (col - r, col + r)
        if raw and raw[-1] == p:
            continue
        # merge collinear runs
        if len(raw) >= 2:
            (ax, ay), (bx, by) = raw[-2], raw[-1]
            if (by - ay) * (p[0] - bx) == (p[1] - by) * (bx - ax):
                raw[-1] = p
                continue
        raw.append(p)
    return Profile(n, tuple(raw))
