"""Exact Plancherel-Hurwitz tables and samplers.

The Plancherel-Hurwitz measure on partitions of n gives ``lam`` weight
``f_lam^2 C_lam^ell / (n! H(n, ell))``; its positive half conditions on
``C_lam > 0``. Exact tables are enumerated with rationals for small n;
larger n are handled by a Metropolis-Hastings chain on single-box moves.
"""
from __future__ import annotations

import bisect
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .hurwitz import check_budget
from .partitions import (
    Partition,
    content_sum,
    dim_syt,
    log_dim_syt,
    partitions_of,
)

GENERATOR_NAME = "numpy.random.PCG64"
_BLOCK = 1 << 14


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Seeded generator; ``stream`` separates independent chains of one run."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream])))


def generator_info() -> dict:
    return {"name": GENERATOR_NAME, "numpy": np.__version__}


class UndefinedMeasure(ValueError):
    pass


@dataclass(frozen=True)
class MeasureSpec:
    n: int
    ell: int
    variant: str = "full"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.ell < 0 or self.ell % 2:
            raise ValueError("ell must be a non-negative even integer")
        if self.variant not in ("full", "positive-half"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "positive-half" and self.ell == 0:
            raise ValueError("the positive half needs ell > 0")

    def admits(self, c: int) -> bool:
        """Whether a partition with content sum ``c`` has positive weight."""
        if self.variant == "positive-half":
            return c > 0
        return c != 0 or self.ell == 0


@dataclass(frozen=True)
class ExactMeasureTable:
    spec: MeasureSpec
    entries: Mapping[Partition, Fraction]

    def __getitem__(self, lam) -> Fraction:
        return self.entries.get(Partition(lam), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))


def exact_measure(spec: MeasureSpec, budget: int | None = None) -> ExactMeasureTable:
    check_budget(spec.n, budget)
    weights = {}
    for lam in partitions_of(spec.n):
        c = content_sum(lam)
        if not spec.admits(c):
            weights[lam] = 0
            continue
        f = dim_syt(lam)
        weights[lam] = f * f * c**spec.ell
    z = sum(weights.values())
    if z == 0:
        raise UndefinedMeasure(f"zero normaliser for {spec}")
    return ExactMeasureTable(spec, {lam: Fraction(w, z) for lam, w in weights.items()})


def tv_distance(samples: Sequence[Partition] | Counter, table: ExactMeasureTable) -> float:
    """Total variation distance between an empirical sample and an exact table."""
    counts = samples if isinstance(samples, Counter) else Counter(samples)
    total = sum(counts.values())
    support = set(counts) | set(table.entries)
    return 0.5 * sum(abs(counts.get(lam, 0) / total - float(table[lam])) for lam in support)


# --- Robinson-Schensted -------------------------------------------------------

def _check_permutation(sigma: Sequence[int]) -> None:
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"not a permutation of [n]: {list(sigma)}")


def rsk(sigma: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-insertion tableaux ``(P, Q)`` of a permutation in one-line notation."""
    _check_permutation(sigma)
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, value in enumerate(sigma, start=1):
        row = 0
        while True:
            if row == len(P):
                P.append([value])
                Q.append([step])
                break
            r = P[row]
            k = bisect.bisect_right(r, value)
            if k == len(r):
                r.append(value)
                Q[row].append(step)
                break
            r[k], value = value, r[k]
            row += 1
    return P, Q


def rsk_shape(sigma: Sequence[int]) -> Partition:
    """Shape of the RSK tableaux, without tracking the recording tableau."""
    rows: list[list[int]] = []
    for value in sigma:
        for r in rows:
            k = bisect.bisect_right(r, value)
            if k == len(r):
                r.append(value)
                break
            r[k], value = value, r[k]
        else:
            rows.append([value])
    return Partition._trusted([len(r) for r in rows])


# --- Plancherel samplers ------------------------------------------------------

def corner_contents(lam: Sequence[int]) -> tuple[list[int], list[int], list[int]]:
    """Addable rows, their contents, and the contents of removable corners."""
    rows, addable, removable = [], [], []
    k = len(lam)
    prev = None
    for i, p in enumerate(lam):
        if prev is None or prev > p:
            rows.append(i)
            addable.append(p - i)
        if i == k - 1 or p > lam[i + 1]:
            removable.append(p - 1 - i)
        prev = p
    rows.append(k)
    addable.append(-k)
    return rows, addable, removable


def growth_probabilities(mu: Sequence[int]) -> tuple[list[int], list[float]]:
    """Transition probabilities ``f_nu / ((|mu|+1) f_mu)`` of the growth process.

    Evaluated from the interlacing corner contents of ``mu`` (Kerov's
    transition measure): for the addable corner of content ``x``, the
    probability is ``prod_y (x - y) / prod_{x' != x} (x - x')``.
    """
    rows, xs, ys = corner_contents(mu)
    probs = []
    for k, x in enumerate(xs):
        num = math.prod(x - y for y in ys)
        den = math.prod(x - xi for i, xi in enumerate(xs) if i != k)
        probs.append(num / den)
    return rows, probs


def plancherel_sample(n: int, rng: np.random.Generator, method: str = "rsk") -> Partition:
    if n < 1:
        raise ValueError("n must be >= 1")
    if method == "rsk":
        return rsk_shape((rng.permutation(n) + 1).tolist())
    if method == "growth":
        lam: list[int] = []
        for u in rng.random(n):
            rows, probs = growth_probabilities(lam)
            acc = 0.0
            pick = rows[-1]
            for row, p in zip(rows, probs):
                acc += p
                if u < acc:
                    pick = row
                    break
            if pick == len(lam):
                lam.append(1)
            else:
                lam[pick] += 1
        return Partition._trusted(lam)
    raise ValueError(f"unknown method {method!r}")


# --- Metropolis-Hastings ------------------------------------------------------

@dataclass(frozen=True)
class ChainConfig:
    steps: int
    burnin: int = 0
    thin: int = 1
    seed: int = 0
    initial: Sequence[int] | None = None  # None: first row atop a staircase

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.burnin < 0 or self.burnin > self.steps:
            raise ValueError("burnin must lie in [0, steps]")
        if self.thin < 1:
            raise ValueError("thin must be >= 1")


class ChainSample(NamedTuple):
    step: int
    partition: Partition
    content: int
    logw: float

    def to_json(self) -> dict:
        return {"step": self.step, "partition": list(self.partition), "C": self.content, "logw": self.logw}


def staircase_fill(m: int, cap: int) -> list[int]:
    """A staircase-like partition of m with parts at most ``cap``."""
    k = 0
    while (k + 1) * (k + 2) // 2 <= m and k + 1 <= cap:
        k += 1
    parts = list(range(k, 0, -1))
    rest = m - k * (k + 1) // 2
    # spread the remainder one box per row from the top, then new rows of height 1
    i = 0
    while rest:
        if i < len(parts):
            if parts[i] < cap and (i == 0 or parts[i] < parts[i - 1]):
                parts[i] += 1
                rest -= 1
            i += 1
        else:
            parts.append(1)
            rest -= 1
            i = 0
    parts.sort(reverse=True)
    return parts


def warm_start(spec: MeasureSpec) -> Partition:
    """A long first row of length ``round(2 ell / log n)`` above a staircase bulk."""
    n, ell = spec.n, spec.ell
    first = round(2 * ell / math.log(n)) if n > 1 and ell > 0 else 0
    if first >= n:
        return Partition([n])
    if first < 1:
        lam = Partition(staircase_fill(n, n))
    else:
        lam = Partition([first] + staircase_fill(n - first, first))
    if not spec.admits(content_sum(lam)):
        lam = Partition([n])
    return lam


def log_weight(lam: Sequence[int], ell: int) -> float:
    c = content_sum(lam)
    logc = math.log(abs(c)) if ell else 0.0
    return 2 * log_dim_syt(lam) + ell * logc


class PlancherelHurwitzChain:
    """Metropolis-Hastings chain targeting the Plancherel-Hurwitz measure.

    Proposal: remove the box of a uniformly chosen removable corner, then add
    a box at a uniformly chosen addable corner of the intermediate shape. For
    a move ``lam -> nu`` through the intermediate ``mu`` the forward
    probability is ``1 / (R(lam) A(mu))`` and the reverse one
    ``1 / (R(nu) A(mu))``, so the Hastings factor is ``R(lam) / R(nu)`` with
    ``R`` the number of removable corners.
    """

    def __init__(self, spec: MeasureSpec, rng: np.random.Generator, initial: Sequence[int] | None = None):
        self.spec = spec
        self.rng = rng
        lam = Partition(initial) if initial is not None else warm_start(spec)
        if lam.size != spec.n:
            raise ValueError(f"initial state {lam} is not a partition of {spec.n}")
        c = content_sum(lam)
        if not spec.admits(c):
            raise ValueError(f"initial state {lam} has zero weight under {spec}")
        self.parts = list(lam)
        self.content = c
        self.proposed = 0
        self.accepted = 0

    @property
    def state(self) -> Partition:
        return Partition._trusted(self.parts)

    def _uniforms(self) -> Iterator[float]:
        while True:
            yield from self.rng.random(_BLOCK).tolist()

    def run(self, steps: int) -> Iterator[int]:
        """Advance ``steps`` steps, yielding the step number after each one."""
        lam = self.parts
        ell = self.spec.ell
        positive = self.spec.variant == "positive-half"
        u = self._uniforms()
        for step in range(1, steps + 1):
            self.proposed += 1
            k = len(lam)
            # removable rows of lam
            rem = [i for i in range(k - 1) if lam[i] > lam[i + 1]]
            rem.append(k - 1)
            r = rem[int(next(u) * len(rem))]
            c_out = lam[r] - 1 - r
            # intermediate shape mu: lam with the box in row r removed
            lam[r] -= 1
            popped = lam[r] == 0
            if popped:
                lam.pop()
            rows, xs, ys = corner_contents(lam)
            pick = int(next(u) * len(rows))
            a = rows[pick]
            c_in = xs[pick]
            v = next(u)
            if a == r:
                self._restore(r, popped)
                self.accepted += 1
                yield step
                continue
            c_new = self.content - c_out + c_in
            if c_new == 0 and ell > 0 or positive and c_new <= 0:
                self._restore(r, popped)
                yield step
                continue
            # f_nu / f_lam from the corner contents of mu
            ratio = 1.0
            for y in ys:
                ratio *= (c_in - y) / (c_out - y)
            for x in xs:
                if x != c_in and x != c_out:
                    ratio *= (c_out - x) / (c_in - x)
            ratio = abs(ratio)
            if a == len(lam):
                lam.append(1)
            else:
                lam[a] += 1
            r_nu = 1 + sum(1 for i in range(len(lam) - 1) if lam[i] > lam[i + 1])
            log_alpha = 2 * math.log(ratio) + math.log(len(rem) / r_nu)
            if ell:
                log_alpha += ell * math.log(abs(c_new / self.content))
            if log_alpha >= 0 or v < math.exp(log_alpha):
                self.content = c_new
                self.accepted += 1
            else:
                # undo: remove the added box, put back the removed one
                lam[a] -= 1
                if lam[a] == 0:
                    lam.pop()
                self._restore(r, popped)
            yield step

    def _restore(self, r: int, popped: bool) -> None:
        if popped:
            self.parts.append(1)
        else:
            self.parts[r] += 1


def mh_sample(spec: MeasureSpec, cfg: ChainConfig, rng: np.random.Generator | None = None) -> Iterator[ChainSample]:
    """Emit chain states after burn-in at the thinning interval.

    The initial state is validated immediately, before any sample is drawn.
    The stream is a deterministic function of ``cfg.seed`` when ``rng`` is
    not given.
    """
    if rng is None:
        rng = make_rng(cfg.seed)
    return _emit(PlancherelHurwitzChain(spec, rng, cfg.initial), cfg)


def _emit(chain: PlancherelHurwitzChain, cfg: ChainConfig) -> Iterator[ChainSample]:
    ell = chain.spec.ell
    for step in chain.run(cfg.steps):
        if step > cfg.burnin and (step - cfg.burnin) % cfg.thin == 0:
            lam = chain.state
            yield ChainSample(step, lam, chain.content, log_weight(lam, ell))
