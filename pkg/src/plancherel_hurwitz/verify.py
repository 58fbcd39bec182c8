"""Invariant suites run by ``phw verify``.

Each check returns ``(passed, detail)``. Library functions are looked up
through their modules at call time so a patched implementation is exercised.
"""
from __future__ import annotations

import itertools
import math
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import hurwitz, limit_shape, maps, partitions, samplers


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed, "detail": self.detail}


def _rsk_identity(max_n: int = 30):
    for n in range(max_n + 1):
        total = sum(partitions.dim_syt(lam) ** 2 for lam in partitions.partitions_of(n))
        if total != math.factorial(n):
            return False, f"sum f^2 != n! at n={n}"
    return True, f"n <= {max_n}"


def _worked_example_values():
    f = partitions.dim_syt((4, 2, 1))
    c = partitions.content_sum((4, 2, 1))
    conj = partitions.conjugate((7, 4, 2, 1))
    ok = f == 35 and c == 3 and tuple(conj) == (4, 3, 2, 2, 1, 1, 1)
    return ok, f"f={f}, C={c}, conj={list(conj)}"


def _growth_normalisation(max_n: int = 15):
    for m in range(max_n):
        for mu in partitions.partitions_of(m):
            if sum(partitions.dim_syt(nu) for nu in partitions.add_box_shapes(mu)) != (m + 1) * partitions.dim_syt(mu):
                return False, f"fails at mu={mu}"
    return True, f"|mu| < {max_n}"


def _conjugation(max_n: int = 20):
    for n in range(max_n + 1):
        for lam in partitions.partitions_of(n):
            conj = partitions.conjugate(lam)
            if partitions.dim_syt(conj) != partitions.dim_syt(lam):
                return False, f"f differs for {lam}"
            if partitions.content_sum(conj) != -partitions.content_sum(lam):
                return False, f"C not antisymmetric for {lam}"
    return True, f"n <= {max_n}"


def _content_bounds(max_n: int = 25):
    for n in range(1, max_n + 1):
        for lam in partitions.partitions_of(n):
            c = partitions.content_sum(lam)
            if 2 * c > lam[0] * n:
                return False, f"C > lam1 n / 2 at {lam}"
            # every cut after the first p rows, plus the part-size splits
            cuts = [(lam[:p], lam[p:]) for p in range(len(lam) + 1)]
            cuts += [partitions.split_big_small(lam, t) for t in range(lam[0] + 1)]
            for big, small in cuts:
                rhs = partitions.content_sum(big) - len(big) * sum(small) + partitions.content_sum(small)
                if rhs != c:
                    return False, f"split identity fails at {lam} = {list(big)} + {list(small)}"
    return True, f"n <= {max_n}"


def _content_from_profile(max_n: int = 40):
    for n in range(1, max_n + 1):
        for lam in partitions.partitions_of(n):
            if limit_shape.content_from_profile(lam) != partitions.content_sum(lam):
                return False, f"mismatch at {lam}"
    return True, f"n <= {max_n}"


def _oracle_equivalence():
    cases = [(n, ell) for n in range(1, 6) for ell in range(0, 11, 2)]
    cases += [(n, ell) for n in (6, 7) for ell in range(0, 7, 2)]
    for n, ell in cases:
        a = hurwitz.hurwitz_number(n, ell)
        b = hurwitz.hurwitz_number_bruteforce(n, ell)
        if a != b:
            return False, f"H({n},{ell}): frobenius {a} != bruteforce {b}"
    return True, f"{len(cases)} cases"


def _parity_and_values():
    for n in range(1, 13):
        for ell in range(1, 16, 2):
            if hurwitz.hurwitz_number(n, ell) != 0:
                return False, f"H({n},{ell}) nonzero"
    ok = (
        hurwitz.hurwitz_number(3, 2) == 3
        and hurwitz.hurwitz_number(3, 4) == 27
        and all(hurwitz.hurwitz_number(2, ell) == 1 for ell in range(0, 21, 2))
        and hurwitz.return_probability(3, 2) == Fraction(1, 3)
    )
    return ok, "odd ell vanishes for n <= 12; H(3,2)=3, H(3,4)=27, H(2,*)=1, P(3,2)=1/3"


def _exact_tables():
    for n in range(2, 11):
        for ell in (0, 2, 4, 8):
            full = samplers.exact_measure(samplers.MeasureSpec(n, ell))
            if full.total() != 1:
                return False, f"table ({n},{ell}) does not sum to 1"
            for lam, p in full.entries.items():
                if full[partitions.conjugate(lam)] != p:
                    return False, f"conjugation symmetry fails at {lam}"
            if ell:
                half = samplers.exact_measure(samplers.MeasureSpec(n, ell, "positive-half"))
                for lam, p in half.entries.items():
                    expect = 2 * full[lam] if partitions.content_sum(lam) > 0 else 0
                    if p != expect:
                        return False, f"positive half mismatch at {lam}"
    return True, "n <= 10, ell in {0,2,4,8}"


def _omega_anchors():
    jump = max(abs(limit_shape.omega(s * 2.0) - 2.0) for s in (-1, 1))
    area = limit_shape.omega_area()
    ok = jump <= 1e-9 and abs(area - 2) <= 1e-6
    return ok, f"|omega(+-2) - 2| = {jump:.2e}, area = {area:.9f}"


def _mh_tv(seed: int):
    spec = samplers.MeasureSpec(8, 4, "positive-half")
    table = samplers.exact_measure(spec)
    cfg = samplers.ChainConfig(steps=10_000 + 10 * 100_000, burnin=10_000, thin=10, seed=seed)
    counts = Counter(s.partition for s in samplers.mh_sample(spec, cfg))
    tv = samplers.tv_distance(counts, table)
    return tv <= 0.05, f"TV = {tv:.4f} over {sum(counts.values())} samples"


def _plancherel_tv(seed: int):
    rsk_rng = samplers.make_rng(seed, 1)
    growth_rng = samplers.make_rng(seed, 2)
    a = Counter(samplers.plancherel_sample(6, rsk_rng, "rsk") for _ in range(100_000))
    b = Counter(samplers.plancherel_sample(6, growth_rng, "growth") for _ in range(100_000))
    support = set(a) | set(b)
    tv = 0.5 * sum(abs(a[k] - b[k]) for k in support) / 100_000
    return tv <= 0.02, f"TV(rsk, growth) = {tv:.4f}"


REFERENCE_MAPS = {
    "1 2;2 3;3 4;3 4;2 3;1 2": [0],
    "1 2;1 2;1 2;1 2;3 4;3 4": [1, 0],
    "1 2;1 2;1 2;1 2;1 2;1 2": [2, 0, 0],
}


def _reference_maps():
    for text, genera in REFERENCE_MAPS.items():
        t = maps.TranspositionTuple.parse(text, 4)
        m = maps.map_from_tuple(t)
        rep = maps.component_report(m)
        if rep.genera() != genera or not maps.is_pure(t) or not maps.descent_corner_purity(m):
            return False, f"{text}: genera {rep.genera()}"
    return True, "three maps reproduced"


def _exhaustive_pure(max_n: int = 4, max_ell: int = 6):
    for n in range(2, max_n + 1):
        taus = hurwitz.transpositions(n)
        for ell in range(0, max_ell + 1, 2):
            count = 0
            for combo in itertools.product(taus, repeat=ell):
                t = maps.TranspositionTuple(n, combo)
                if not maps.is_pure(t):
                    continue
                count += 1
                rep = maps.component_report(maps.map_from_tuple(t))
                if rep.faces != n or rep.euler != 2 * n - ell:
                    return False, f"pure map {t} has F={rep.faces}, chi={rep.euler}"
            if count != hurwitz.hurwitz_number(n, ell):
                return False, f"exhaustive count {count} != H({n},{ell})"
    return True, f"n <= {max_n}, even ell <= {max_ell}"


def _descent_purity(max_n: int = 4, max_ell: int = 4):
    for n in range(2, max_n + 1):
        taus = hurwitz.transpositions(n)
        for ell in range(0, max_ell + 1):
            for combo in itertools.product(taus, repeat=ell):
                t = maps.TranspositionTuple(n, combo)
                m = maps.map_from_tuple(t)
                if maps.descent_corner_purity(m) != maps.is_pure(t) or not maps.vertex_descents_ok(m):
                    return False, f"purity disagreement at {t}"
    return True, f"n <= {max_n}, ell <= {max_ell}"


SUITES: dict[str, list[tuple[str, Callable]]] = {
    "small": [
        ("rsk-identity", _rsk_identity),
        ("worked-example-values", _worked_example_values),
        ("growth-normalisation", _growth_normalisation),
        ("conjugation", _conjugation),
        ("content-bounds-and-split", _content_bounds),
        ("content-from-profile", _content_from_profile),
        ("frobenius-vs-bruteforce", _oracle_equivalence),
        ("parity-and-small-values", _parity_and_values),
        ("exact-tables", _exact_tables),
        ("omega-anchors", _omega_anchors),
    ],
    "mcmc": [
        ("mh-vs-exact-tv", _mh_tv),
        ("rsk-vs-growth-tv", _plancherel_tv),
    ],
    "maps": [
        ("reference-maps", _reference_maps),
        ("exhaustive-pure-maps", _exhaustive_pure),
        ("descent-vs-product-purity", _descent_purity),
    ],
}


def run_suite(name: str, seed: int = 0) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        for check_name, fn in SUITES[suite]:
            start = time.perf_counter()
            try:
                passed, detail = fn(seed) if suite == "mcmc" else fn()
            except Exception as exc:  # a crashing check is a failing check
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(suite, check_name, bool(passed), detail, time.perf_counter() - start))
    return results
