"""Hurwitz maps: rotation systems built from transposition tuples.

Edge ``k`` (1-indexed) joins the two points moved by ``tau_k``. Around each
vertex the incident edge-ends are ordered by increasing label, which fixes
the rotation system. Darts are numbered ``2(k-1)`` (end at the smaller
vertex of ``tau_k``) and ``2(k-1) + 1`` (end at the larger one).

Products are read left to right on points: ``tau_1`` acts first. With that
convention, following a face from a corner means leaving the vertex along
the next edge-end in the rotation and arriving at the far end; a corner
``(e, next(e))`` is a descent when the label does not increase. Each face of
the map is then a cycle of the product on the non-isolated vertices.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .hurwitz import transpositions
from .partitions import partitions_of


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


@dataclass(frozen=True)
class TranspositionTuple:
    n: int
    taus: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        norm = []
        for pair in self.taus:
            a, b = (int(v) for v in pair)
            if a == b:
                raise ValueError(f"degenerate transposition ({a} {b})")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"transposition ({a} {b}) outside [1, {self.n}]")
            norm.append((min(a, b), max(a, b)))
        object.__setattr__(self, "taus", tuple(norm))

    @property
    def ell(self) -> int:
        return len(self.taus)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "TranspositionTuple":
        """Parse ``"1 2;2 3;3 4"``. ``n`` defaults to the largest point used."""
        pairs = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            fields = chunk.replace(",", " ").split()
            if len(fields) != 2:
                raise ValueError(f"malformed transposition {chunk!r}")
            pairs.append((int(fields[0]), int(fields[1])))
        if n is None:
            n = max((max(p) for p in pairs), default=1)
        return cls(n, tuple(pairs))

    def __str__(self) -> str:
        return ";".join(f"{a} {b}" for a, b in self.taus)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.taus]


def product(t: TranspositionTuple) -> list[int]:
    """Image list (0-indexed) of ``tau_1 tau_2 ... tau_ell``, ``tau_1`` applied first."""
    where = list(range(t.n))
    for a, b in t.taus:
        a, b = a - 1, b - 1
        for x in range(t.n):
            if where[x] == a:
                where[x] = b
            elif where[x] == b:
                where[x] = a
    return where


def is_pure(t: TranspositionTuple) -> bool:
    return product(t) == list(range(t.n))


def cycle_count(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    count = 0
    for start in range(len(perm)):
        if not seen[start]:
            count += 1
            x = start
            while not seen[x]:
                seen[x] = True
                x = perm[x]
    return count


class Corner(NamedTuple):
    vertex: int
    edge_in: int | None  # label of the edge-end starting the corner
    edge_out: int | None  # label of the next edge-end counterclockwise

    @property
    def is_descent(self) -> bool:
        return self.edge_in is None or self.edge_out <= self.edge_in


@dataclass
class HurwitzMap:
    n: int
    ell: int
    rotation: tuple[tuple[int, ...], ...]  # per vertex: incident edge labels, increasing
    dart_vertex: list[int] = field(repr=False)
    dart_next: list[int] = field(repr=False)  # next dart counterclockwise at the same vertex

    def dart_label(self, d: int) -> int:
        return d // 2 + 1


def map_from_tuple(t: TranspositionTuple) -> HurwitzMap:
    ell = t.ell
    dart_vertex = [0] * (2 * ell)
    around: list[list[int]] = [[] for _ in range(t.n)]
    for k, (a, b) in enumerate(t.taus):
        dart_vertex[2 * k] = a
        dart_vertex[2 * k + 1] = b
        around[a - 1].append(2 * k)
        around[b - 1].append(2 * k + 1)
    dart_next = [0] * (2 * ell)
    for darts in around:
        # darts were appended by increasing label already
        for i, d in enumerate(darts):
            dart_next[d] = darts[(i + 1) % len(darts)]
    rotation = tuple(tuple(d // 2 + 1 for d in darts) for darts in around)
    return HurwitzMap(t.n, ell, rotation, dart_vertex, dart_next)


def faces(m: HurwitzMap) -> list[tuple[Corner, ...]]:
    """Face cycles as sequences of corners; isolated vertices give one face each."""
    out = []
    seen = [False] * (2 * m.ell)
    for start in range(2 * m.ell):
        if seen[start]:
            continue
        face = []
        d = start
        while not seen[d]:
            seen[d] = True
            nxt = m.dart_next[d]
            face.append(Corner(m.dart_vertex[d], m.dart_label(d), m.dart_label(nxt)))
            d = nxt ^ 1
        out.append(tuple(face))
    for v, labels in enumerate(m.rotation, start=1):
        if not labels:
            out.append((Corner(v, None, None),))
    return out


def descent_corner_purity(m: HurwitzMap) -> bool:
    """True iff every face carries exactly one edge-label descent corner."""
    return all(sum(c.is_descent for c in face) == 1 for face in faces(m))


def vertex_descents_ok(m: HurwitzMap) -> bool:
    """Every non-isolated vertex has exactly one descent corner."""
    for v, labels in enumerate(m.rotation):
        if labels:
            k = len(labels)
            if sum(labels[(i + 1) % k] <= labels[i] for i in range(k)) != 1:
                return False
    return True


@dataclass(frozen=True)
class Component:
    vertices: int
    edges: int
    faces: int

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces

    @property
    def genus(self) -> int:
        return (2 - self.euler) // 2


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[Component, ...]

    @property
    def kappa(self) -> int:
        return len(self.components)

    @property
    def total_genus(self) -> int:
        return sum(c.genus for c in self.components)

    @property
    def euler(self) -> int:
        return sum(c.euler for c in self.components)

    @property
    def faces(self) -> int:
        return sum(c.faces for c in self.components)

    @property
    def isolated(self) -> int:
        return sum(1 for c in self.components if c.edges == 0)

    @property
    def largest_edges(self) -> int:
        return max(c.edges for c in self.components)

    @property
    def largest_vertices(self) -> int:
        return max(c.vertices for c in self.components)

    def genera(self) -> list[int]:
        return sorted((c.genus for c in self.components), reverse=True)

    def to_json(self) -> dict:
        return {
            "components": [
                {**asdict(c), "euler": c.euler, "genus": c.genus} for c in self.components
            ],
            "kappa": self.kappa,
            "total_genus": self.total_genus,
            "euler": self.euler,
            "faces": self.faces,
            "isolated_vertices": self.isolated,
            "largest_component_edges": self.largest_edges,
            "largest_component_vertices": self.largest_vertices,
        }


def component_report(m: HurwitzMap) -> ComponentReport:
    uf = UnionFind(m.n)
    for k in range(m.ell):
        uf.union(m.dart_vertex[2 * k] - 1, m.dart_vertex[2 * k + 1] - 1)
    verts: Counter = Counter(uf.find(v) for v in range(m.n))
    edges: Counter = Counter(uf.find(m.dart_vertex[2 * k] - 1) for k in range(m.ell))
    nfaces: Counter = Counter(uf.find(face[0].vertex - 1) for face in faces(m))
    roots = list(dict.fromkeys(uf.find(v) for v in range(m.n)))  # ordered by smallest vertex
    comps = tuple(Component(verts[r], edges[r], nfaces[r]) for r in roots)
    for c in comps:
        if c.euler % 2 or c.genus < 0:
            raise AssertionError(f"inconsistent component {c}")
    return ComponentReport(comps)


def analyze(t: TranspositionTuple) -> ComponentReport:
    return component_report(map_from_tuple(t))


# --- sampling -----------------------------------------------------------------

class SamplingExhausted(RuntimeError):
    """Rejection sampling ran out of attempts."""


def random_tuple(n: int, ell: int, rng: np.random.Generator) -> TranspositionTuple:
    if n < 2:
        raise ValueError("random_tuple needs n >= 2")
    taus = transpositions(n)
    picks = rng.integers(0, len(taus), size=ell)
    return TranspositionTuple(n, tuple(taus[i] for i in picks))


def random_pure_tuple(n: int, ell: int, rng: np.random.Generator, max_tries: int = 1_000_000) -> tuple[TranspositionTuple, int]:
    """Uniform pure tuple by rejection; returns the tuple and the number of tries."""
    if ell % 2:
        raise ValueError("pure tuples need even ell")
    for tries in range(1, max_tries + 1):
        t = random_tuple(n, ell, rng)
        if is_pure(t):
            return t, tries
    raise SamplingExhausted(f"no pure tuple in {max_tries} tries (n={n}, ell={ell})")


class ConditionedWalkSampler:
    """Exact uniform pure tuples through the cycle-type chain of the walk.

    The partial product ``tau_1 ... tau_k`` is a transposition random walk.
    Its cycle type is itself a Markov chain; ``h[m][mu]`` is the probability
    of being at the identity ``m`` steps after having type ``mu``. Sampling
    each step with weights ``P(mu -> mu') h[m-1][mu'] / h[m][mu]`` and then a
    uniform transposition realising the chosen type change conditions the
    walk on returning, so every pure tuple is equally likely. Used where
    rejection is hopeless (``C(n,2)^ell / H(n, ell)`` astronomically large).
    """

    def __init__(self, n: int, ell: int):
        if ell % 2:
            raise ValueError("pure tuples need even ell")
        if n < 2:
            raise ValueError("n must be >= 2")
        self.n, self.ell = n, ell
        self.types = list(partitions_of(n))
        self.index = {mu: i for i, mu in enumerate(self.types)}
        self.moves = [self._moves(mu) for mu in self.types]
        self._build_tables()

    def _moves(self, mu) -> list[tuple[int, float, tuple]]:
        # (target index, probability, move descriptor)
        total = math.comb(self.n, 2)
        mult = Counter(mu)
        sizes = sorted(mult)
        out = []
        for i, a in enumerate(sizes):
            for b in sizes[i:]:
                ways = a * b * (mult[a] * mult[b] if a != b else math.comb(mult[a], 2))
                if ways:
                    out.append((self._join(mu, a, b), ways / total, ("join", a, b)))
            for s in range(1, a // 2 + 1):
                ways = mult[a] * (a if 2 * s != a else a // 2)
                out.append((self._split(mu, a, s), ways / total, ("split", a, s)))
        return out

    def _join(self, mu, a, b) -> int:
        parts = list(mu)
        parts.remove(a)
        parts.remove(b)
        parts.append(a + b)
        return self.index[tuple(sorted(parts, reverse=True))]

    def _split(self, mu, a, s) -> int:
        parts = list(mu)
        parts.remove(a)
        parts.extend((s, a - s))
        return self.index[tuple(sorted(parts, reverse=True))]

    def _build_tables(self) -> None:
        size = len(self.types)
        identity = self.index[tuple([1] * self.n)]
        h = np.zeros(size)
        h[identity] = 1.0
        # h_m stored with a per-step log scale to avoid underflow
        self.h = [h]
        self.log_scale = [0.0]
        targets = [np.array([t for t, _, _ in mv], dtype=np.int64) for mv in self.moves]
        probs = [np.array([p for _, p, _ in mv]) for mv in self.moves]
        for _ in range(self.ell):
            prev = self.h[-1]
            cur = np.array([float(np.dot(probs[i], prev[targets[i]])) for i in range(size)])
            peak = cur.max()
            self.h.append(cur / peak)
            self.log_scale.append(self.log_scale[-1] + math.log(peak))

    def return_probability(self) -> float:
        start = self.index[tuple([1] * self.n)]
        return float(self.h[self.ell][start]) * math.exp(self.log_scale[self.ell])

    def sample(self, rng: np.random.Generator) -> TranspositionTuple:
        n = self.n
        perm = list(range(n))  # current product, tau_1 first
        mu = self.index[tuple([1] * n)]
        taus = []
        for m in range(self.ell, 0, -1):
            nxt = self.h[m - 1]
            weights = np.array([p * nxt[t] for t, p, _ in self.moves[mu]])
            k = int(np.searchsorted(np.cumsum(weights), rng.random() * weights.sum(), side="right"))
            k = min(k, len(weights) - 1)
            target, _, move = self.moves[mu][k]
            a, b = self._realise(perm, move, rng)
            taus.append((a + 1, b + 1))
            for x in range(n):
                if perm[x] == a:
                    perm[x] = b
                elif perm[x] == b:
                    perm[x] = a
            mu = target
        return TranspositionTuple(n, tuple(taus))

    @staticmethod
    def _realise(perm: list[int], move, rng: np.random.Generator) -> tuple[int, int]:
        # a uniform transposition of the requested kind for the current product
        cycles = _cycles(perm)
        kind = move[0]
        if kind == "join":
            _, a, b = move
            pairs = [
                (i, j)
                for i, ci in enumerate(cycles)
                for j, cj in enumerate(cycles)
                if i < j and sorted((len(ci), len(cj))) == [a, b]
            ]
            i, j = pairs[int(rng.integers(len(pairs)))]
            ci, cj = cycles[i], cycles[j]
            return ci[int(rng.integers(len(ci)))], cj[int(rng.integers(len(cj)))]
        _, a, s = move
        candidates = [c for c in cycles if len(c) == a]
        cyc = candidates[int(rng.integers(len(candidates)))]
        start = int(rng.integers(a))
        return cyc[start], cyc[(start + s) % a]


def _cycles(perm: Sequence[int]) -> list[list[int]]:
    """Cycles of ``x -> perm[x]``, each listed in the order it is traversed."""
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


@dataclass
class MapStatistics:
    ensemble: str
    n: int
    ell: int
    count: int
    isolated: list[int]
    largest_edges: list[int]
    largest_vertices: list[int]
    total_genus: list[int]
    components: list[int]

    def to_json(self) -> dict:
        log_n = math.log(self.n) if self.n > 1 else 1.0
        edge_frac = [e / self.ell for e in self.largest_edges] if self.ell else [0.0] * self.count
        vert_scaled = [v / (self.n / log_n) for v in self.largest_vertices]

        def summary(values):
            arr = np.asarray(values, dtype=float)
            if not arr.size:
                return {}
            return {
                "mean": float(arr.mean()),
                "std": float(arr.std()),
                "min": float(arr.min()),
                "median": float(np.median(arr)),
                "max": float(arr.max()),
            }

        return {
            "ensemble": self.ensemble,
            "n": self.n,
            "ell": self.ell,
            "count": self.count,
            "isolated_vertices": summary(self.isolated),
            "isolated_fraction": summary([i / self.n for i in self.isolated]),
            "isolated_histogram": {str(k): v for k, v in sorted(Counter(self.isolated).items())},
            "largest_component_edge_fraction": summary(edge_frac),
            "largest_component_vertices_over_n_per_log_n": summary(vert_scaled),
            "largest_component_vertices": summary(self.largest_vertices),
            "components": summary(self.components),
            "total_genus": summary(self.total_genus),
        }


def map_statistics(sample: Iterable[TranspositionTuple], ensemble: str = "all") -> MapStatistics:
    stats = None
    for t in sample:
        rep = analyze(t)
        if stats is None:
            stats = MapStatistics(ensemble, t.n, t.ell, 0, [], [], [], [], [])
        stats.count += 1
        stats.isolated.append(rep.isolated)
        stats.largest_edges.append(rep.largest_edges)
        stats.largest_vertices.append(rep.largest_vertices)
        stats.total_genus.append(rep.total_genus)
        stats.components.append(rep.kappa)
    if stats is None:
        raise ValueError("empty sample")
    return stats
