"""Hypergraphs with a multiset of hyperedges."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError


class Uniformity(enum.Enum):
    # an edgeless hypergraph is t-uniform for every t
    VACUOUS = "vacuous"


VACUOUS = Uniformity.VACUOUS


@dataclass(frozen=True)
class Hypergraph:
    """Vertices ``0..n-1``; each hyperedge is a nonempty vertex set (stored sorted).

    The same vertex set may appear several times.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        edges = []
        for f in self.edges:
            f = tuple(sorted(set(int(v) for v in f)))
            if not f:
                raise InputError("hyperedges must be nonempty")
            if f[0] < 0 or f[-1] >= self.n:
                raise InputError(f"hyperedge {f} has a vertex outside 0..{self.n - 1}")
            edges.append(f)
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)


def is_uniform(h: Hypergraph):
    """Common hyperedge size, ``None`` if sizes differ, ``VACUOUS`` if edgeless."""
    sizes = {len(f) for f in h.edges}
    if not sizes:
        return VACUOUS
    if len(sizes) == 1:
        return sizes.pop()
    return None


def mono_count(h: Hypergraph, sigma: Sequence[int]) -> int:
    if len(sigma) != h.n:
        raise InputError(f"assignment has {len(sigma)} entries for {h.n} vertices")
    return sum(1 for f in h.edges if len({sigma[v] for v in f}) == 1)


def parse_hypergraph(text: str) -> Hypergraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty hypergraph file")
    try:
        n, m = (int(t) for t in lines[0].split())
        edges = [tuple(int(t) - 1 for t in ln.split()) for ln in lines[1:]]
    except ValueError:
        raise InputError("hypergraph lines must be integers") from None
    if len(edges) != m:
        raise InputError(f"expected {m} hyperedges, found {len(edges)}")
    for f in edges:
        if len(set(f)) != len(f):
            raise InputError(f"hyperedge {[v + 1 for v in f]} repeats a vertex")
    return Hypergraph(n, tuple(edges))


def format_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.m}"] + [" ".join(str(v + 1) for v in f) for f in h.edges]
    return "\n".join(lines) + "\n"
