"""Binary matroids represented by GF(2) matrices, and graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from . import gf2
from .errors import InputError
from .gf2 import Gf2Matrix

Element = Hashable


@dataclass(frozen=True)
class BinaryMatroid:
    """Matroid on the columns of ``rep``; ``ground[e]`` names column ``e``.

    Element names survive delete/contract/dual and the gadget extensions, so a
    weight map keyed by element stays valid across them.
    """

    rep: Gf2Matrix
    ground: tuple = None
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ground = tuple(range(self.rep.cols)) if self.ground is None else tuple(self.ground)
        if len(ground) != self.rep.cols:
            raise InputError(f"{len(ground)} element names for {self.rep.cols} columns")
        index = {e: i for i, e in enumerate(ground)}
        if len(index) != len(ground):
            raise InputError("element names must be unique")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_rows(cls, rows, ground=None) -> "BinaryMatroid":
        return cls(Gf2Matrix.from_rows(rows), ground)

    def __len__(self) -> int:
        return len(self.ground)

    def index(self, e: Element) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise InputError(f"unknown element {e!r}") from None

    def columns(self, subset: Iterable[Element]) -> list[int]:
        return [self.index(e) for e in subset]

    def fresh_element(self) -> int:
        """An integer name not yet used in the ground set."""
        ints = [e for e in self.ground if isinstance(e, int) and not isinstance(e, bool)]
        return max(ints, default=-1) + 1

    def __eq__(self, other):
        if not isinstance(other, BinaryMatroid):
            return NotImplemented
        return self.rep == other.rep and self.ground == other.ground

    def __hash__(self):
        return hash((self.rep, self.ground))


def rank_of(m: BinaryMatroid, subset: Iterable[Element] = ()) -> int:
    return gf2.rank(m.rep, m.columns(subset))


def full_rank(m: BinaryMatroid) -> int:
    return gf2.rank(m.rep)


def delete(m: BinaryMatroid, e: Element) -> BinaryMatroid:
    i = m.index(e)
    keep = [j for j in range(m.rep.cols) if j != i]
    return BinaryMatroid(m.rep.select_columns(keep), tuple(m.ground[j] for j in keep))


def contract(m: BinaryMatroid, e: Element) -> BinaryMatroid:
    """Contract ``e``: clear column ``e`` from all rows but one pivot row, drop both."""
    i = m.index(e)
    rows = list(m.rep.data)
    bit = 1 << i
    pivot = next((r for r in range(len(rows)) if rows[r] & bit), None)
    if pivot is None:
        # loop: contraction and deletion coincide
        return delete(m, e)
    for r in range(len(rows)):
        if r != pivot and rows[r] & bit:
            rows[r] ^= rows[pivot]
    del rows[pivot]
    reduced = Gf2Matrix(len(rows), m.rep.cols, tuple(rows))
    keep = [j for j in range(m.rep.cols) if j != i]
    return BinaryMatroid(reduced.select_columns(keep), tuple(m.ground[j] for j in keep))


def dual(m: BinaryMatroid) -> BinaryMatroid:
    return BinaryMatroid(gf2.dual_representation(m.rep), m.ground)


def is_loop(m: BinaryMatroid, e: Element) -> bool:
    return m.rep.column(m.index(e)) == 0


def is_coloop(m: BinaryMatroid, e: Element) -> bool:
    i = m.index(e)
    rest = [j for j in range(m.rep.cols) if j != i]
    return gf2.rank(m.rep) == gf2.rank(m.rep, rest) + 1


def rank_table(m: BinaryMatroid) -> list[int]:
    """Rank of every column subset, indexed by bitmask over column positions."""
    cols = m.rep.columns()
    out = []
    for mask in range(1 << len(cols)):
        out.append(gf2.vector_rank(c for j, c in enumerate(cols) if mask >> j & 1))
    return out


# -- graphs -----------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices ``0..n-1``; self-loops and parallel edges allowed."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)


def from_graph(g: Graph) -> BinaryMatroid:
    """Cycle matroid via the vertex-edge incidence matrix (self-loops give zero columns)."""
    columns = [(1 << u) ^ (1 << v) for u, v in g.edges]
    return BinaryMatroid(Gf2Matrix.from_columns(g.n, columns))


def count_components(n: int, edges: Sequence[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    k = n
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            k -= 1
    return k


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty graph file")
    try:
        n, m = (int(t) for t in lines[0].split())
        edges = []
        for ln in lines[1:]:
            u, v = (int(t) for t in ln.split())
            edges.append((u - 1, v - 1))
    except ValueError:
        raise InputError("graph lines must be integer pairs") from None
    if len(edges) != m:
        raise InputError(f"expected {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {len(g.edges)}"] + [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
