"""Permutation groups, the cycle index, Burnside counting, and codes as groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .codes import GeneratingMatrix, weight_enumerator
from .errors import InputError, SizeError

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``0..n-1`` given by its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"{list(images)} is not a permutation")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """From 1-based cycles, e.g. ``from_cycles(4, [(1, 2), (3, 4)])``."""
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``(p * q)(i) = p(q(i))``."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)


def cycle_count(p: Permutation) -> int:
    """Number of cycles, fixed points included."""
    return len(p.cycles())


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    generators: tuple[Permutation, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.degree != self.degree:
                raise InputError(f"generator of degree {g.degree} in a group of degree {self.degree}")
        object.__setattr__(self, "generators", gens)


def enumerate_group(g: PermutationGroup, cap: int = DEFAULT_CAP) -> list[Permutation]:
    """All elements, by breadth-first closure under the generators."""
    e = Permutation.identity(g.degree)
    seen = {e.images}
    out = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for p in frontier:
            for s in g.generators:
                h = s * p
                if h.images not in seen:
                    if len(out) >= cap:
                        raise SizeError(f"group has more than {cap} elements")
                    seen.add(h.images)
                    out.append(h)
                    nxt.append(h)
        frontier = nxt
    return out


def cycle_index(g: PermutationGroup, x, cap: int = DEFAULT_CAP) -> Fraction:
    """(1/|G|) sum over g in G of x^cyc(g)."""
    x = Fraction(x)
    elems = enumerate_group(g, cap)
    return sum((x ** cycle_count(p) for p in elems), Fraction(0)) / len(elems)


def orbit_count(g: PermutationGroup, x: int, budget: int = DEFAULT_CAP) -> int:
    """Orbits of G on length-degree strings over an x-letter alphabet, by union-find.

    Strings are encoded base x, position i as digit i.  Only the generators
    are used, so the group itself is never enumerated.
    """
    if x < 1:
        raise InputError("alphabet size must be a positive integer")
    n = g.degree
    total = x**n
    if total > budget:
        raise SizeError(f"{x}^{n} strings exceeds the budget {budget}")
    parent = list(range(total))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    powers = [x**i for i in range(n)]
    orbits = total
    for s in range(total):
        digits = [(s // powers[i]) % x for i in range(n)]
        for p in g.generators:
            # letter at position i moves to position p(i)
            t = sum(digits[i] * powers[p(i)] for i in range(n))
            a, b = find(s), find(t)
            if a != b:
                parent[a] = b
                orbits -= 1
    return orbits


def code_to_group(gm: GeneratingMatrix) -> PermutationGroup:
    """One generator per row: swap points 2j-1, 2j (1-based) wherever the row has a 1 in column j."""
    nu = 2 * gm.c
    gens = []
    for row in gm.matrix.data:
        img = list(range(nu))
        for j in range(gm.c):
            if row >> j & 1:
                img[2 * j], img[2 * j + 1] = 2 * j + 1, 2 * j
        gens.append(Permutation(tuple(img)))
    return PermutationGroup(nu, tuple(gens))


def corollary8_check(gm: GeneratingMatrix, x, cap: int = DEFAULT_CAP):
    """Both sides of |G| Z_CI(G; x) = x^(2c) W(1/x) for G = code_to_group(gm).

    Returns ``(lhs, rhs, ok)`` where ``ok`` also requires |G| = 2^r.  The group
    is enumerated by closure, not through the row combinations.
    """
    x = Fraction(x)
    if x <= 0:
        raise InputError("x must be positive")
    group = code_to_group(gm)
    elems = enumerate_group(group, cap)
    lhs = sum((x ** cycle_count(p) for p in elems), Fraction(0))
    rhs = x ** (2 * gm.c) * weight_enumerator(gm, 1 / x)
    return lhs, rhs, lhs == rhs and len(elems) == 2**gm.r


def parse_group(text: str) -> PermutationGroup:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty group file")
    try:
        nu, r = (int(t) for t in lines[0].split())
        gens = [Permutation(tuple(int(t) - 1 for t in ln.split())) for ln in lines[1:]]
    except ValueError:
        raise InputError("group lines must be integers") from None
    if len(gens) != r:
        raise InputError(f"expected {r} generators, found {len(gens)}")
    return PermutationGroup(nu, tuple(gens))


def format_group(g: PermutationGroup) -> str:
    lines = [f"{g.degree} {len(g.generators)}"]
    lines += [" ".join(str(i + 1) for i in p.images) for p in g.generators]
    return "\n".join(lines) + "\n"
