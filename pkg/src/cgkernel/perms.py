"""Permutations of small degree, brute-force subgroup closure, normality, and
the pair-partition quotient S4 -> S3."""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

MAX_CLOSURE_DEGREE = 8  # every group we ever enumerate lives in S_4/S_5


class Permutation:
    """Bijection of {1..n}; composition is diagrammatic (p then q)."""

    __slots__ = ("n", "mapping")

    def __init__(self, mapping: Sequence[int]):
        mapping = tuple(mapping)
        n = len(mapping)
        if sorted(mapping) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {mapping}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mapping", mapping)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        m = list(range(1, n + 1))
        m[i - 1], m[j - 1] = j, i
        return cls(m)

    def __call__(self, point: int) -> int:
        return self.mapping[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.mapping[x - 1] for x in self.mapping))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.mapping):
            inv[x - 1] = i + 1
        return Permutation(inv)

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        out = Permutation.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def is_identity(self) -> bool:
        return all(self.mapping[i] == i + 1 for i in range(self.n))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __hash__(self) -> int:
        return hash(self.mapping)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={self.n})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """p then q."""
    return p * q


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation like ``(1,2)(3,4)``; ``id`` is the identity."""
    text = text.strip()
    if text in ("id", "()", ""):
        return Permutation.identity(n)
    mapping = list(range(1, n + 1))
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"bad cycle notation: {text!r}")
    for chunk in text[1:-1].split(")("):
        points = [int(tok) for tok in chunk.replace(" ", "").split(",") if tok]
        if len(points) < 2 or len(set(points)) != len(points):
            raise ValueError(f"bad cycle: ({chunk})")
        for pt in points:
            if not 1 <= pt <= n:
                raise ValueError(f"point {pt} out of range for degree {n}")
        for a, b in zip(points, points[1:] + points[:1]):
            mapping[a - 1] = b
    return Permutation(mapping)


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "id"
    return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cyc)


def closure(gens: Iterable[Permutation], degree: int | None = None) -> frozenset[Permutation]:
    """Subgroup generated, by breadth-first closure under right multiplication.
    An empty generating set needs an explicit degree and yields {identity}."""
    gens = list(gens)
    if not gens:
        if degree is None:
            raise ValueError("empty generating set needs an explicit degree")
        return frozenset({Permutation.identity(degree)})
    n = gens[0].n
    if degree is not None and degree != n:
        raise ValueError("degree disagrees with the generators")
    if n > MAX_CLOSURE_DEGREE:
        raise ValueError(f"degree {n} exceeds closure cap {MAX_CLOSURE_DEGREE}")
    for g in gens:
        if g.n != n:
            raise ValueError("degree mismatch among generators")
    seen = {Permutation.identity(n)}
    frontier = [Permutation.identity(n)]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p * g
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return frozenset(seen)


def is_normal(sub: Iterable[Permutation], grp: Iterable[Permutation]) -> bool:
    sub, grp = frozenset(sub), frozenset(grp)
    if not sub <= grp:
        raise ValueError("first argument must be a subset of the second")
    return all(g * h * g.inverse() in sub for g in grp for h in sub)


# the three pair-partitions of {1,2,3,4}, in the fixed labelling order
_PARTITIONS = (
    frozenset({frozenset({1, 2}), frozenset({3, 4})}),
    frozenset({frozenset({1, 3}), frozenset({2, 4})}),
    frozenset({frozenset({1, 4}), frozenset({2, 3})}),
)


def quotient_map_s4_to_s3() -> Callable[[Permutation], Permutation]:
    """The quotient S4 -> S4/V4 = S3, realized on pair-partitions
    (12|34, 13|24, 14|23) so the labelling is deterministic."""

    def act(p: Permutation) -> Permutation:
        if p.n != 4:
            raise ValueError("expected a permutation of degree 4")
        mapping = []
        for part in _PARTITIONS:
            image = frozenset(frozenset(p(x) for x in pair) for pair in part)
            mapping.append(_PARTITIONS.index(image) + 1)
        return Permutation(mapping)

    return act
