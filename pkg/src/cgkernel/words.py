"""Free-group words, homomorphisms, and certified automorphisms.

Composition throughout this package is diagrammatic: ``compose(f, g)`` applies
``f`` first and ``g`` second.  This matters -- most computer algebra systems
use the opposite order, and every table in :mod:`cgkernel.braids` and every
matrix identity in :mod:`cgkernel.intlin` is calibrated to this convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]  # (1-based generator index, +1 or -1)


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for let in letters:
        if out and out[-1][0] == let[0] and out[-1][1] == -let[1]:
            out.pop()
        else:
            out.append(let)
    return tuple(out)


class Word:
    """A freely reduced word in the free group of the given rank.

    Words are immutable values: equality is structural, and free reduction
    happens eagerly on construction.
    """

    __slots__ = ("rank", "letters")

    def __init__(self, rank: int, letters: Iterable[Letter] = ()):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        reduced = _reduce(letters)
        for idx, sign in reduced:
            if not 1 <= idx <= rank:
                raise ValueError(f"generator index {idx} out of range for rank {rank}")
            if sign not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "letters", reduced)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, ())

    @classmethod
    def gen(cls, rank: int, idx: int, sign: int = 1) -> "Word":
        return cls(rank, ((idx, sign),))

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} != {other.rank}")
        return Word(self.rank, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.rank, tuple((i, -s) for i, s in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word.identity(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self, by: "Word") -> "Word":
        """by * self * by^-1."""
        return by * self * by.inverse()

    def promote(self, rank: int) -> "Word":
        """Reinterpret in a larger free group (same letters)."""
        if rank < self.rank:
            raise ValueError("cannot demote a word to smaller rank")
        return Word(rank, self.letters)

    def abelianize(self) -> tuple[int, ...]:
        """Signed exponent count of each generator."""
        counts = [0] * self.rank
        for idx, sign in self.letters:
            counts[idx - 1] += sign
        return tuple(counts)

    def is_identity(self) -> bool:
        return not self.letters

    def cyclically_reduced(self) -> "Word":
        ls = list(self.letters)
        while len(ls) >= 2 and ls[0][0] == ls[-1][0] and ls[0][1] == -ls[-1][1]:
            ls = ls[1:-1]
        return Word(self.rank, ls)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.rank == other.rank
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.letters))

    def __repr__(self) -> str:
        return f"Word({self.rank}, {format_word(self)!r})"


def default_names(rank: int) -> tuple[str, ...]:
    """Canonical generator names: a, b, x3, x4, ..."""
    base = ["a", "b"][:rank]
    return tuple(base + [f"x{i}" for i in range(3, rank + 1)])


def parse_word(text: str, rank: int, names: Sequence[str] | None = None) -> Word:
    """Parse whitespace-separated letters like ``b a^-1 b`` or ``B a^2``.

    Upper-case tokens denote inverses; ``gN`` / ``GN`` address generators by
    number; ``1`` denotes the empty word.
    """
    if names is None:
        names = default_names(rank)
    lookup = {nm: i + 1 for i, nm in enumerate(names)}
    letters: list[Letter] = []
    for token in text.split():
        if token == "1":
            continue
        base, _, exp_part = token.partition("^")
        exp = 1
        if exp_part:
            try:
                exp = int(exp_part)
            except ValueError:
                raise ValueError(f"bad exponent in token {token!r}") from None
        idx = lookup.get(base)
        sign = 1
        if idx is None and base.lower() in lookup and base != base.lower():
            idx = lookup[base.lower()]
            sign = -1
        if idx is None and len(base) >= 2 and base[0] in "gG" and base[1:].isdigit():
            idx = int(base[1:])
            sign = -1 if base[0] == "G" else 1
            if not 1 <= idx <= rank:
                raise ValueError(f"generator {base!r} out of range for rank {rank}")
        if idx is None:
            raise ValueError(f"unknown generator {base!r}")
        letters.extend([(idx, sign)] * exp if exp >= 0 else [(idx, -sign)] * (-exp))
    return Word(rank, letters)


def format_word(w: Word, names: Sequence[str] | None = None) -> str:
    """Inverse of parse_word; runs are collapsed to ``a^k``."""
    if names is None:
        names = default_names(w.rank)
    if not w.letters:
        return "1"
    parts: list[str] = []
    run_idx, run_sign, run_len = None, 0, 0
    for idx, sign in w.letters + ((0, 0),):
        if idx == run_idx and sign == run_sign:
            run_len += 1
            continue
        if run_idx is not None:
            exp = run_sign * run_len
            parts.append(names[run_idx - 1] + (f"^{exp}" if exp != 1 else ""))
        run_idx, run_sign, run_len = idx, sign, 1
    return " ".join(parts)


@dataclass(frozen=True)
class FreeHom:
    """Homomorphism of free groups given by generator images."""

    src_rank: int
    dst_rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.src_rank:
            raise ValueError("need one image per source generator")
        for im in self.images:
            if im.rank != self.dst_rank:
                raise ValueError("image rank mismatch")

    @classmethod
    def identity(cls, rank: int) -> "FreeHom":
        return cls(rank, rank, tuple(Word.gen(rank, i) for i in range(1, rank + 1)))

    @classmethod
    def from_strings(cls, src_rank: int, dst_rank: int, images: Sequence[str],
                     names: Sequence[str] | None = None) -> "FreeHom":
        return cls(src_rank, dst_rank,
                   tuple(parse_word(s, dst_rank, names) for s in images))

    def __call__(self, w: Word) -> Word:
        if w.rank != self.src_rank:
            raise ValueError(f"rank mismatch: word has rank {w.rank}, hom expects {self.src_rank}")
        letters: list[Letter] = []
        for idx, sign in w.letters:
            im = self.images[idx - 1]
            letters.extend(im.letters if sign == 1
                           else tuple((i, -s) for i, s in reversed(im.letters)))
        return Word(self.dst_rank, letters)

    def is_identity(self) -> bool:
        return self == FreeHom.identity(self.src_rank)


def apply_hom(f: FreeHom, w: Word) -> Word:
    return f(w)


def compose(f: FreeHom, g: FreeHom) -> FreeHom:
    """Diagrammatic composition: f first, then g."""
    if f.dst_rank != g.src_rank:
        raise ValueError("rank mismatch in composition")
    return FreeHom(f.src_rank, g.dst_rank, tuple(g(im) for im in f.images))


def verify_automorphism(f: FreeHom, g: FreeHom) -> bool:
    """True iff f and g are mutually inverse endomorphisms of the same rank."""
    if not (f.src_rank == f.dst_rank == g.src_rank == g.dst_rank):
        return False
    return compose(f, g).is_identity() and compose(g, f).is_identity()


@dataclass(frozen=True)
class Aut:
    """An automorphism certified by an explicit inverse.

    Surjectivity of a free-group endomorphism is not decidable by local
    inspection, so automorphisms always travel as (map, inverse) pairs and the
    pair is checked on construction.
    """

    fwd: FreeHom
    inv: FreeHom

    def __post_init__(self):
        if not verify_automorphism(self.fwd, self.inv):
            raise ValueError("maps are not mutually inverse automorphisms")

    @classmethod
    def identity(cls, rank: int) -> "Aut":
        f = FreeHom.identity(rank)
        return cls(f, f)

    @property
    def rank(self) -> int:
        return self.fwd.src_rank

    def __call__(self, w: Word) -> Word:
        return self.fwd(w)

    def __mul__(self, other: "Aut") -> "Aut":
        """Diagrammatic: self first, then other."""
        return Aut(compose(self.fwd, other.fwd), compose(other.inv, self.inv))

    def inverse(self) -> "Aut":
        return Aut(self.inv, self.fwd)

    __invert__ = inverse

    def __pow__(self, n: int) -> "Aut":
        if n < 0:
            return self.inverse() ** (-n)
        out = Aut.identity(self.rank)
        for _ in range(n):
            out = out * self
        return out


def transvection(rank: int, i: int, j: int) -> Aut:
    """The Nielsen automorphism x_i -> x_i x_j (others fixed)."""
    if i == j:
        raise ValueError("transvection needs distinct generators")
    fwd_images = [Word.gen(rank, k) for k in range(1, rank + 1)]
    inv_images = list(fwd_images)
    fwd_images[i - 1] = Word.gen(rank, i) * Word.gen(rank, j)
    inv_images[i - 1] = Word.gen(rank, i) * Word.gen(rank, j, -1)
    return Aut(FreeHom(rank, rank, tuple(fwd_images)),
               FreeHom(rank, rank, tuple(inv_images)))


@dataclass(frozen=True)
class SemidirectElement:
    """Element of F_2^(2n-4) x| F_2 acting on F_n = <a, b, x_3, ..., x_n>.

    ``left[k]``/``right[k]`` (rank-2 words) conjugate-translate x_{k+3}, and
    ``base`` is a rank-2 automorphism twisting <a, b>.  The induced map sends
    x_i -> left_i^-1 x_i right_i and (a, b) through ``base``.
    """

    n: int
    left: tuple[Word, ...]
    right: tuple[Word, ...]
    base: Aut

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need n >= 3")
        if len(self.left) != self.n - 2 or len(self.right) != self.n - 2:
            raise ValueError(f"need {self.n - 2} left and right words")
        for w in self.left + self.right:
            if w.rank != 2:
                raise ValueError("coordinate words must have rank 2")
        if self.base.rank != 2:
            raise ValueError("base automorphism must have rank 2")

    @classmethod
    def identity(cls, n: int) -> "SemidirectElement":
        e = Word.identity(2)
        return cls(n, (e,) * (n - 2), (e,) * (n - 2), Aut.identity(2))

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        """Diagrammatic product: to_hom(self * other) is self's map followed
        by other's, so other's base automorphism twists self's words."""
        if self.n != other.n:
            raise ValueError("mismatched n")
        mu = other.base.fwd
        left = tuple(l2 * mu(l1) for l1, l2 in zip(self.left, other.left))
        right = tuple(r2 * mu(r1) for r1, r2 in zip(self.right, other.right))
        return SemidirectElement(self.n, left, right, self.base * other.base)

    def inverse(self) -> "SemidirectElement":
        mu_inv = self.base.inv
        left = tuple(mu_inv(l.inverse()) for l in self.left)
        right = tuple(mu_inv(r.inverse()) for r in self.right)
        return SemidirectElement(self.n, left, right, self.base.inverse())

    def to_hom(self) -> FreeHom:
        """The induced automorphism of F_n (as a plain homomorphism)."""
        n = self.n
        images = [self.base.fwd.images[0].promote(n), self.base.fwd.images[1].promote(n)]
        for k in range(n - 2):
            xi = Word.gen(n, k + 3)
            images.append(self.left[k].promote(n).inverse() * xi * self.right[k].promote(n))
        return FreeHom(n, n, tuple(images))

    def to_aut(self) -> Aut:
        return Aut(self.to_hom(), self.inverse().to_hom())
