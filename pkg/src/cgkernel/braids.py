"""Braid groups B_n for n <= 6.

The word problem is solved by Garside left normal form (permutation-braid
factors behind a power of the half twist); Dehornoy handle reduction is kept
alongside as an independent cross-check oracle.  On top of that sit the
4-strand specifics: Artin generators of the pure braid group, strand deletion,
the epimorphism to B_3 killing s1*s3^-1, and the conjugation action on the
rank-2 normal free subgroup <s1 s3^-1, s2 s1 s3^-1 s2^-1>.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .perms import Permutation
from .words import FreeHom, Word, compose, parse_word

MAX_STRANDS = 6

Letter = tuple[int, int]  # (generator index 1..n-1, +1/-1)


class NonPureBraid(ValueError):
    """Raised when an operation defined on pure braids receives a non-pure word."""


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for let in letters:
        if out and out[-1][0] == let[0] and out[-1][1] == -let[1]:
            out.pop()
        else:
            out.append(let)
    return tuple(out)


class BraidWord:
    """Word in the Artin generators of B_n (freely reduced on construction)."""

    __slots__ = ("n", "letters")

    def __init__(self, n: int, letters: Iterable[Letter] = ()):
        if not 2 <= n <= MAX_STRANDS:
            raise ValueError(f"strand count must be in 2..{MAX_STRANDS}")
        reduced = _reduce(letters)
        for idx, sign in reduced:
            if not 1 <= idx <= n - 1:
                raise ValueError(f"generator s{idx} out of range for B_{n}")
            if sign not in (1, -1):
                raise ValueError("letter sign must be +1 or -1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "letters", reduced)

    def __setattr__(self, name, value):
        raise AttributeError("BraidWord is immutable")

    @classmethod
    def identity(cls, n: int) -> "BraidWord":
        return cls(n, ())

    @classmethod
    def gen(cls, n: int, idx: int, sign: int = 1) -> "BraidWord":
        return cls(n, ((idx, sign),))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError("strand count mismatch")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple((i, -s) for i, s in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        out = BraidWord.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        # literal word equality; use braid_equal for equality in the group
        return (isinstance(other, BraidWord)
                and self.n == other.n and self.letters == other.letters)

    def __hash__(self) -> int:
        return hash((self.n, self.letters))

    def __repr__(self) -> str:
        return f"BraidWord({self.n}, {format_braid(self)!r})"


def braid_perm(w: BraidWord) -> Permutation:
    """Image in S_n: product of the transpositions (i, i+1) in word order."""
    p = Permutation.identity(w.n)
    for idx, _ in w.letters:
        p = p * Permutation.transposition(w.n, idx, idx + 1)
    return p


def pure_gen(p: int, q: int, n: int) -> BraidWord:
    """Artin generator A_pq of the pure braid group:
    s_{q-1} ... s_{p+1} s_p^2 s_{p+1}^-1 ... s_{q-1}^-1."""
    if not 1 <= p < q <= n:
        raise ValueError(f"need 1 <= p < q <= {n}")
    letters = [(j, 1) for j in range(q - 1, p, -1)]
    letters += [(p, 1), (p, 1)]
    letters += [(j, -1) for j in range(p + 1, q)]
    return BraidWord(n, letters)


def delta_word(n: int) -> BraidWord:
    """The half twist: s1 (s2 s1) (s3 s2 s1) ..."""
    letters = []
    for k in range(1, n):
        letters.extend((j, 1) for j in range(k, 0, -1))
    return BraidWord(n, letters)


def ell_word(i: int) -> BraidWord:
    """The three point-pushing braids of B_4 (defined for i = 2, 3, 4)."""
    words = {
        4: "s3 s2 s1 s1 s2 s3",
        3: "s2 s1 s1 s2 s3 s3",
        2: "s1 s1 s2 s3 s3 s2",
    }
    if i not in words:
        raise ValueError("point-pushing words are l2, l3, l4")
    return parse_braid(words[i], 4)


# generators of the rank-2 normal free subgroup of B_4
A_WORD_STR = "s1 s3^-1"
B_WORD_STR = "s2 s1 s3^-1 s2^-1"


def f2_word(n: int = 4) -> tuple[BraidWord, BraidWord]:
    return parse_braid(A_WORD_STR, n), parse_braid(B_WORD_STR, n)


def parse_braid(text: str, n: int) -> BraidWord:
    """Parse ``s1 s2^-1 ...``; also expands the named abbreviations
    A12..A56 (pure generators), l2 l3 l4 (B_4 only), Delta, and center."""
    out = BraidWord.identity(n)
    for token in text.split():
        base, _, exp_part = token.partition("^")
        exp = 1
        if exp_part:
            try:
                exp = int(exp_part)
            except ValueError:
                raise ValueError(f"bad exponent in {token!r}") from None
        if base == "1":
            continue
        elif base.startswith("s") and base[1:].isdigit():
            piece = BraidWord.gen(n, int(base[1:]))
        elif base.startswith("A") and base[1:].isdigit() and len(base) == 3:
            piece = pure_gen(int(base[1]), int(base[2]), n)
        elif base.startswith("l") and base[1:].isdigit():
            if n != 4:
                raise ValueError("l2/l3/l4 are braids of B_4")
            piece = ell_word(int(base[1:]))
        elif base == "Delta":
            piece = delta_word(n)
        elif base == "center":
            piece = delta_word(n) ** 2
        else:
            raise ValueError(f"unknown braid token {base!r}")
        out = out * piece ** exp
    return out


def format_braid(w: BraidWord) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"s{i}" if s == 1 else f"s{i}^-1" for i, s in w.letters)


# --- Garside left normal form ------------------------------------------------
#
# Permutation braids (positive braids in which each pair of strands crosses at
# most once) are represented by their permutations.  With diagrammatic
# composition, the starting set of a factor is the descent set of its one-line
# notation and the finishing set is the descent set of the inverse; a pair
# (x, y) is left-weighted exactly when every starting generator of y already
# finishes x.


def _starting_set(p: Permutation) -> list[int]:
    return [i for i in range(1, p.n) if p(i) > p(i + 1)]


def _finishing_set(p: Permutation) -> set[int]:
    inv = p.inverse()
    return {i for i in range(1, p.n) if inv(i) > inv(i + 1)}


def _left_mult(p: Permutation, i: int) -> Permutation:
    # permutation of s_i * x
    return Permutation.transposition(p.n, i, i + 1) * p


def _right_mult(p: Permutation, i: int) -> Permutation:
    # permutation of x * s_i
    return p * Permutation.transposition(p.n, i, i + 1)


def _delta_perm(n: int) -> Permutation:
    return Permutation(range(n, 0, -1))


def _tau(p: Permutation) -> Permutation:
    # conjugation by the half twist; an involution on permutations
    n = p.n
    return Permutation(tuple(n + 1 - p(n + 1 - i) for i in range(1, n + 1)))


class GarsideNormalForm:
    """Canonical form Delta^k * f_1 ... f_m with left-weighted permutation
    braid factors, none of which is trivial or the half twist."""

    __slots__ = ("n", "delta_power", "factors")

    def __init__(self, n: int, delta_power: int, factors: Sequence[Permutation]):
        factors = tuple(factors)
        delta = _delta_perm(n)
        for f in factors:
            if f.n != n:
                raise ValueError("factor degree mismatch")
            if f.is_identity() or f == delta:
                raise ValueError("factors must be proper permutation braids")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "delta_power", delta_power)
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, name, value):
        raise AttributeError("GarsideNormalForm is immutable")

    def is_trivial(self) -> bool:
        return self.delta_power == 0 and not self.factors

    def canonical_length(self) -> int:
        return len(self.factors)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GarsideNormalForm)
                and self.n == other.n
                and self.delta_power == other.delta_power
                and self.factors == other.factors)

    def __hash__(self) -> int:
        return hash((self.n, self.delta_power, self.factors))

    def __repr__(self) -> str:
        return f"GarsideNormalForm(n={self.n}, Delta^{self.delta_power}, {len(self.factors)} factors)"

    def to_braid_word(self) -> BraidWord:
        out = delta_word(self.n) ** self.delta_power
        for f in self.factors:
            out = out * _perm_braid_word(f)
        return out

    def factor_words(self) -> list[BraidWord]:
        """Each permutation-braid factor as a positive word."""
        return [_perm_braid_word(f) for f in self.factors]


def _perm_braid_word(p: Permutation) -> BraidWord:
    letters = []
    q = p
    while not q.is_identity():
        i = min(_starting_set(q))
        letters.append((i, 1))
        q = _left_mult(q, i)
    return BraidWord(p.n, letters)


def normal_form(w: BraidWord) -> GarsideNormalForm:
    """Left-greedy normal form.  Negative letters enter as Delta^-1 times the
    complementary permutation braid; factors are then repeatedly left-weighted
    by transferring starting generators of each factor into its predecessor.
    """
    n = w.n
    delta = _delta_perm(n)
    power = 0
    factors: list[Permutation] = []
    for idx, sign in w.letters:
        if sign == 1:
            factors.append(Permutation.transposition(n, idx, idx + 1))
        else:
            power -= 1
            factors = [_tau(f) for f in factors]
            factors.append(_right_mult(delta, idx))  # permutation of Delta * s_idx^-1

    changed = True
    while changed:
        changed = False
        j = 0
        while j < len(factors):
            f = factors[j]
            if f.is_identity():
                del factors[j]
                changed = True
                continue
            if f == delta:
                del factors[j]
                factors[:j] = [_tau(x) for x in factors[:j]]
                power += 1
                changed = True
                continue
            if j + 1 < len(factors):
                x, y = factors[j], factors[j + 1]
                moved = False
                while True:
                    fin = _finishing_set(x)
                    todo = [i for i in _starting_set(y) if i not in fin]
                    if not todo:
                        break
                    i = todo[0]
                    x = _right_mult(x, i)
                    y = _left_mult(y, i)
                    moved = True
                if moved:
                    factors[j], factors[j + 1] = x, y
                    changed = True
            j += 1
    return GarsideNormalForm(n, power, factors)


def braid_equal(u: BraidWord, v: BraidWord) -> bool:
    """Equality in B_n via identical normal forms."""
    if u.n != v.n:
        raise ValueError("strand count mismatch")
    return normal_form(u) == normal_form(v)


# --- Dehornoy handle reduction (cross-check oracle) --------------------------


def _leftmost_handle(letters: list[Letter]) -> tuple[int, int] | None:
    # a handle is s_i^e ... s_i^-e with only generators of larger index between
    for k2, (i2, e2) in enumerate(letters):
        for k1 in range(k2 - 1, -1, -1):
            i1, e1 = letters[k1]
            if i1 > i2:
                continue
            if i1 == i2 and e1 == -e2:
                return (k1, k2)
            break  # blocked by an index <= i2
    return None


def handle_reduce(w: BraidWord, max_steps: int = 1_000_000) -> BraidWord:
    """Reduce the leftmost handle until none remains.  The result is empty iff
    the braid is trivial (a nonempty handle-free word is sigma-definite)."""
    letters = list(w.letters)
    for _ in range(max_steps):
        h = _leftmost_handle(letters)
        if h is None:
            return BraidWord(w.n, letters)
        k1, k2 = h
        i, e = letters[k1]
        repl: list[Letter] = []
        for j, d in letters[k1 + 1:k2]:
            if j == i + 1:
                repl.extend([(i + 1, -e), (i, d), (i + 1, e)])
            else:
                repl.append((j, d))
        letters = list(_reduce(letters[:k1] + repl + letters[k2 + 1:]))
    raise RuntimeError("handle reduction exceeded the step budget")


def handle_trivial(w: BraidWord) -> bool:
    return len(handle_reduce(w)) == 0


# --- strand deletion and the quartic-to-cubic epimorphism --------------------


def delete_strand(w: BraidWord, i: int) -> BraidWord:
    """Remove strand i from a pure braid of B_n, yielding a braid of B_{n-1}.

    Position tracking: crossings involving the tracked strand are dropped
    (updating its position), crossings above it shift down by one.
    """
    if not 1 <= i <= w.n:
        raise ValueError(f"strand {i} out of range")
    if not braid_perm(w).is_identity():
        raise NonPureBraid("strand deletion is defined on pure braids only")
    pos = i
    out: list[Letter] = []
    for j, s in w.letters:
        if pos == j:
            pos = j + 1
        elif pos == j + 1:
            pos = j
        elif j + 1 < pos:
            out.append((j, s))
        else:
            out.append((j - 1, s))
    return BraidWord(w.n - 1, out)


def cardano_ferrari(w: BraidWord) -> BraidWord:
    """The epimorphism B_4 -> B_3 that adds the relator s1 s3^-1
    (letterwise: s1 -> s1, s2 -> s2, s3 -> s1)."""
    if w.n != 4:
        raise ValueError("defined on B_4")
    return BraidWord(3, tuple((1 if j == 3 else j, s) for j, s in w.letters))


# --- conjugation action on the normal F_2 ------------------------------------
#
# The generators act by conjugation on <a, b> = <s1 s3^-1, s2 s1 s3^-1 s2^-1>.
# Images are words in a (generator 1) and b (generator 2).  The s2^-1 a-row is
# forced by the others: it must be the compositional inverse of the s2 row and
# its exponent vector must land in SL(2,Z).

SIGMA_ACTION_TABLE: dict[tuple[int, int], tuple[str, str]] = {
    (1, 1): ("a", "b a^-1"),
    (2, 1): ("b", "b a^-1 b"),
    (3, 1): ("a", "a^-1 b"),
    (1, -1): ("a", "b a"),
    (2, -1): ("a b^-1 a", "a"),
    (3, -1): ("a", "a b"),
}


def generator_action(i: int, sign: int, table=None) -> FreeHom:
    """Tabulated conjugation action of s_i^sign on the normal F_2 of B_4."""
    table = SIGMA_ACTION_TABLE if table is None else table
    if (i, sign) not in table:
        raise ValueError(f"no action row for (s{i})^{sign}")
    a_img, b_img = table[(i, sign)]
    return FreeHom(2, 2, (parse_word(a_img, 2), parse_word(b_img, 2)))


def braid_action(w: BraidWord, table=None) -> FreeHom:
    """Diagrammatic composition of the per-letter actions over the word."""
    if w.n != 4:
        raise ValueError("the F_2 conjugation action lives on B_4")
    f = FreeHom.identity(2)
    for i, s in w.letters:
        f = compose(f, generator_action(i, s, table))
    return f


def expand_f2(w: Word) -> BraidWord:
    """Substitute the braid words for a and b into a rank-2 free-group word."""
    if w.rank != 2:
        raise ValueError("expected a rank-2 word")
    a, b = f2_word()
    out = BraidWord.identity(4)
    for idx, sign in w.letters:
        g = a if idx == 1 else b
        out = out * (g if sign == 1 else g.inverse())
    return out


def verify_table_row(i: int, sign: int, row: tuple[str, str] | None = None) -> bool:
    """Check one action-table row against actual conjugation in B_4:
    s_i^sign g s_i^-sign must equal the expanded image for g in {a, b}."""
    f = generator_action(i, sign) if row is None else FreeHom(
        2, 2, (parse_word(row[0], 2), parse_word(row[1], 2)))
    s = BraidWord.gen(4, i, sign)
    for k, g in enumerate(f2_word()):
        lhs = s * g * s.inverse()
        rhs = expand_f2(f.images[k])
        if not braid_equal(lhs, rhs):
            return False
    return True


def braid_to_word(w: BraidWord) -> Word:
    """Reinterpret as a free-group word on n-1 generators (for presentations)."""
    return Word(w.n - 1, w.letters)
