"""Schreier automata for finite-index subgroups of F_2."""

import random

import pytest

from cgkernel.intlin import hom_matrix
from cgkernel.perms import Permutation, parse_cycles
from cgkernel.subgroups import (NotMember, NotStabilized, expand, from_quotient,
                                membership, restrict_hom, rewrite)
from cgkernel.words import Word, compose, parse_word, transvection

from test_intlin import RESTRICTED_STABILIZER_MATS


def parity_automaton():
    """Kernel of F_2 -> Z/2 with a -> 0, b -> 1."""
    return from_quotient(2, [Permutation.identity(2), Permutation((2, 1))])


def mod2_automaton():
    """Kernel of F_2 -> (Z/2)^2, both generators mapping to involutions."""
    return from_quotient(2, [parse_cycles("(1,2)(3,4)", 4),
                             parse_cycles("(1,3)(2,4)", 4)])


def stabilizer_generators():
    lam = transvection(2, 1, 2)
    rho = transvection(2, 2, 1)
    return (lam * lam, rho, lam ** -1 * rho ** 2 * lam,
            lam ** -1 * rho ** -1 * lam * rho * lam)


def test_parity_kernel_basis():
    aut = parity_automaton()
    assert aut.index == 2
    assert set(aut.basis) == {parse_word("a", 2), parse_word("b^2", 2),
                              parse_word("b a b^-1", 2)}


def test_mod2_kernel_rank():
    aut = mod2_automaton()
    assert aut.index == 4 and len(aut.basis) == 5


def test_trivial_quotient():
    aut = from_quotient(2, [Permutation.identity(1)] * 2)
    assert aut.index == 1
    assert list(aut.basis) == [parse_word("a", 2), parse_word("b", 2)]


def test_nielsen_schreier_count():
    for aut in (parity_automaton(), mod2_automaton()):
        assert len(aut.basis) == 1 + aut.index * (aut.rank - 1)


def test_membership():
    aut = parity_automaton()
    assert membership(aut, parse_word("b a b^-1", 2))
    assert not membership(aut, parse_word("b", 2))
    assert membership(aut, Word.identity(2))
    with pytest.raises(ValueError):
        membership(aut, parse_word("a", 3))


def test_rewrite_of_basis_words_is_single_letter():
    aut = parity_automaton()
    for text in ("a", "b^2", "b a b^-1"):
        word = parse_word(text, 2)
        rewritten = rewrite(aut, word)
        assert len(rewritten) == 1
        assert expand(aut, rewritten) == word


def test_rewrite_round_trip_random_members():
    rng = random.Random(0)
    for aut in (parity_automaton(), mod2_automaton()):
        nbasis = len(aut.basis)
        for _ in range(300):
            member = Word.identity(2)
            for _ in range(rng.randint(0, 8)):
                g = aut.basis[rng.randrange(nbasis)]
                member = member * (g if rng.random() < 0.5 else g.inverse())
            assert expand(aut, rewrite(aut, member)) == member


def test_rewrite_rejects_non_member():
    with pytest.raises(NotMember):
        rewrite(parity_automaton(), parse_word("b", 2))


def test_restriction_of_identity():
    aut = parity_automaton()
    from cgkernel.words import Aut, FreeHom
    assert restrict_hom(aut, Aut.identity(2)) == FreeHom.identity(3)


def test_restriction_values():
    aut = parity_automaton()
    rho = transvection(2, 2, 1)
    restricted = restrict_hom(aut, rho)
    # rho fixes a, which is the first basis letter
    assert restricted.images[0] == Word.gen(3, 1)
    lam2 = transvection(2, 1, 2) ** 2
    res2 = restrict_hom(aut, lam2)
    # a maps to a b^2: one letter for a, one for b^2
    assert expand(aut, res2.images[0]) == parse_word("a b^2", 2)


def test_restricted_homology_matrices_match_frozen_values():
    aut = parity_automaton()
    mats = [hom_matrix(restrict_hom(aut, g)) for g in stabilizer_generators()]
    assert mats == RESTRICTED_STABILIZER_MATS


def test_stabilizer_generators_and_inverses_restrict():
    aut = parity_automaton()
    for g in stabilizer_generators():
        restrict_hom(aut, g)
        restrict_hom(aut, g.inverse())


def test_restriction_is_functorial():
    aut = parity_automaton()
    gens = stabilizer_generators()
    for f in gens[:2]:
        for g in gens[2:]:
            lhs = restrict_hom(aut, f * g)
            rhs = compose(restrict_hom(aut, f), restrict_hom(aut, g))
            assert lhs == rhs


def test_non_stabilizing_automorphism_rejected():
    aut = parity_automaton()
    lam = transvection(2, 1, 2)  # a -> ab has odd parity image
    with pytest.raises(NotStabilized):
        restrict_hom(aut, lam)


def test_restriction_determinants_are_one():
    assert all(m.det() == 1 for m in RESTRICTED_STABILIZER_MATS)
