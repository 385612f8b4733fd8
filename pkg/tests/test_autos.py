import numpy as np
import pytest

from brace_forge import (
    SizeCapExceeded,
    group_brace,
    group_homomorphisms,
    perm_composition,
    semidirect,
    sigma_actions,
    skew_automorphisms,
    validate_sigma,
)
from brace_forge.autos import AUTOMORPHISM_MAX_ORDER
from brace_forge.groups import cyclic_table, group_table


def test_skew_automorphism_counts(T2, R4, S3at):
    assert len(skew_automorphisms(T2)) == 1
    # R4: only x -> 3x survives besides the identity
    auts = skew_automorphisms(R4)
    assert [p.tolist() for p in auts] == [[0, 1, 2, 3], [0, 3, 2, 1]]
    # trivial braces reduce to group automorphisms
    k4 = group_brace("c2xc2", "trivial")
    assert len(skew_automorphisms(k4)) == 6
    cube = group_brace("c2xc2xc2", "trivial")
    assert len(skew_automorphisms(cube)) == 168  # |GL(3,2)|
    # S3 almost trivial: both tables are preserved by exactly Inn(S3)
    assert len(skew_automorphisms(S3at)) == 6


def test_automorphisms_preserve_both_tables(R4, S3at):
    for brace in (R4, S3at):
        for p in skew_automorphisms(brace):
            assert np.array_equal(p[brace.add], brace.add[np.ix_(p, p)])
            assert np.array_equal(p[brace.circ], brace.circ[np.ix_(p, p)])


def test_automorphism_cap(A4at):
    assert A4at.order > AUTOMORPHISM_MAX_ORDER
    with pytest.raises(SizeCapExceeded):
        skew_automorphisms(A4at)


def test_perm_composition():
    k4 = group_brace("c2xc2", "trivial")
    auts = skew_automorphisms(k4)
    comp = perm_composition(auts)
    assert comp.shape == (6, 6)
    # identity is index 0: composing with it changes nothing
    assert comp[0].tolist() == list(range(6))
    assert comp[:, 0].tolist() == list(range(6))
    # closure: every entry is a valid index, row/cols are permutations
    for i in range(6):
        assert sorted(comp[i].tolist()) == list(range(6))
        assert sorted(comp[:, i].tolist()) == list(range(6))


def test_group_homomorphisms_counts(T2):
    k4 = group_brace("c2xc2", "trivial")
    auts = skew_automorphisms(k4)      # GL(2,2), order 6
    # Z2 -> S3: identity plus the three involutions
    homs = group_homomorphisms(T2.circ, auts)
    assert len(homs) == 4
    for phi in homs:
        assert phi[0] == 0
    # images of the generator are distinct and ascending
    gen_images = [int(phi[1]) for phi in homs]
    assert gen_images == sorted(gen_images)
    # Z3 -> S3: identity plus two rotations
    homs = group_homomorphisms(cyclic_table(3), auts)
    assert len(homs) == 3


def test_group_homomorphisms_budget(T2):
    k4 = group_brace("c2xc2", "trivial")
    auts = skew_automorphisms(k4)
    homs = group_homomorphisms(T2.circ, auts, budget=2)
    assert len(homs) == 2
    full = group_homomorphisms(T2.circ, auts)
    assert [h.tolist() for h in homs] == [h.tolist() for h in full[:2]]


def test_homomorphism_property(S3at):
    auts = skew_automorphisms(S3at)
    comp = perm_composition(auts)
    for phi in group_homomorphisms(group_table("s3"), auts):
        for a in range(6):
            for b in range(6):
                assert comp[phi[a], phi[b]] == phi[group_table("s3")[a, b]]


def test_sigma_actions_all_valid(R4, T2, S3at):
    actions = sigma_actions(R4, T2)
    assert len(actions) == 2  # Z2 -> Aut(R4) = Z2
    for sig in actions:
        assert validate_sigma(sig) == []
        assert sig.perms[0].tolist() == [0, 1, 2, 3]
    # the nontrivial action twists the semidirect product
    prods = [semidirect(R4, T2, sig) for sig in actions]
    assert prods[0] != prods[1]

    actions = sigma_actions(S3at, T2)
    assert len(actions) == 4  # Z2 into Inn(S3) = S3
    for sig in actions:
        assert validate_sigma(sig) == []


def test_sigma_actions_budget(R4, T2):
    assert len(sigma_actions(R4, T2, budget=1)) == 1
