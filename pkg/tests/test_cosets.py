import pytest

from monoidpcsp.core import (
    CartesianPower,
    cyclic,
    direct_product,
    null_extension,
    semilattice_chain,
)
from monoidpcsp.cosets import (
    all_cosets,
    coset_closure,
    dagger_set,
    dagger_splitting_bound,
    elem_inverse,
    elem_is_regular,
    generated_subset,
    inverse_set,
    is_coset,
    setprod,
    splitting_index,
    tensor_power,
    verify_dagger_splitting,
)
from monoidpcsp.errors import NotCommutative, NotRegular


def test_setprod_and_tensor_power():
    M = cyclic(4)
    assert setprod(M, {1, 2}, {1}) == frozenset({2, 3})
    assert tensor_power(M, {0, 2}, 2) == frozenset({0, 2})
    assert tensor_power(M, {1}, 3) == frozenset({3})


def test_elem_inverse_is_a_group_inverse():
    for M in (cyclic(6), semilattice_chain(3),
              direct_product(cyclic(2), semilattice_chain(2))):
        for a in M.elements:
            b = elem_inverse(M, a)
            assert M.mul(M.mul(a, b), a) == a
            assert M.mul(M.mul(b, a), b) == b


def test_elem_inverse_rejects_irregular():
    M = null_extension()
    assert not elem_is_regular(M, 1)
    with pytest.raises(NotRegular):
        elem_inverse(M, 1)


def test_inverse_and_dagger_sets():
    M = cyclic(5)
    assert inverse_set(M, {1, 2}) == frozenset({4, 3})
    N = null_extension()
    assert dagger_set(N, N.elements) == frozenset({0, 2})


def test_generated_subset_is_closed():
    M = cyclic(6)
    sub = generated_subset(M, {2})
    assert sub == frozenset({0, 2, 4})
    assert setprod(M, sub, sub) == sub


def test_closure_is_minimal_coset_brute_force():
    """[U] is the smallest coset containing U, against subset enumeration."""
    for M in (cyclic(4), semilattice_chain(3),
              direct_product(semilattice_chain(2), cyclic(2))):
        cosets = all_cosets(M)
        for U in cosets:
            if U:
                assert coset_closure(M, U).members == U
        import itertools
        regular = [a for a in M.elements if elem_is_regular(M, a)]
        for r in (1, 2):
            for U in itertools.combinations(regular, r):
                closed = coset_closure(M, frozenset(U)).members
                smallest = min(
                    (C for C in cosets if C and frozenset(U) <= C),
                    key=len)
                assert closed == smallest


def test_is_coset_examples():
    M = cyclic(6)
    assert is_coset(M, {0, 2, 4})
    assert is_coset(M, {1, 3, 5})
    assert not is_coset(M, {0, 1, 3})
    # the pair of incomparable atoms in a 2x2 semilattice is not a coset:
    # their pairwise products drag in the bottom element
    P = direct_product(semilattice_chain(2), semilattice_chain(2))
    atoms = {a for a in P.elements
             if a != P.identity and P.mul(a, a) == a
             and not all(P.mul(a, b) == a for b in P.elements)}
    assert len(atoms) == 2
    assert not is_coset(P, atoms)
    assert is_coset(M, frozenset())


def test_is_coset_rejects_irregular_members():
    assert not is_coset(null_extension(), {0, 1})


def test_coset_ops_reject_noncommutative():
    from monoidpcsp.core import flipflop1
    with pytest.raises(NotCommutative):
        coset_closure(flipflop1(), {0})


def test_splitting_index_definition():
    """[R]^xn = R^xn for all nonempty R once n reaches the splitting index."""
    for M in (cyclic(3), cyclic(4), semilattice_chain(3),
              direct_product(cyclic(2), semilattice_chain(2))):
        L = splitting_index(M)
        for mask in range(1, 1 << M.size):
            R = frozenset(a for a in M.elements if mask >> a & 1)
            C = coset_closure(M, R).members
            for n in (L, L + 1, L + 2):
                assert tensor_power(M, C, n) == tensor_power(M, R, n)


def test_dagger_splitting_holds_at_the_bound():
    for M in (null_extension(), cyclic(4), semilattice_chain(3)):
        K = dagger_splitting_bound(M)
        assert verify_dagger_splitting(M, K, K + 2)


def test_dagger_splitting_can_fail_below_one():
    # over the null extension, [dagger(R)] escapes R at n = 1
    M = null_extension()
    assert not verify_dagger_splitting(M, 1, 2)


def test_cosets_in_a_power():
    M = cyclic(3)
    P = CartesianPower(M, 2)
    diag = frozenset((a, a) for a in M.elements)
    assert is_coset(P, diag)
    closed = coset_closure(P, {(0, 1), (1, 2)}).members
    assert is_coset(P, closed)
    assert {(0, 1), (1, 2)} <= closed
