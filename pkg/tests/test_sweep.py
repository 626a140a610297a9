from monoidpcsp.core import (
    is_commutative,
    is_completely_regular,
    validate_monoid,
)
from monoidpcsp.sweep import (
    all_monoid_tables,
    canonical_table,
    commutative_regular_sweep,
    commutative_sweep,
    curated_monoids,
    dedupe_isomorphic,
    monoid_sweep,
)


def test_exhaustive_counts_with_fixed_identity():
    assert [len(all_monoid_tables(n)) for n in (1, 2, 3, 4)] == [1, 2, 11, 156]


def test_counts_up_to_isomorphism():
    # the classification of small monoids: 1, 2, 7, 35
    counts = [len(dedupe_isomorphic(all_monoid_tables(n)))
              for n in (1, 2, 3, 4)]
    assert counts == [1, 2, 7, 35]


def test_every_swept_table_is_a_monoid():
    for M in monoid_sweep(4):
        validate_monoid(M.table, M.identity)
    for n in (5, 6):
        for M in curated_monoids(n):
            validate_monoid(M.table, M.identity)


def test_canonical_table_is_isomorphism_invariant():
    import itertools
    for M in all_monoid_tables(3):
        key = canonical_table(M)
        # relabel by every identity-fixing permutation and compare
        n = M.size
        for perm in itertools.permutations(range(1, n)):
            relabel = [0] + list(perm)
            inv = [0] * n
            for old, new in enumerate(relabel):
                inv[new] = old
            from monoidpcsp.core import FiniteMonoid
            T = tuple(tuple(relabel[M.mul(inv[a], inv[b])] for b in range(n))
                      for a in range(n))
            assert canonical_table(FiniteMonoid(T, 0)) == key


def test_filters_are_subsets():
    full = monoid_sweep(4, unique=True)
    comm = commutative_sweep(4, unique=True)
    reg = commutative_regular_sweep(4, unique=True)
    keys = {canonical_table(M) for M in full}
    assert {canonical_table(M) for M in comm} <= keys
    assert {canonical_table(M) for M in reg} <= {canonical_table(M) for M in comm}
    assert all(is_commutative(M) for M in comm)
    assert all(is_commutative(M) and is_completely_regular(M) for M in reg)


def test_sweep_is_deterministic():
    a = [M.table for M in monoid_sweep(5, unique=True)]
    b = [M.table for M in monoid_sweep(5, unique=True)]
    assert a == b


def test_curated_sizes_present():
    sizes5 = {M.size for M in curated_monoids(5)}
    sizes6 = {M.size for M in curated_monoids(6)}
    assert sizes5 == {5} and sizes6 == {6}
    assert len(curated_monoids(6)) >= 10
