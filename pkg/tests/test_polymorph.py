import random
from itertools import product

import pytest

from monoidpcsp.classify import classify
from monoidpcsp.core import cyclic, enumerate_homs, make_hom, semilattice_chain
from monoidpcsp.errors import (
    NonCommutingImages,
    SearchCapExceeded,
    ValidationError,
    WitnessInvalid,
)
from monoidpcsp.model import make_finite_template, make_nf_template, oracle_solve
from monoidpcsp.polymorph import (
    all_table_polymorphisms,
    block_symmetric_from_witness,
    constant_sets,
    find_block_symmetric,
    is_polymorphism,
    is_satisfiable_in_pol,
    is_trivial,
    make_hom_polymorphism,
    make_minor_condition,
    minor,
    parse_minor_condition,
    pmc_reduce,
    selection_set,
    serialize_minor_condition,
    table_of,
    unary_minor,
)
from monoidpcsp.regularize import integers_nf


def nonconstant_triples(n):
    return [t for t in product(range(n), repeat=3)
            if not (t[0] == t[1] == t[2])]


def sum_triples(n, residue):
    return [t for t in product(range(n), repeat=3) if sum(t) % n == residue]


def intro_nf_template():
    Z = integers_nf()
    return make_nf_template(Z, 3, [
        ((0, 0, 0), [0, 0, 1], [[1, 1, 1], [1, -1, 0], [0, 1, -1]]),
    ])


def random_commuting_polymorphism(rng, M, arity):
    homs = enumerate_homs(M, M)
    while True:
        comps = [rng.choice(homs) for _ in range(arity)]
        try:
            return make_hom_polymorphism(comps)
        except NonCommutingImages:
            continue


def test_minor_composition_laws():
    rng = random.Random(9)
    M = cyclic(4)
    for _ in range(30):
        n = rng.randint(1, 3)
        m = rng.randint(1, 3)
        k = rng.randint(1, 3)
        f = random_commuting_polymorphism(rng, M, n)
        s1 = tuple(rng.randrange(m) for _ in range(n))
        s2 = tuple(rng.randrange(k) for _ in range(m))
        comp = tuple(s2[s1[i]] for i in range(n))
        lhs = minor(minor(f, s1, m), s2, k)
        rhs = minor(f, comp, k)
        assert table_of(lhs, M).table == table_of(rhs, M).table
        ident = tuple(range(n))
        assert table_of(minor(f, ident, n), M).table == table_of(f, M).table


def test_minor_agrees_with_argument_duplication():
    rng = random.Random(21)
    M = cyclic(4)
    for _ in range(10):
        f = random_commuting_polymorphism(rng, M, 2)
        g = minor(f, (0, 0), 1)
        for a in M.elements:
            assert g((a,)) == f((a, a))


def test_unary_minor_is_component_product():
    M = cyclic(6)
    h1 = make_hom(M, M, tuple(M.mul(a, a) for a in M.elements))
    f = make_hom_polymorphism([h1, h1])
    u = unary_minor(f)
    for a in M.elements:
        assert u((a,)) == M.mul(h1(a), h1(a))


def test_projection_is_polymorphism():
    T = make_finite_template(cyclic(3), 3, nonconstant_triples(3))
    for h, in [(h,) for h in enumerate_homs(cyclic(3), cyclic(3))]:
        f = make_hom_polymorphism([h])
        if all(tuple(h(a) for a in t) in T.relation for t in T.relation):
            assert is_polymorphism(f, T, T)


def test_sum_polymorphism_on_residue_relations():
    M = cyclic(3)
    ident = make_hom(M, M, (0, 1, 2))
    f = make_hom_polymorphism([ident, ident, ident])
    # three tuples of residue 0 sum to residue 0: a polymorphism
    T0 = make_finite_template(M, 3, sum_triples(3, 0))
    assert is_polymorphism(f, T0, T0)
    # three tuples of residue 1 sum to residue 0, leaving the relation
    T1 = make_finite_template(M, 3, sum_triples(3, 1))
    assert not is_polymorphism(f, T1, T1)


def test_block_symmetric_from_witness_intro():
    T = intro_nf_template()
    target = make_finite_template(cyclic(3), 3, nonconstant_triples(3))
    c = classify(T, target)
    assert c.verdict == "Tractable"
    for i in (0, 1, 2):
        f = block_symmetric_from_witness(c.witness, i)
        assert f.arity == 2 * i + 1
        assert is_polymorphism(f, T, target)


def test_block_symmetric_rejects_bad_witness():
    M = cyclic(3)
    h = make_hom(semilattice_chain(2), M, (0, 0))
    from monoidpcsp.core import flipflop1
    homs = enumerate_homs(flipflop1(), flipflop1())
    noncomm = next(h for h in homs if h.images == tuple(flipflop1().elements))
    with pytest.raises(WitnessInvalid):
        block_symmetric_from_witness(noncomm, 1)


def test_find_block_symmetric():
    T3 = make_finite_template(cyclic(3), 3, nonconstant_triples(3))
    found = find_block_symmetric(T3, T3, 1)
    assert found is not None
    assert is_polymorphism(found, T3, T3)
    # at i = 1 the last block is a singleton, so the third projection
    # always qualifies; the search only becomes discriminating at i >= 2
    T5 = make_finite_template(cyclic(5), 3, nonconstant_triples(5))
    assert find_block_symmetric(T5, T5, 2) is None
    with pytest.raises(SearchCapExceeded):
        find_block_symmetric(T5, T5, 2, cap=1)


def test_constant_sets_and_selection():
    M = cyclic(4)
    ident = make_hom(M, M, (0, 1, 2, 3))
    sq = make_hom(M, M, (0, 2, 0, 2))
    f = make_hom_polymorphism([ident, ident, sq])
    parts = constant_sets(f)
    assert sorted(sorted(p) for p in parts) == [[0, 1], [2]]
    assert sorted(selection_set(f, 2)) == [2]
    assert sorted(selection_set(f, 3)) == [0, 1, 2]
    g = make_hom_polymorphism([ident, ident])
    assert list(selection_set(g, 2)) == []


def test_minor_condition_triviality():
    empty = make_minor_condition([], [], [])
    assert is_trivial(empty)
    # f(x0,x1) = g(x0,x1) = g(x1,x0) forces an index fixed by the swap
    cond = make_minor_condition([("f", 2)], [("g", 2)],
                                [("f", "g", (0, 1)), ("f", "g", (1, 0))])
    assert not is_trivial(cond)
    loose = make_minor_condition([("f", 2)], [("g", 2)], [("f", "g", (0, 1))])
    assert is_trivial(loose)


def test_minor_condition_round_trip():
    cond = make_minor_condition([("f", 2)], [("g", 1)],
                                [("f", "g", (0, 0))])
    text = serialize_minor_condition(cond)
    assert parse_minor_condition(text) == cond


def test_trivial_condition_satisfiable_in_every_pol():
    T = make_finite_template(cyclic(2), 1, [(0,)])
    cond = make_minor_condition([("f", 2)], [("g", 1)], [("f", "g", (0, 0))])
    assert is_trivial(cond)
    assert is_satisfiable_in_pol(cond, T, T)


def test_projections_only_pair():
    """Over (Z/2, sum-odd triples) every binary polymorphism is a
    projection, so the symmetric binary condition is unsatisfiable."""
    T = make_finite_template(cyclic(2), 3, sum_triples(2, 1))
    polys = all_table_polymorphisms(T, T, 2)
    tables = {tuple(p.table[k] for k in sorted(p.table)) for p in polys}
    assert tables == {(0, 0, 1, 1), (0, 1, 0, 1)}
    cond = make_minor_condition([("f", 2)], [("g", 2)],
                                [("f", "g", (0, 1)), ("f", "g", (1, 0))])
    assert not is_satisfiable_in_pol(cond, T, T)


def test_pmc_reduce_trivial_condition_satisfiable():
    T = make_finite_template(cyclic(2), 1, [(1,)])
    cond = make_minor_condition([("f", 2)], [("g", 1)], [("f", "g", (0, 0))])
    I = pmc_reduce(cond, T, T, 2)
    assert oracle_solve(T, I) is not None


def test_pmc_reduce_unsat_condition_refuted():
    T = make_finite_template(cyclic(2), 3, sum_triples(2, 1))
    cond = make_minor_condition([("f", 2)], [("g", 2)],
                                [("f", "g", (0, 1)), ("f", "g", (1, 0))])
    I = pmc_reduce(cond, T, T, 2)
    assert oracle_solve(T, I) is None


def test_pmc_reduce_validates_symbol_arity():
    T = make_finite_template(cyclic(2), 1, [(1,)])
    cond = make_minor_condition([("f", 3)], [("g", 1)], [("f", "g", (0, 0, 0))])
    with pytest.raises(ValidationError):
        pmc_reduce(cond, T, T, 2)
