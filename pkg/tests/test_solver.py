import random
from itertools import product

import pytest

from monoidpcsp.core import (
    CartesianPower,
    cyclic,
    direct_product,
    minimal_generating_set,
    semilattice_chain,
)
from monoidpcsp.cosets import coset_closure
from monoidpcsp.errors import NotACoset, ValidationError
from monoidpcsp.model import (
    Identity,
    Product,
    Relation,
    check_assignment,
    make_finite_template,
    make_instance,
    make_nf_template,
    oracle_solve,
)
from monoidpcsp.regularize import integers_nf
from monoidpcsp.solver import (
    SemilatticeTemplate,
    finite_template_to_nf,
    format_assignment,
    minimal_homomorphism,
    projected_semilattice_template,
    solve_tractable,
)


def intro_nf_template():
    Z = integers_nf()
    return make_nf_template(Z, 3, [
        ((0, 0, 0), [0, 0, 1], [[1, 1, 1], [1, -1, 0], [0, 1, -1]]),
    ])


def intro_instance():
    return make_instance(5, [
        Product(0, 1, 4), Product(2, 3, 4),
        Relation((0, 1, 2)), Relation((2, 3, 0)), Relation((2, 3, 1)),
    ])


def test_minimal_homomorphism_is_pointwise_least():
    N = semilattice_chain(3)
    TI = SemilatticeTemplate(N, 1, frozenset({(0,), (1,)}))
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 3)
        cs = []
        for _ in range(rng.randint(0, 3)):
            k = rng.randrange(3)
            if k == 0:
                cs.append(Product(rng.randrange(n), rng.randrange(n),
                                  rng.randrange(n)))
            elif k == 1:
                cs.append(Identity(rng.randrange(n)))
            else:
                cs.append(Relation((rng.randrange(n),)))
        I = make_instance(n, cs)
        h = minimal_homomorphism(TI, I)
        sols = []
        for a in product(N.elements, repeat=n):
            ok = all(
                (N.mul(a[c.x], a[c.y]) == a[c.z]) if isinstance(c, Product)
                else (a[c.x] == N.identity) if isinstance(c, Identity)
                else tuple(a[v] for v in c.vars) in TI.relation
                for c in cs)
            if ok:
                sols.append(a)
        if not sols:
            assert h is None
        else:
            assert h is not None
            assert tuple(h) in sols
            # least under the semilattice order a <= b iff ab = a
            for s in sols:
                for x in range(n):
                    assert N.mul(h[x], s[x]) == h[x]


def test_unsat_when_domains_empty():
    N = semilattice_chain(2)
    TI = SemilatticeTemplate(N, 1, frozenset({(1,)}))
    I = make_instance(1, [Relation((0,)), Identity(0)])
    assert minimal_homomorphism(TI, I) is None


def test_intro_instance_refuted_over_integers():
    T = intro_nf_template()
    assert solve_tractable(T, intro_instance()) is None


def test_simple_nf_instances():
    T = intro_nf_template()
    # a single relation constraint is satisfiable
    I = make_instance(3, [Relation((0, 1, 2))])
    sol = solve_tractable(T, I)
    assert sol is not None
    assert check_assignment(T, I, sol)
    # relation plus all-identity is unsat: (0,0,0) sums to 0, not 1 mod 3
    I2 = make_instance(3, [Relation((0, 1, 2)),
                           Identity(0), Identity(1), Identity(2)])
    assert solve_tractable(T, I2) is None


def test_empty_instance_is_satisfiable():
    T = intro_nf_template()
    I = make_instance(0, [])
    assert solve_tractable(T, I) == []


def test_projected_template_rejects_non_coset():
    N = direct_product(semilattice_chain(2), semilattice_chain(2))
    atoms = sorted(a for a in N.elements
                   if a != N.identity
                   and not all(N.mul(a, b) == a for b in N.elements))
    from monoidpcsp.regularize import to_normal_form
    iso = to_normal_form(N, minimal_generating_set(N))
    NF = iso.nf
    q = NF.num_coords
    blocks = [((iso.encode(a).d,), list(iso.encode(a).v), []) for a in atoms]
    T = make_nf_template(NF, 1, blocks)
    with pytest.raises(NotACoset):
        projected_semilattice_template(T)


def test_solve_tractable_requires_nf_carrier():
    T = make_finite_template(cyclic(2), 1, [(0,)])
    with pytest.raises(ValidationError):
        solve_tractable(T, make_instance(1, []))


def seeded_instances(rng, count, max_vars, arity):
    out = []
    for _ in range(count):
        n = rng.randint(1, max_vars)
        cs = []
        for _ in range(rng.randint(1, 4)):
            k = rng.randrange(3)
            if k == 0:
                cs.append(Product(rng.randrange(n), rng.randrange(n),
                                  rng.randrange(n)))
            elif k == 1:
                cs.append(Identity(rng.randrange(n)))
            else:
                cs.append(Relation(tuple(rng.randrange(n)
                                         for _ in range(arity))))
        out.append(make_instance(n, cs))
    return out


def test_solver_agrees_with_oracle_on_coset_templates():
    rng = random.Random(17)
    monoids = [cyclic(4), semilattice_chain(2),
               direct_product(cyclic(2), semilattice_chain(2)), cyclic(6)]
    for M in monoids:
        for arity in (1, 2):
            P = CartesianPower(M, arity)
            seeds = [tuple(rng.randrange(M.size) for _ in range(arity))
                     for _ in range(2)]
            rel = coset_closure(P, seeds).members
            T = make_finite_template(M, arity, rel)
            TN, iso = finite_template_to_nf(T)
            for I in seeded_instances(rng, 12, 4, arity):
                fast = solve_tractable(TN, I)
                slow = oracle_solve(T, I)
                assert (fast is None) == (slow is None), (M.table, I)
                if fast is not None:
                    decoded = [iso.decode(x) for x in fast]
                    assert check_assignment(T, I, decoded)


def test_finite_template_to_nf_preserves_relation():
    M = cyclic(6)
    rel = coset_closure(M, {1}).members
    T = make_finite_template(M, 1, [(a,) for a in rel])
    TN, iso = finite_template_to_nf(T)
    from monoidpcsp.model import block_contains
    for a in M.elements:
        assert block_contains(TN, [iso.encode(a)]) == ((a,) in T.relation)


def test_format_assignment_lines():
    T = intro_nf_template()
    I = make_instance(3, [Relation((0, 1, 2))])
    sol = solve_tractable(T, I)
    lines = format_assignment(T, sol).splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("x0 = d:0 v:(")

    M = cyclic(3)
    TF = make_finite_template(M, 1, [(1,)])
    assert format_assignment(TF, [1, 2]) == "x0 = 1\nx1 = 2"
