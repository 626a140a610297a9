"""Cosets of commutative monoids: closure, validation, splitting constants."""

from monoidpcsp.core import CartesianPower, cyclic, direct_product, semilattice_chain
from monoidpcsp.cosets import (
    all_cosets,
    coset_closure,
    dagger_splitting_bound,
    is_coset,
    splitting_index,
    tensor_power,
)

M = cyclic(6)
print("all cosets of Z/6:")
for C in sorted(all_cosets(M), key=lambda c: (len(c), sorted(c))):
    print("  ", sorted(C))

U = {1, 2}
closed = coset_closure(M, U).members
print(f"\nclosure of {sorted(U)} in Z/6:", sorted(closed))
print("is a coset:", is_coset(M, closed))

P = CartesianPower(cyclic(3), 2)
pairs = {(0, 1), (1, 2)}
closed2 = coset_closure(P, pairs).members
print("\nclosure of", sorted(pairs), "in (Z/3)^2:", sorted(closed2))

for name, N in [("Z/4", cyclic(4)),
                ("chain of size 3", semilattice_chain(3)),
                ("Z/2 x chain", direct_product(cyclic(2), semilattice_chain(2)))]:
    L = splitting_index(N)
    print(f"\nsplitting index of {name}: {L}")
    R = frozenset(list(N.elements)[:2])
    C = coset_closure(N, R).members
    print(f"  [R]^x{L} == R^x{L}:",
          tensor_power(N, C, L) == tensor_power(N, R, L))
    print("  regular-part splitting bound:", dagger_splitting_bound(N))
