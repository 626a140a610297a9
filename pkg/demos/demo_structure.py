"""Tour of the monoid structure toolkit on the built-in examples."""

from monoidpcsp.core import (
    cyclic,
    d_of,
    flipflop1,
    green_classes,
    idempotent_constant,
    idempotents,
    inverse,
    is_commutative,
    is_completely_regular,
    null_extension,
    pi_dagger,
    semilattice_chain,
)

for name, M in [("Z/6", cyclic(6)),
                ("chain semilattice of size 3", semilattice_chain(3)),
                ("flip-flop with identity", flipflop1()),
                ("null extension", null_extension())]:
    print(f"== {name} ==")
    print("  elements:", list(M.elements), "identity:", M.identity)
    print("  commutative:", is_commutative(M),
          " completely regular:", is_completely_regular(M))
    print("  idempotents:", sorted(idempotents(M)))
    print("  idempotent constant C:", idempotent_constant(M))
    print("  equivalence classes of the divisibility preorder:",
          green_classes(M))
    print("  idempotent power d_a:", {a: d_of(M, a) for a in M.elements})
    if is_commutative(M):
        print("  regular retraction a -> a*d_a:", pi_dagger(M).images)
    if is_completely_regular(M):
        print("  group inverses:", {a: inverse(M, a) for a in M.elements})
    print()
