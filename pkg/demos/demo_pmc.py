"""Minor conditions, polymorphisms, and the reduction to instances.

Over (Z/2, odd-sum triples) the only binary polymorphisms are the two
projections, so the fully symmetric binary condition is unsatisfiable and
its reduction produces an unsatisfiable instance.  A trivial condition
reduces to a satisfiable one.
"""

from itertools import product

from monoidpcsp.core import cyclic
from monoidpcsp.model import make_finite_template, oracle_solve
from monoidpcsp.polymorph import (
    all_table_polymorphisms,
    is_satisfiable_in_pol,
    is_trivial,
    make_minor_condition,
    pmc_reduce,
    serialize_minor_condition,
)

T = make_finite_template(
    cyclic(2), 3,
    [t for t in product(range(2), repeat=3) if sum(t) % 2 == 1])

polys = all_table_polymorphisms(T, T, 2)
print("binary polymorphisms of (Z/2, odd-sum triples):")
for p in polys:
    print("  ", {k: v for k, v in sorted(p.table.items())})

symmetric = make_minor_condition(
    [("f", 2)], [("g", 2)],
    [("f", "g", (0, 1)), ("f", "g", (1, 0))])
trivial = make_minor_condition([("f", 2)], [("g", 1)], [("f", "g", (0, 0))])

for name, cond in [("symmetric", symmetric), ("collapsing", trivial)]:
    print(f"\n{name} condition:")
    print(serialize_minor_condition(cond).rstrip())
    print("  trivial:", is_trivial(cond))
    print("  satisfiable by polymorphisms:", is_satisfiable_in_pol(cond, T, T))
    I = pmc_reduce(cond, T, T, 2)
    print(f"  reduced instance: {I.var_count} variables,"
          f" {len(I.constraints)} constraints")
    print("  instance satisfiable:", oracle_solve(T, I) is not None)
