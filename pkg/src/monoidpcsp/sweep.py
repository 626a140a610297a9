"""Built-in monoid corpora for exhaustive property checks: every monoid up
to size 4 (identity fixed as element 0), plus a curated list at sizes 5 and
6 where exhaustive enumeration is out of reach.
"""

from functools import lru_cache
from itertools import permutations, product

from .core import (
    FiniteMonoid,
    cyclic,
    direct_product,
    flipflop1,
    is_commutative,
    is_completely_regular,
    null_extension,
    semilattice_chain,
)


@lru_cache(maxsize=None)
def all_monoid_tables(n):
    """Every monoid structure on {0, ..., n-1} with identity 0."""
    if n == 1:
        return (FiniteMonoid(((0,),), 0),)
    free = [(a, b) for a in range(1, n) for b in range(1, n)]
    out = []
    for vals in product(range(n), repeat=len(free)):
        T = [[0] * n for _ in range(n)]
        for j in range(n):
            T[0][j] = j
            T[j][0] = j
        for (a, b), v in zip(free, vals):
            T[a][b] = v
        ok = True
        for a in range(1, n):
            row = T[a]
            for b in range(1, n):
                ab = row[b]
                Tb = T[b]
                for c in range(1, n):
                    if T[ab][c] != row[Tb[c]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(FiniteMonoid(tuple(tuple(r) for r in T), 0))
    return tuple(out)


def canonical_table(M):
    """Least relabelled table among permutations fixing the identity, for
    de-duplication up to isomorphism."""
    n = M.size
    others = [a for a in M.elements if a != M.identity]
    best = None
    for perm in permutations(range(1, n)):
        relabel = [0] * n
        relabel[M.identity] = 0
        for new, old in zip(range(1, n), (others[i - 1] for i in perm)):
            relabel[old] = new
        inv = [0] * n
        for old, new in enumerate(relabel):
            inv[new] = old
        T = tuple(tuple(relabel[M.mul(inv[a], inv[b])] for b in range(n))
                  for a in range(n))
        if best is None or T < best:
            best = T
    return best


def dedupe_isomorphic(monoids):
    seen = set()
    out = []
    for M in monoids:
        key = canonical_table(M)
        if key not in seen:
            seen.add(key)
            out.append(M)
    return out


def _symmetric_group_3():
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(3))] for q in perms)
        for p in perms)
    return FiniteMonoid(table, index[(0, 1, 2)])


def _monogenic(index, period):
    """The monoid generated by one element a with a^(index+period) equal to
    a^index; size index + period."""
    n = index + period
    def norm(k):
        return k if k < n else index + (k - index) % period
    table = tuple(tuple(norm(a + b) for b in range(n)) for a in range(n))
    return FiniteMonoid(table, 0)


@lru_cache(maxsize=None)
def curated_monoids(n):
    """Hand-picked monoids at sizes beyond exhaustive reach."""
    if n <= 4:
        return ()
    out = [cyclic(n), semilattice_chain(n)]
    for period in range(1, n):
        out.append(_monogenic(n - period, period))
    if n == 6:
        out.extend([
            direct_product(cyclic(2), cyclic(3)),
            direct_product(cyclic(2), semilattice_chain(3)),
            direct_product(cyclic(3), semilattice_chain(2)),
            direct_product(semilattice_chain(2), semilattice_chain(3)),
            direct_product(cyclic(2), null_extension()),
            direct_product(semilattice_chain(2), flipflop1()),
            _symmetric_group_3(),
        ])
    return tuple(dedupe_isomorphic(out))


def monoid_sweep(max_size, unique=False):
    """All sweep monoids with size at most max_size.  With unique=True the
    list is reduced up to isomorphism."""
    out = []
    for n in range(1, max_size + 1):
        out.extend(all_monoid_tables(n) if n <= 4 else curated_monoids(n))
    return dedupe_isomorphic(out) if unique else out


def commutative_sweep(max_size, unique=False):
    return [M for M in monoid_sweep(max_size, unique) if is_commutative(M)]


def commutative_regular_sweep(max_size, unique=False):
    return [M for M in monoid_sweep(max_size, unique)
            if is_commutative(M) and is_completely_regular(M)]
