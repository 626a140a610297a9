"""Set products, coset closure, and the splitting constants L(M) and K(M).

Operations here are generic over any monoid-like object exposing
``elements``, ``identity``, ``mul`` and ``prod`` (both :class:`FiniteMonoid`
and :class:`CartesianPower` qualify), so the same code runs inside Cartesian
powers without materializing their tables.  Cosets are only meaningful in a
commutative ambient monoid.
"""

from dataclasses import dataclass

from .core import (
    CartesianPower,
    idempotent_constant,
    is_commutative,
    is_completely_regular,
    submonoid,
)
from .errors import MonoidError, NotCommutative, NotRegular


def _check_commutative(ops):
    base = ops.base if isinstance(ops, CartesianPower) else ops
    if not is_commutative(base):
        raise NotCommutative("coset operations need a commutative ambient monoid")


def elem_idempotent_power(ops, a):
    """The unique idempotent among the positive powers of a."""
    x = a
    while ops.mul(x, x) != x:
        x = ops.mul(x, a)
    return x


def elem_is_regular(ops, a):
    """True iff a lies in a subgroup; valid test in a commutative ambient."""
    x = ops.mul(a, a)
    while True:
        if x == a:
            return True
        if ops.mul(x, x) == x:
            # reached the idempotent; a is regular iff d*a == a
            return ops.mul(x, a) == a
        x = ops.mul(x, a)


def elem_inverse(ops, a):
    """Group inverse of a regular element (commutative ambient)."""
    if not elem_is_regular(ops, a):
        raise NotRegular(a)
    x = a
    prev = None
    while ops.mul(x, x) != x:
        prev = x
        x = ops.mul(x, a)
    return a if prev is None else prev


def setprod(ops, U, V):
    """The set product {s*t : s in U, t in V}."""
    return frozenset(ops.mul(s, t) for s in U for t in V)


def tensor_power(ops, U, n):
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    acc = frozenset(U)
    for _ in range(n - 1):
        acc = setprod(ops, acc, U)
    return acc


def inverse_set(ops, U):
    out = set()
    for a in U:
        if not elem_is_regular(ops, a):
            raise NotRegular(a)
        out.add(elem_inverse(ops, a))
    return frozenset(out)


def dagger_set(ops, U):
    """Elementwise a -> a * d_a."""
    return frozenset(ops.mul(a, elem_idempotent_power(ops, a)) for a in U)


def generated_subset(ops, U):
    """The submonoid generated by U, as a set."""
    closed = {ops.identity}
    closed.update(U)
    frontier = list(closed)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(closed):
                c = ops.mul(a, b)
                if c not in closed:
                    closed.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(closed)


@dataclass(frozen=True)
class CosetData:
    """A validated coset: members satisfy U x (U^-1 x U) = U."""

    ambient: object
    members: frozenset


def coset_closure(ops, U):
    """The coset [U] = U x <U^-1 x U> generated by a regular set U.

    The empty set is treated as a degenerate coset with [{}] = {}.
    """
    _check_commutative(ops)
    U = frozenset(U)
    if not U:
        return CosetData(ops, U)
    diffs = setprod(ops, inverse_set(ops, U), U)
    closure = setprod(ops, U, generated_subset(ops, diffs))
    if not _coset_equation_holds(ops, closure):
        raise MonoidError("internal: closure fails the coset equation")
    return CosetData(ops, closure)


def _coset_equation_holds(ops, U):
    if not U:
        return True
    diffs = setprod(ops, inverse_set(ops, U), U)
    return setprod(ops, U, diffs) == U


def is_coset(ops, U):
    _check_commutative(ops)
    U = frozenset(U)
    if not U:
        return True
    if not all(elem_is_regular(ops, a) for a in U):
        return False
    return _coset_equation_holds(ops, U)


def all_cosets(M):
    """Every coset of a small commutative monoid, by subset enumeration."""
    _check_commutative(M)
    out = []
    regular = [a for a in M.elements if elem_is_regular(M, a)]
    for mask in range(1 << len(regular)):
        U = frozenset(regular[i] for i in range(len(regular)) if mask >> i & 1)
        if _coset_equation_holds(M, U):
            out.append(U)
    return out


# ---------------------------------------------------------------------------
# Splitting constants


def _nonempty_subsets(M):
    elems = list(M.elements)
    for mask in range(1, 1 << len(elems)):
        yield frozenset(elems[i] for i in range(len(elems)) if mask >> i & 1)


def _stable_power_sequence(ops, U, length):
    """[U^x1, U^x2, ...] of the given length."""
    seq = [frozenset(U)]
    for _ in range(length - 1):
        seq.append(setprod(ops, seq[-1], U))
    return seq


def splitting_index(M):
    """Least n0 >= 1 such that [R]^xn = R^xn for every non-empty R and every
    n0 <= n <= n0 + |M|, with stabilization of |R^xn| confirmed.

    M must be a finite commutative completely regular monoid.
    """
    _check_commutative(M)
    if not is_completely_regular(M):
        raise NotRegular("splitting_index needs a completely regular monoid")
    window = M.size
    horizon = 4 * M.size * M.size + window + 8
    best = 1
    for R in _nonempty_subsets(M):
        C = coset_closure(M, R).members
        rpow = _stable_power_sequence(M, R, horizon + window)
        cpow = _stable_power_sequence(M, C, horizon + window)
        n_R = None
        for n in range(1, horizon + 1):
            in_window = range(n - 1, n + window)
            if all(rpow[m] == cpow[m] for m in in_window) and \
                    len(rpow[n - 1]) == len(rpow[n + window - 1]):
                n_R = n
                break
        if n_R is None:
            raise MonoidError("splitting index did not stabilize")
        best = max(best, n_R)
    return best


def dagger_splitting_bound(M):
    """The constant K = max(L, 2k|M|) with L the splitting index of the
    regular part and k the idempotent constant."""
    _check_commutative(M)
    dag = dagger_set(M, M.elements)
    Md, _, _ = submonoid(M, dag)
    L = splitting_index(Md)
    k = idempotent_constant(M)
    return max(L, 2 * k * M.size)


def verify_dagger_splitting(M, K, n_max):
    """Exhaustively check [R_dagger]^xn <= R^xn for all R and K <= n <= n_max."""
    _check_commutative(M)
    for R in _nonempty_subsets(M):
        closed = coset_closure(M, dagger_set(M, R)).members
        cpow = frozenset(closed) if closed else frozenset()
        rpow = frozenset(R)
        for n in range(2, n_max + 1):
            cpow = setprod(M, cpow, closed) if closed else cpow
            rpow = setprod(M, rpow, R)
            if n >= K and not (cpow <= rpow):
                return False
        if K <= 1 and not (closed <= frozenset(R)):
            return False
    return True
