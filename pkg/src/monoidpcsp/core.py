"""Finite monoids as Cayley tables, Green's preorder, idempotent structure,
projections, and homomorphism enumeration.

Elements of a monoid of size n are the integers 0..n-1.  All operations are
pure; monoids and homomorphisms are immutable after construction.
"""

from dataclasses import dataclass
from itertools import combinations, product

from .errors import (
    MonoidError,
    NoIdentity,
    NotAssociative,
    NotCommutative,
    NotRegular,
    PowerTooLarge,
)


@dataclass(frozen=True)
class FiniteMonoid:
    """A finite monoid given by its multiplication table.

    ``table[a][b]`` is the product a*b.  Use :func:`validate_monoid` to
    construct one from untrusted data.
    """

    table: tuple
    identity: int

    @property
    def size(self):
        return len(self.table)

    @property
    def elements(self):
        return range(len(self.table))

    def mul(self, a, b):
        return self.table[a][b]

    def power(self, a, n):
        if n < 0:
            raise ValueError("negative power on a plain monoid element")
        acc = self.identity
        base = a
        while n:
            if n & 1:
                acc = self.table[acc][base]
            base = self.table[base][base]
            n >>= 1
        return acc

    def prod(self, elems):
        acc = self.identity
        for x in elems:
            acc = self.table[acc][x]
        return acc


def validate_monoid(table, identity):
    """Check associativity and the identity laws exhaustively and return a
    :class:`FiniteMonoid`.

    Raises :class:`NotAssociative` (with a witness triple) or
    :class:`NoIdentity` (with a witness element).
    """
    n = len(table)
    if n == 0:
        raise MonoidError("empty table")
    tab = tuple(tuple(row) for row in table)
    for row in tab:
        if len(row) != n:
            raise MonoidError("table is not square")
        for v in row:
            if not (0 <= v < n):
                raise MonoidError(f"table entry {v} out of range")
    if not (0 <= identity < n):
        raise MonoidError(f"identity index {identity} out of range")
    for a in range(n):
        if tab[identity][a] != a or tab[a][identity] != a:
            raise NoIdentity(a)
    for a in range(n):
        for b in range(n):
            ab = tab[a][b]
            row_b = tab[b]
            row_ab = tab[ab]
            for c in range(n):
                if row_ab[c] != tab[a][row_b[c]]:
                    raise NotAssociative((a, b, c))
    return FiniteMonoid(tab, identity)


@dataclass(frozen=True)
class MonoidHom:
    """A monoid homomorphism between two finite monoids, stored as the full
    image tuple ``images[a] = f(a)``."""

    source: FiniteMonoid
    target: FiniteMonoid
    images: tuple

    def __call__(self, a):
        return self.images[a]

    def image_set(self):
        return frozenset(self.images)

    def compose(self, other):
        """Return self o other (other applied first)."""
        return MonoidHom(other.source, self.target,
                         tuple(self.images[other.images[a]] for a in other.source.elements))


def make_hom(source, target, images, check=True):
    images = tuple(images)
    if check:
        if images[source.identity] != target.identity:
            raise MonoidError("map does not preserve the identity")
        for a in source.elements:
            for b in source.elements:
                if images[source.mul(a, b)] != target.mul(images[a], images[b]):
                    raise MonoidError(f"map does not preserve the product at ({a}, {b})")
    return MonoidHom(source, target, images)


def is_hom_map(source, target, images):
    if images[source.identity] != target.identity:
        return False
    return all(images[source.mul(a, b)] == target.mul(images[a], images[b])
               for a in source.elements for b in source.elements)


# ---------------------------------------------------------------------------
# Green's preorder and the idempotent structure


def green_leq(M, a, b):
    """a <= b in Green's preorder: some c1, c2 satisfy c1*b = b*c2 = a."""
    left = any(M.mul(c1, b) == a for c1 in M.elements)
    if not left:
        return False
    return any(M.mul(b, c2) == a for c2 in M.elements)


def green_classes(M):
    """Partition of the elements into classes of mutual green_leq, ordered by
    smallest member."""
    classes = []
    seen = [False] * M.size
    for a in M.elements:
        if seen[a]:
            continue
        cls = [a]
        seen[a] = True
        for b in range(a + 1, M.size):
            if not seen[b] and green_leq(M, a, b) and green_leq(M, b, a):
                cls.append(b)
                seen[b] = True
        classes.append(cls)
    return classes


def idempotents(M):
    return frozenset(a for a in M.elements if M.mul(a, a) == a)


def is_commutative(M):
    return all(M.mul(a, b) == M.mul(b, a) for a in M.elements for b in M.elements)


def is_semilattice(M):
    return is_commutative(M) and len(idempotents(M)) == M.size


def idempotent_constant(M):
    """Smallest C > 1 with a^C idempotent for every element a."""
    idem = idempotents(M)
    C = 2
    while True:
        if all(M.power(a, C) in idem for a in M.elements):
            return C
        C += 1
        if C > 4 ** M.size + 2:
            raise MonoidError("no idempotent constant found; table is not a monoid")


def d_of(M, a):
    """The unique idempotent power of a."""
    x = a
    while M.mul(x, x) != x:
        x = M.mul(x, a)
    return x


def is_regular_element(M, a):
    """True iff a lies in a subgroup, i.e. a ~ d for some idempotent d."""
    return any(green_leq(M, a, d) and green_leq(M, d, a) for d in idempotents(M))


def is_completely_regular(M):
    return all(is_regular_element(M, a) for a in M.elements)


def inverse(M, a):
    """Group inverse of a regular element inside its maximal subgroup."""
    if not is_regular_element(M, a):
        raise NotRegular(a)
    return M.power(a, idempotent_constant(M) - 1)


def pi_I(M):
    """The projection a -> d_a onto the idempotents, for commutative M."""
    if not is_commutative(M):
        raise NotCommutative("pi_I needs a commutative monoid")
    return make_hom(M, M, tuple(d_of(M, a) for a in M.elements))


def pi_dagger(M):
    """The retraction a -> a*d_a onto the regular part, for commutative M."""
    if not is_commutative(M):
        raise NotCommutative("pi_dagger needs a commutative monoid")
    return make_hom(M, M, tuple(M.mul(a, d_of(M, a)) for a in M.elements))


# ---------------------------------------------------------------------------
# Submonoids and powers


def generated_submonoid(M, members):
    """Closure of the given elements (plus the identity) under products."""
    closed = set(members)
    closed.add(M.identity)
    frontier = list(closed)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(closed):
                for c in (M.mul(a, b), M.mul(b, a)):
                    if c not in closed:
                        closed.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(closed)


def submonoid(M, members):
    """Reindex a product-closed subset containing the identity as a monoid.

    Returns (monoid, old_of_new, new_of_old).
    """
    elems = sorted(members)
    if M.identity not in members:
        raise MonoidError("subset does not contain the identity")
    new_of_old = {a: i for i, a in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            c = M.mul(a, b)
            if c not in new_of_old:
                raise MonoidError("subset is not closed under products")
            row.append(new_of_old[c])
        table.append(tuple(row))
    sub = FiniteMonoid(tuple(table), new_of_old[M.identity])
    return sub, elems, new_of_old


def minimal_generating_set(M):
    """Smallest generating set, searched by increasing size in index order."""
    for k in range(M.size + 1):
        for combo in combinations(M.elements, k):
            if len(generated_submonoid(M, combo)) == M.size:
                return list(combo)
    raise MonoidError("unreachable: the whole element set generates")


DEFAULT_POWER_CAP = 10_000


class CartesianPower:
    """Coordinatewise monoid structure on n-tuples over a finite monoid.

    The element set is only materialized on demand (`materialize`), subject
    to a cap; the arithmetic itself never builds the full table.
    """

    def __init__(self, M, n):
        if n < 1:
            raise ValueError("power must be at least 1")
        self.base = M
        self.n = n
        self.identity = (M.identity,) * n

    @property
    def elements(self):
        return product(self.base.elements, repeat=self.n)

    def mul(self, xs, ys):
        return tuple(self.base.mul(x, y) for x, y in zip(xs, ys))

    def power(self, xs, k):
        return tuple(self.base.power(x, k) for x in xs)

    def prod(self, elems):
        acc = self.identity
        for x in elems:
            acc = self.mul(acc, x)
        return acc

    def materialize(self, cap=DEFAULT_POWER_CAP):
        """Full Cayley table of the power, as (monoid, old_of_new, new_of_old)."""
        count = self.base.size ** self.n
        if count > cap:
            raise PowerTooLarge(f"{self.base.size}^{self.n} = {count} exceeds cap {cap}")
        elems = list(self.elements)
        index = {t: i for i, t in enumerate(elems)}
        table = tuple(tuple(index[self.mul(a, b)] for b in elems) for a in elems)
        return FiniteMonoid(table, index[self.identity]), elems, index


def direct_product(M, N):
    """Cayley table of M x N, elements ordered lexicographically."""
    elems = [(a, b) for a in M.elements for b in N.elements]
    index = {t: i for i, t in enumerate(elems)}
    table = tuple(
        tuple(index[(M.mul(a1, a2), N.mul(b1, b2))] for (a2, b2) in elems)
        for (a1, b1) in elems
    )
    return FiniteMonoid(table, index[(M.identity, N.identity)])


# ---------------------------------------------------------------------------
# Homomorphism enumeration


def _extend_generator_images(M, N, gens, gen_imgs):
    """Extend generator images to a full hom image tuple, or return None."""
    img = {M.identity: N.identity}
    for g, i in zip(gens, gen_imgs):
        if img.get(g, i) != i:
            return None
        img[g] = i
    changed = True
    while changed:
        changed = False
        known = list(img.items())
        for a, fa in known:
            for b, fb in known:
                c = M.mul(a, b)
                fc = N.mul(fa, fb)
                prev = img.get(c)
                if prev is None:
                    img[c] = fc
                    changed = True
                elif prev != fc:
                    return None
    if len(img) != M.size:
        return None
    images = tuple(img[a] for a in M.elements)
    if not is_hom_map(M, N, images):
        return None
    return images


def enumerate_homs(M, N):
    """All monoid homomorphisms M -> N, ordered lexicographically by their
    full image tuples."""
    gens = minimal_generating_set(M)
    found = set()
    for gen_imgs in product(N.elements, repeat=len(gens)):
        images = _extend_generator_images(M, N, gens, gen_imgs)
        if images is not None:
            found.add(images)
    return [MonoidHom(M, N, images) for images in sorted(found)]


# ---------------------------------------------------------------------------
# Built-in monoids and the text format


def cyclic(k):
    """The cyclic group Z/k under addition."""
    if k < 1:
        raise ValueError("cyclic group order must be positive")
    table = tuple(tuple((a + b) % k for b in range(k)) for a in range(k))
    return FiniteMonoid(table, 0)


def semilattice_chain(k):
    """Chain semilattice on 0..k-1 with product max (0 is the identity)."""
    if k < 1:
        raise ValueError("chain length must be positive")
    table = tuple(tuple(max(a, b) for b in range(k)) for a in range(k))
    return FiniteMonoid(table, 0)


def flipflop1():
    """The right-zero two-element semigroup with an identity adjoined; the
    smallest non-commutative monoid."""
    # elements: 0 = e, 1 = a, 2 = b with x*y = y for x, y in {a, b}
    table = ((0, 1, 2), (1, 1, 2), (2, 1, 2))
    return FiniteMonoid(table, 0)


def null_extension():
    """{e, a, 0} with a*a = 0 and 0 absorbing; a is not regular."""
    table = ((0, 1, 2), (1, 2, 2), (2, 2, 2))
    return FiniteMonoid(table, 0)


def monoid_from_keyword(word):
    if word == "flipflop1":
        return flipflop1()
    if word.startswith("cyclic:"):
        return cyclic(int(word.split(":")[1]))
    if word.startswith("semilattice:chain:"):
        return semilattice_chain(int(word.split(":")[2]))
    raise MonoidError(f"unknown monoid keyword {word!r}")


def format_monoid(M):
    lines = [f"monoid {M.size} {M.identity}"]
    for row in M.table:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"
