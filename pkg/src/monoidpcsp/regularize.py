"""Commutative regularization of finite monoids, and the
semilattice-with-integer-coordinates normal form for finitely generated
commutative regular monoids.
"""

from dataclasses import dataclass
from itertools import product

from .core import (
    FiniteMonoid,
    MonoidHom,
    enumerate_homs,
    generated_submonoid,
    green_leq,
    idempotent_constant,
    idempotents,
    inverse,
    is_commutative,
    is_completely_regular,
    is_hom_map,
    is_semilattice,
    make_hom,
    submonoid,
    d_of,
)
from .errors import (
    MonoidError,
    NotCommutative,
    NotGenerating,
    NotRegular,
    TargetNotRegularCommutative,
)
from .zlinalg import Lattice, lattice_from_generators, lattice_member, reduce_mod_lattice


# ---------------------------------------------------------------------------
# Congruence quotients


@dataclass(frozen=True)
class CongruenceQuotient:
    source: FiniteMonoid
    class_of: tuple
    quotient: FiniteMonoid
    projection: MonoidHom


def _quotient_from_roots(M, root_of):
    """Build a quotient monoid from a product-compatible equivalence,
    given as a map element -> canonical representative."""
    reps = []
    index = {}
    for a in M.elements:
        r = root_of[a]
        if r not in index:
            index[r] = len(reps)
            reps.append(r)
    class_of = tuple(index[root_of[a]] for a in M.elements)
    table = []
    for r in reps:
        row = []
        for s in reps:
            row.append(class_of[M.mul(r, s)])
        table.append(tuple(row))
    quotient = FiniteMonoid(tuple(table), class_of[M.identity])
    # product-compatibility check: the table must not depend on representatives
    for a in M.elements:
        for b in M.elements:
            if class_of[M.mul(a, b)] != quotient.mul(class_of[a], class_of[b]):
                raise MonoidError("relation is not a congruence")
    projection = make_hom(M, quotient, class_of)
    return CongruenceQuotient(M, class_of, quotient, projection)


def congruence_closure(M, pairs):
    """Smallest monoid congruence containing the given pairs, via union-find
    with product propagation to a fixpoint.  Returns a root map."""
    parent = list(M.elements)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    for a, b in pairs:
        union(a, b)
    changed = True
    while changed:
        changed = False
        for a in M.elements:
            for b in range(a + 1, M.size):
                if find(a) == find(b):
                    for c in M.elements:
                        if union(M.mul(a, c), M.mul(b, c)):
                            changed = True
                        if union(M.mul(c, a), M.mul(c, b)):
                            changed = True
    return [find(a) for a in M.elements]


def abelianization(M):
    """Quotient by the smallest congruence identifying ab with ba."""
    pairs = [(M.mul(a, b), M.mul(b, a)) for a in M.elements for b in M.elements
             if M.mul(a, b) != M.mul(b, a)]
    return _quotient_from_roots(M, congruence_closure(M, pairs))


def regular_retract(M):
    """Quotient of a commutative monoid by a ~ a*d_a; image is the regular
    part, projection is the dagger retraction."""
    if not is_commutative(M):
        raise NotCommutative("regular_retract needs a commutative monoid")
    root_of = [M.mul(a, d_of(M, a)) for a in M.elements]
    return _quotient_from_roots(M, root_of)


def ab_reg(M):
    """The commutative regularization, computed as the regular retract of the
    abelianization."""
    q1 = abelianization(M)
    q2 = regular_retract(q1.quotient)
    class_of = tuple(q2.class_of[q1.class_of[a]] for a in M.elements)
    projection = q2.projection.compose(q1.projection)
    return CongruenceQuotient(M, class_of, q2.quotient, projection)


def verify_universal_property(q, targets):
    """True iff every hom from q.source into each commutative completely
    regular target factors (necessarily uniquely) through q.projection."""
    for T in targets:
        if not (is_commutative(T) and is_completely_regular(T)):
            raise TargetNotRegularCommutative(
                "universal-property targets must be commutative and regular")
        for f in enumerate_homs(q.source, T):
            lifted = [None] * q.quotient.size
            ok = True
            for a in q.source.elements:
                c = q.class_of[a]
                if lifted[c] is None:
                    lifted[c] = f(a)
                elif lifted[c] != f(a):
                    ok = False
                    break
            if not ok or not is_hom_map(q.quotient, T, tuple(lifted)):
                return False
    return True


# ---------------------------------------------------------------------------
# Normal form for finitely generated commutative regular monoids


@dataclass(frozen=True)
class NormalFormMonoid:
    """A finitely generated commutative regular monoid presented by a finite
    semilattice, coordinate supports, and relation lattices.

    Elements are pairs [d, v] with d a semilattice index and v an integer
    vector over the coordinates, supported on lam[d] and canonical modulo
    xi[d].
    """

    semilattice: FiniteMonoid
    num_coords: int
    lam: tuple        # per semilattice element: frozenset of coordinate indices
    xi: tuple         # per semilattice element: Lattice over Z^num_coords
    anchors: tuple    # per coordinate: the designated idempotent d(alpha)

    @property
    def identity(self):
        return NFElement(self, self.semilattice.identity, (0,) * self.num_coords)


def semilattice_leq(N, a, b):
    """a <= b in the semilattice order (a absorbs b)."""
    return N.mul(a, b) == a


def make_normal_form(semilattice, num_coords, lam, xi, anchors):
    if not is_semilattice(semilattice):
        raise MonoidError("carrier of a normal form must be a semilattice")
    N = semilattice
    lam = tuple(frozenset(s) for s in lam)
    xi = tuple(xi)
    anchors = tuple(anchors)
    if len(lam) != N.size or len(xi) != N.size or len(anchors) != num_coords:
        raise MonoidError("normal form component sizes do not match")
    for a in N.elements:
        for b in N.elements:
            if semilattice_leq(N, a, b) and not (lam[b] <= lam[a]):
                raise MonoidError("coordinate supports are not monotone")
    for d in N.elements:
        L = xi[d]
        if L.ambient_dim != num_coords:
            raise MonoidError("relation lattice has wrong dimension")
        for row in L.basis:
            if any(row[j] != 0 for j in range(num_coords) if j not in lam[d]):
                raise MonoidError("relation lattice not supported on lam(d)")
    for a in N.elements:
        for b in N.elements:
            if semilattice_leq(N, a, b):
                for row in xi[b].basis:
                    if not lattice_member(list(row), xi[a]):
                        raise MonoidError("relation lattices are not monotone")
    for alpha, d in enumerate(anchors):
        if alpha not in lam[d]:
            raise MonoidError(f"anchor of coordinate {alpha} does not support it")
    return NormalFormMonoid(N, num_coords, lam, xi, anchors)


@dataclass(frozen=True)
class NFElement:
    nf: NormalFormMonoid
    d: int
    v: tuple

    def __post_init__(self):
        if len(self.v) != self.nf.num_coords:
            raise MonoidError("vector has wrong length")


def nf_element(NF, d, v):
    """Construct the canonical element [d, v]."""
    v = list(v)
    for j in range(NF.num_coords):
        if j not in NF.lam[d] and v[j] != 0:
            raise MonoidError("vector is not supported on lam(d)")
    return NFElement(NF, d, tuple(reduce_mod_lattice(v, NF.xi[d])))


def nf_identity(NF):
    return NF.identity


def nf_mul(NF, x, y):
    d = NF.semilattice.mul(x.d, y.d)
    return nf_element(NF, d, [a + b for a, b in zip(x.v, y.v)])


def nf_eq(x, y):
    return x.d == y.d and x.v == y.v


def nf_power(NF, x, n):
    """x^n for any integer n; negative powers use the group inverse."""
    if n == 0:
        return NF.identity
    return nf_element(NF, x.d, [n * a for a in x.v])


def nf_inverse(NF, x):
    """Group inverse of [d, v] inside its class group: [d, -v]."""
    return nf_element(NF, x.d, [-a for a in x.v])


def nf_generator(NF, alpha):
    """The element corresponding to coordinate alpha: [d(alpha), e_alpha]."""
    v = [0] * NF.num_coords
    v[alpha] = 1
    return nf_element(NF, NF.anchors[alpha], v)


def nf_semilattice_element(NF, d):
    return nf_element(NF, d, [0] * NF.num_coords)


def integers_nf():
    """The monoid of integers under addition as a normal form: trivial
    semilattice, one coordinate, zero relation lattice."""
    trivial = FiniteMonoid(((0,),), 0)
    return make_normal_form(trivial, 1, [frozenset({0})],
                            [Lattice(1, ())], [0])


# ---------------------------------------------------------------------------
# Finite -> normal form conversion


@dataclass(frozen=True)
class NFIsomorphism:
    """Isomorphism data between a finite commutative regular monoid and its
    normal form: encode/decode round-trip maps."""

    monoid: FiniteMonoid
    nf: NormalFormMonoid
    generators: tuple            # coordinate alpha -> generator element of M
    idem_of_new: tuple           # semilattice index -> idempotent element of M
    new_of_idem: dict
    _encode_table: tuple

    def encode(self, a):
        return self._encode_table[a]

    def decode(self, x):
        M = self.monoid
        acc = self.idem_of_new[x.d]
        for alpha, gen in enumerate(self.generators):
            n = x.v[alpha]
            if n > 0:
                acc = M.mul(acc, M.power(gen, n))
            elif n < 0:
                acc = M.mul(acc, M.power(inverse(M, gen), -n))
        return acc


def _element_order_in_group(M, g, unit):
    n = 1
    x = g
    while x != unit:
        x = M.mul(x, g)
        n += 1
        if n > M.size + 1:
            raise MonoidError("element has no order over the given unit")
    return n


def to_normal_form(M, generators):
    """Present a finite commutative regular monoid over the given generating
    set.  Returns an :class:`NFIsomorphism` (which carries the normal form)."""
    if not is_commutative(M):
        raise NotCommutative("normal form needs a commutative monoid")
    if not is_completely_regular(M):
        raise NotRegular("normal form needs a completely regular monoid")
    gens = sorted(set(generators))
    if len(generated_submonoid(M, gens)) != M.size:
        raise NotGenerating("the given set does not generate the monoid")
    q = len(gens)
    idem = idempotents(M)
    N, idem_of_new, new_of_idem = submonoid(M, idem)
    lam = []
    for d_new in N.elements:
        od = idem_of_new[d_new]
        lam.append(frozenset(alpha for alpha, g in enumerate(gens)
                             if green_leq(M, od, g)))
    # per-idempotent evaluation boxes: exponent vectors modulo element orders
    xi = []
    encode_of = {}
    for d_new in N.elements:
        od = idem_of_new[d_new]
        supp = sorted(lam[d_new])
        gs = [M.mul(od, gens[alpha]) for alpha in supp]
        orders = [_element_order_in_group(M, g, od) for g in gs]
        kernel_gens = []
        for i, m in enumerate(orders):
            vec = [0] * q
            vec[supp[i]] = m
            kernel_gens.append(vec)
        for expo in product(*(range(m) for m in orders)):
            val = od
            for g, n in zip(gs, expo):
                val = M.mul(val, M.power(g, n))
            vec = [0] * q
            for i, n in enumerate(expo):
                vec[supp[i]] = n
            if val == od and any(expo):
                kernel_gens.append(vec)
            encode_of.setdefault(val, (d_new, vec))
        xi.append(lattice_from_generators(q, kernel_gens))
    anchors = []
    for alpha, g in enumerate(gens):
        anchors.append(new_of_idem[d_of(M, g)])
    NF = make_normal_form(N, q, lam, xi, anchors)
    encode_table = []
    for a in M.elements:
        d_new, vec = encode_of[a]
        encode_table.append(nf_element(NF, d_new, vec))
    return NFIsomorphism(M, NF, tuple(gens), tuple(idem_of_new), new_of_idem,
                         tuple(encode_table))


# ---------------------------------------------------------------------------
# Homomorphisms from a normal form into a finite monoid


@dataclass(frozen=True)
class NFHom:
    """Homomorphism from a normal-form monoid into a finite monoid, given by
    images of the semilattice elements and of the coordinate generators."""

    source: NormalFormMonoid
    target: FiniteMonoid
    phi_images: tuple   # per semilattice element
    gen_images: tuple   # per coordinate

    def __call__(self, x):
        F = self.target
        acc = self.phi_images[x.d]
        for alpha, g in enumerate(self.gen_images):
            n = x.v[alpha]
            if n > 0:
                acc = F.mul(acc, F.power(g, n))
            elif n < 0:
                acc = F.mul(acc, F.power(inverse(F, g), -n))
        return acc

    @property
    def sort_key(self):
        return (self.phi_images, self.gen_images)


def nf_homs_to_finite(NF, F):
    """All monoid homomorphisms from NF into the finite monoid F, in
    deterministic (lexicographic) order.

    A hom is determined by a semilattice map phi into commuting idempotents
    of F and regular generator images g_alpha with d_{g_alpha} =
    phi(anchor(alpha)), subject to the relation-lattice identities.
    """
    N = NF.semilattice
    idem_F = idempotents(F)
    regular_F = [a for a in F.elements
                 if any(green_leq(F, a, d) and green_leq(F, d, a) for d in idem_F)]
    C = idempotent_constant(F)
    out = []
    for phi in enumerate_homs(N, F):
        if not all(phi(d) in idem_F for d in N.elements):
            continue
        phis = [phi(d) for d in N.elements]
        if not _pairwise_commute(F, phis, phis):
            continue
        candidates = []
        for alpha in range(NF.num_coords):
            want = phis[NF.anchors[alpha]]
            cand = [g for g in regular_F if F.power(g, C) == want]
            candidates.append(cand)
        for gen_imgs in product(*candidates):
            if not _pairwise_commute(F, gen_imgs, gen_imgs):
                continue
            if not _pairwise_commute(F, gen_imgs, phis):
                continue
            if _relators_hold(NF, F, phis, gen_imgs):
                out.append(NFHom(NF, F, tuple(phis), tuple(gen_imgs)))
    out.sort(key=lambda h: h.sort_key)
    return out


def _pairwise_commute(F, xs, ys):
    return all(F.mul(x, y) == F.mul(y, x) for x in xs for y in ys)


def _relators_hold(NF, F, phis, gen_imgs):
    for d in NF.semilattice.elements:
        for row in NF.xi[d].basis:
            acc = phis[d]
            for alpha, n in enumerate(row):
                if n > 0:
                    acc = F.mul(acc, F.power(gen_imgs[alpha], n))
                elif n < 0:
                    acc = F.mul(acc, F.power(inverse(F, gen_imgs[alpha]), -n))
            if acc != phis[d]:
                return False
    return True
