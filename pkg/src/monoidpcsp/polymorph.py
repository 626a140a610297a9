"""Polymorphism machinery: componentwise polymorphisms and their minors,
2-block symmetric polymorphisms, constant/selection sets, minor conditions,
and the reduction from promise minor conditions to instances.
"""

from dataclasses import dataclass
from itertools import product

from .core import (
    CartesianPower,
    enumerate_homs,
    is_commutative,
    is_completely_regular,
    make_hom,
    minimal_generating_set,
    submonoid,
)
from .cosets import elem_inverse, setprod
from .errors import (
    ArityMismatch,
    MonoidError,
    NonCommutingImages,
    ParseError,
    SearchCapExceeded,
    TooLarge,
    ValidationError,
    WitnessInvalid,
)
from .model import (
    Identity,
    Product,
    Relation,
    is_nf_template,
    make_instance,
)
from .classify import nf_relation_image
from .regularize import NFHom


# ---------------------------------------------------------------------------
# Componentwise polymorphisms


@dataclass(frozen=True)
class HomPolymorphism:
    """The map (x_1, ..., x_n) -> f_1(x_1) * ... * f_n(x_n) given by component
    homomorphisms with pairwise commuting images."""

    components: tuple

    @property
    def arity(self):
        return len(self.components)

    @property
    def target(self):
        return self.components[0].target

    def __call__(self, args):
        F = self.target
        acc = F.identity
        for f, x in zip(self.components, args):
            acc = F.mul(acc, f(x))
        return acc


def _hom_generating_images(h):
    """A finite set whose generated submonoid is the image of h."""
    if isinstance(h, NFHom):
        gens = set(h.phi_images)
        for g in h.gen_images:
            gens.add(g)
            gens.add(elem_inverse(h.target, g))
        return gens
    return set(h.images)


def _images_commute(F, h1, h2):
    for a in _hom_generating_images(h1):
        for b in _hom_generating_images(h2):
            if F.mul(a, b) != F.mul(b, a):
                return False
    return True


def make_hom_polymorphism(components, check=True):
    components = tuple(components)
    if not components:
        raise ValidationError("a polymorphism needs at least one component")
    F = components[0].target
    if check:
        for i, h1 in enumerate(components):
            for h2 in components[i:]:
                if not _images_commute(F, h1, h2):
                    raise NonCommutingImages(
                        "component images do not commute pairwise")
    return HomPolymorphism(components)


def _constant_hom(like):
    """The hom mapping everything to the target identity, of the same kind as
    the given component."""
    F = like.target
    if isinstance(like, NFHom):
        NF = like.source
        return NFHom(NF, F, (F.identity,) * NF.semilattice.size,
                     (F.identity,) * NF.num_coords)
    return make_hom(like.source, F, (F.identity,) * like.source.size)


def _hom_pointwise_product(h1, h2):
    F = h1.target
    if isinstance(h1, NFHom):
        return NFHom(h1.source, F,
                     tuple(F.mul(a, b) for a, b in zip(h1.phi_images, h2.phi_images)),
                     tuple(F.mul(a, b) for a, b in zip(h1.gen_images, h2.gen_images)))
    return make_hom(h1.source, F,
                    tuple(F.mul(a, b) for a, b in zip(h1.images, h2.images)))


def _hom_key(h):
    return h.sort_key if isinstance(h, NFHom) else h.images


def minor(f, sigma, m=None):
    """The minor f^sigma for sigma: [n] -> [m], given as a length-n tuple of
    indices below m.  Component i of the minor is the product of the f_j with
    sigma(j) = i."""
    n = f.arity
    if len(sigma) != n:
        raise ArityMismatch("sigma must assign every coordinate")
    if m is None:
        m = max(sigma) + 1
    if any(not 0 <= s < m for s in sigma):
        raise ValidationError("sigma image out of range")
    out = []
    for i in range(m):
        acc = None
        for j in range(n):
            if sigma[j] == i:
                acc = f.components[j] if acc is None else \
                    _hom_pointwise_product(acc, f.components[j])
        out.append(acc if acc is not None else _constant_hom(f.components[0]))
    return make_hom_polymorphism(out)


def unary_minor(f):
    return minor(f, (0,) * f.arity, 1)


# ---------------------------------------------------------------------------
# Polymorphism checking


@dataclass(frozen=True)
class TableMap:
    """An explicit finite map M^arity -> N, for brute-force polymorphism
    work at small sizes."""

    arity: int
    source: object
    target: object
    table: dict

    def __call__(self, args):
        return self.table[tuple(args)]


def table_of(f, M):
    """Materialize a HomPolymorphism over a finite source as a TableMap."""
    table = {args: f(args) for args in product(M.elements, repeat=f.arity)}
    return TableMap(f.arity, M, f.target, table)


def _component_relation_images(f, relM):
    if is_nf_template(relM):
        return [nf_relation_image(h, relM) for h in f.components]
    return [frozenset(tuple(h(a) for a in t) for t in relM.relation)
            for h in f.components]


def is_polymorphism(f, relM, relN, cap=200_000):
    """True iff f is a polymorphism of the template pair: a homomorphism of
    the carrier power that maps n-fold relation combinations into relN's
    relation."""
    if relM.arity != relN.arity:
        raise ArityMismatch("template arities differ")
    N = relN.carrier
    r = relN.arity
    if isinstance(f, HomPolymorphism):
        images = _component_relation_images(f, relM)
        P = CartesianPower(N, r)
        acc = images[0]
        for S in images[1:]:
            acc = setprod(P, acc, S)
        return acc <= relN.relation
    # explicit table over a finite source
    M = f.source
    n = f.arity
    if M.size ** (2 * n) > cap or (len(relM.relation) or 1) ** n > cap:
        raise TooLarge("table polymorphism check exceeds the cap")
    for a in product(M.elements, repeat=n):
        for b in product(M.elements, repeat=n):
            ab = tuple(M.mul(x, y) for x, y in zip(a, b))
            if f(ab) != N.mul(f(a), f(b)):
                return False
    if f((M.identity,) * n) != N.identity:
        return False
    for rows in product(relM.relation, repeat=n):
        image = tuple(f(tuple(row[j] for row in rows)) for j in range(r))
        if image not in relN.relation:
            return False
    return True


# ---------------------------------------------------------------------------
# 2-block symmetric polymorphisms


def _pointwise_inverse_hom(h):
    F = h.target
    if isinstance(h, NFHom):
        return NFHom(h.source, F, h.phi_images,
                     tuple(elem_inverse(F, g) for g in h.gen_images))
    try:
        images = tuple(elem_inverse(F, h(a)) for a in h.source.elements)
        return make_hom(h.source, F, images)
    except MonoidError as e:
        raise WitnessInvalid(f"witness inverse is not a homomorphism: {e}") from e


def block_symmetric_from_witness(h, i):
    """Arity-(2i+1) polymorphism with i+1 components h and i components the
    pointwise inverse of h.  Needs a witness with commutative completely
    regular image."""
    if i < 0:
        raise ValidationError("block parameter must be non-negative")
    if not isinstance(h, NFHom):
        A, _, _ = submonoid(h.target, h.image_set())
        if not (is_commutative(A) and is_completely_regular(A)):
            raise WitnessInvalid("witness image is not commutative regular")
    if i == 0:
        return make_hom_polymorphism([h])
    h_inv = _pointwise_inverse_hom(h)
    return make_hom_polymorphism([h] * (i + 1) + [h_inv] * i)


def find_block_symmetric(relM, relN, i, cap=4096):
    """Search for an arity-(2i+1) polymorphism with components constant on
    the two blocks; returns the first hit in lexicographic order or None."""
    if is_nf_template(relM):
        from .regularize import nf_homs_to_finite
        homs = nf_homs_to_finite(relM.carrier, relN.carrier)
    else:
        homs = enumerate_homs(relM.carrier, relN.carrier)
    if len(homs) ** 2 > cap:
        raise SearchCapExceeded("too many homomorphism pairs")
    F = relN.carrier
    for g1 in homs:
        for g2 in homs:
            if not _images_commute(F, g1, g2):
                continue
            f = HomPolymorphism(tuple([g1] * (i + 1) + [g2] * i))
            if is_polymorphism(f, relM, relN):
                return f
    return None


def constant_sets(f):
    """Maximal sets of coordinates with equal components, as a partition."""
    groups = {}
    for j, h in enumerate(f.components):
        groups.setdefault(_hom_key(h), []).append(j)
    return sorted(groups.values())


def selection_set(f, K):
    """Coordinates lying in a maximal constant set of size below K."""
    out = []
    for block in constant_sets(f):
        if len(block) < K:
            out.extend(block)
    return sorted(out)


# ---------------------------------------------------------------------------
# Minor conditions


@dataclass(frozen=True)
class MinorCondition:
    """Symbols with arities on two sides, and edges (u, v, phi) asserting
    that the v-function is the phi-minor of the u-function, with
    phi: [ar(u)] -> [ar(v)] as an image tuple."""

    u_symbols: tuple   # (name, arity) pairs
    v_symbols: tuple
    edges: tuple       # (u_name, v_name, phi)


def make_minor_condition(u_symbols, v_symbols, edges):
    arity = dict(u_symbols)
    arity.update(dict(v_symbols))
    if len(arity) != len(u_symbols) + len(v_symbols):
        raise ValidationError("symbol names must be unique")
    for name, k in arity.items():
        if k < 1:
            raise ValidationError(f"symbol {name} needs positive arity")
    for u, v, phi in edges:
        if u not in dict(u_symbols) or v not in dict(v_symbols):
            raise ValidationError(f"edge ({u}, {v}) references unknown symbols")
        if len(phi) != arity[u]:
            raise ValidationError(f"edge map for ({u}, {v}) has wrong length")
        if any(not 0 <= x < arity[v] for x in phi):
            raise ValidationError(f"edge map for ({u}, {v}) is out of range")
    return MinorCondition(tuple(u_symbols), tuple(v_symbols),
                          tuple((u, v, tuple(phi)) for u, v, phi in edges))


def all_symbols(cond):
    return list(cond.u_symbols) + list(cond.v_symbols)


def is_trivial(cond):
    """True iff coordinates i_x can be chosen for every symbol so that every
    edge map sends i_u to i_v."""
    arity = dict(all_symbols(cond))
    names = sorted(arity)
    domains = {x: set(range(arity[x])) for x in names}

    changed = True
    while changed:
        changed = False
        for u, v, phi in cond.edges:
            keep_u = {i for i in domains[u] if phi[i] in domains[v]}
            keep_v = {phi[i] for i in keep_u}
            if keep_u != domains[u]:
                domains[u] = keep_u
                changed = True
            if not domains[v] <= keep_v:
                domains[v] &= keep_v
                changed = True
        if any(not d for d in domains.values()):
            return False

    def search(pos, chosen):
        if pos == len(names):
            return True
        x = names[pos]
        for i in sorted(domains[x]):
            ok = True
            for u, v, phi in cond.edges:
                if u == x and v in chosen and phi[i] != chosen[v]:
                    ok = False
                elif v == x and u in chosen and phi[chosen[u]] != i:
                    ok = False
                if not ok:
                    break
            if ok:
                chosen[x] = i
                if search(pos + 1, chosen):
                    return True
                del chosen[x]
        return False

    return search(0, {})


def _table_minor(f, phi, m, M):
    table = {}
    for args in product(M.elements, repeat=m):
        table[args] = f(tuple(args[phi[j]] for j in range(f.arity)))
    return TableMap(m, M, f.target, table)


def all_table_polymorphisms(relM, relN, arity, cap=200_000):
    """Every polymorphism M^arity -> N as an explicit table, by brute force."""
    M, N = relM.carrier, relN.carrier
    keys = list(product(M.elements, repeat=arity))
    if N.size ** len(keys) > cap:
        raise TooLarge("polymorphism enumeration exceeds the cap")
    out = []
    for values in product(N.elements, repeat=len(keys)):
        f = TableMap(arity, M, N, dict(zip(keys, values)))
        if is_polymorphism(f, relM, relN, cap=cap):
            out.append(f)
    return out


def is_satisfiable_in_pol(cond, relM, relN, cap=200_000):
    """Exhaustive search for polymorphisms assigned to the symbols so that
    every edge identity holds as a table equality."""
    if is_nf_template(relM):
        raise ValidationError("satisfiability search needs a finite source")
    M = relM.carrier
    arity = dict(all_symbols(cond))
    by_arity = {}
    for k in set(arity.values()):
        by_arity[k] = all_table_polymorphisms(relM, relN, k, cap=cap)
    names = sorted(arity)
    total = 1
    for x in names:
        total *= max(len(by_arity[arity[x]]), 1)
        if total > cap:
            raise TooLarge("assignment search exceeds the cap")

    def edge_holds(fu, fv, phi):
        g = _table_minor(fu, phi, fv.arity, M)
        return g.table == fv.table

    def search(pos, chosen):
        if pos == len(names):
            return True
        x = names[pos]
        for f in by_arity[arity[x]]:
            chosen[x] = f
            ok = True
            for u, v, phi in cond.edges:
                if u in chosen and v in chosen:
                    if not edge_holds(chosen[u], chosen[v], phi):
                        ok = False
                        break
            if ok and search(pos + 1, chosen):
                return True
            del chosen[x]
        return False

    return search(0, {})


def parse_minor_condition(text):
    u_symbols, v_symbols, edges = [], [], []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "sym":
            if len(toks) != 4 or toks[3] not in ("U", "V"):
                raise ParseError(no, "sym line needs a name, arity, and side")
            entry = (toks[1], int(toks[2]))
            (u_symbols if toks[3] == "U" else v_symbols).append(entry)
        elif toks[0] == "edge":
            if len(toks) < 4:
                raise ParseError(no, "edge line needs two symbols and a map")
            edges.append((toks[1], toks[2], tuple(int(t) for t in toks[3:])))
        else:
            raise ParseError(no, f"unknown line {toks[0]!r}")
    return make_minor_condition(u_symbols, v_symbols, edges)


def serialize_minor_condition(cond):
    lines = []
    for name, k in cond.u_symbols:
        lines.append(f"sym {name} {k} U")
    for name, k in cond.v_symbols:
        lines.append(f"sym {name} {k} V")
    for u, v, phi in cond.edges:
        lines.append(f"edge {u} {v} " + " ".join(str(i) for i in phi))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# The reduction from promise minor conditions to instances


def _unit_insertion_generators(M, N_arity, gens):
    """Generating set of M^N closed under coordinate re-mapping: tuples that
    are a fixed generator on a subset of coordinates and identity elsewhere."""
    out = {(M.identity,) * N_arity}
    for g in gens:
        for mask in range(1, 1 << N_arity):
            out.add(tuple(g if mask >> i & 1 else M.identity
                          for i in range(N_arity)))
    return sorted(out)


def _word_table(P, U):
    """Breadth-first canonical words over U for every element of the power P.
    Returns (element -> word), words as tuples of U-indices."""
    words = {P.identity: ()}
    frontier = [P.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for k, u in enumerate(U):
                b = P.mul(a, u)
                if b not in words:
                    words[b] = words[a] + (k,)
                    nxt.append(b)
        frontier = nxt
    return words


def _try_extend(P, F, U, f_values):
    """Extend f: U -> F to a hom on the power P.

    Returns ("hom", val_dict) or ("conflict", (word_s, word_t))."""
    val = {P.identity: F.identity}
    word = {P.identity: ()}
    # the generating set contains the identity tuple; its value must agree
    frontier = [P.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for k, u in enumerate(U):
                b = P.mul(a, u)
                v = F.mul(val[a], f_values[k])
                w = word[a] + (k,)
                if b not in val:
                    val[b] = v
                    word[b] = w
                    nxt.append(b)
                elif val[b] != v:
                    return "conflict", (w, word[b])
        frontier = nxt
    return "hom", val


def pmc_reduce(cond, relM, relN, N_arity, cap=200_000):
    """Translate a minor condition into an instance over the template
    signature.

    If the condition is trivial, the instance is satisfiable over relM; if
    the instance is satisfiable over relN, the condition is satisfiable in
    the polymorphisms of the pair.
    """
    if is_nf_template(relM):
        raise ValidationError("the reduction needs a finite source template")
    M, B = relM.carrier, relN.carrier
    r = relM.arity
    if relN.arity != r:
        raise ArityMismatch("template arities differ")
    arity = dict(all_symbols(cond))
    if any(k > N_arity for k in arity.values()):
        raise ValidationError("symbol arity exceeds the padding arity")
    if M.size ** N_arity > cap:
        raise TooLarge("carrier power exceeds the cap")
    P = CartesianPower(M, N_arity)
    U = _unit_insertion_generators(M, N_arity, minimal_generating_set(M))
    if B.size ** len(U) > cap:
        raise TooLarge("map enumeration exceeds the cap")
    u_index = {u: k for k, u in enumerate(U)}

    conflicts = []      # word pairs from non-extending maps
    homs = []           # extending maps, as (f_values, val_dict)
    for f_values in product(B.elements, repeat=len(U)):
        kind, data = _try_extend(P, B, U, list(f_values))
        if kind == "conflict":
            if data not in conflicts:
                conflicts.append(data)
        else:
            homs.append((f_values, data))

    # witnesses against homs of the power that are not polymorphisms
    words = _word_table(P, U)
    rel_rows = sorted(relM.relation)
    if rel_rows and len(rel_rows) ** N_arity > cap:
        raise TooLarge("relation witness search exceeds the cap")
    rel_witnesses = []  # lists of m words, one per relation position
    for f_values, val in homs:
        found = None
        for rows in product(rel_rows, repeat=N_arity):
            image = tuple(val[tuple(row[j] for row in rows)] for j in range(r))
            if image not in relN.relation:
                found = rows
                break
        if found is not None:
            witness = tuple(words[tuple(row[j] for row in found)]
                            for j in range(r))
            if witness not in rel_witnesses:
                rel_witnesses.append(witness)

    symbols = sorted(arity)
    var_of = {}
    for x in symbols:
        for u in U:
            var_of[(x, u)] = len(var_of)
    e_aux = len(var_of)
    next_var = e_aux + 1
    constraints = [Identity(e_aux)]

    def word_result(x, w):
        nonlocal next_var
        if not w:
            return e_aux
        acc = var_of[(x, U[w[0]])]
        for k in w[1:]:
            fresh = next_var
            next_var += 1
            constraints.append(Product(acc, var_of[(x, U[k])], fresh))
            acc = fresh
        return acc

    def equate(a, b):
        constraints.append(Product(a, e_aux, b))

    for x in symbols:
        for ws, wt in conflicts:
            equate(word_result(x, ws), word_result(x, wt))
        for witness in rel_witnesses:
            constraints.append(Relation(tuple(word_result(x, w)
                                              for w in witness)))

    for u, v, phi in cond.edges:
        padded = tuple(phi) + (phi[-1],) * (N_arity - len(phi))
        for alpha in U:
            alpha_phi = tuple(alpha[padded[i]] for i in range(N_arity))
            equate(var_of[(v, alpha)], var_of[(u, alpha_phi)])

    return make_instance(next_var, constraints)
