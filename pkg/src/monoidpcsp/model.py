"""Templates, instances, their text formats, the group-to-monoid instance
translation, and a brute-force satisfiability oracle.

A template is a carrier monoid (finite, or a normal form with integer
coordinates) together with a single relation.  Finite relations are tuple
sets; normal-form relations are finite unions of lattice-coset blocks over
the concatenated coordinates.
"""

from dataclasses import dataclass
from itertools import product

from .core import FiniteMonoid, monoid_from_keyword, validate_monoid, format_monoid
from .errors import (
    ArityMismatch,
    BudgetExceeded,
    ParseError,
    ValidationError,
)
from .regularize import (
    NormalFormMonoid,
    integers_nf,
    make_normal_form,
    nf_eq,
    nf_mul,
)
from .zlinalg import (
    LatticeCoset,
    coset_member,
    lattice_from_generators,
    reduce_mod_lattice,
)


# ---------------------------------------------------------------------------
# Constraints and instances


@dataclass(frozen=True)
class Product:
    x: object
    y: object
    z: object


@dataclass(frozen=True)
class Identity:
    x: object


@dataclass(frozen=True)
class Relation:
    vars: tuple


@dataclass(frozen=True)
class Inv:
    """Inverse marker on a variable reference, for group-signature input."""

    var: int


@dataclass(frozen=True)
class Instance:
    var_count: int
    constraints: tuple


def make_instance(var_count, constraints):
    def check_var(v):
        if not isinstance(v, int) or not 0 <= v < var_count:
            raise ValidationError(f"variable index {v!r} out of range")

    for c in constraints:
        if isinstance(c, Product):
            for v in (c.x, c.y, c.z):
                check_var(v)
        elif isinstance(c, Identity):
            check_var(c.x)
        elif isinstance(c, Relation):
            for v in c.vars:
                check_var(v)
        else:
            raise ValidationError(f"unknown constraint {c!r}")
    return Instance(var_count, tuple(constraints))


# ---------------------------------------------------------------------------
# Templates


@dataclass(frozen=True)
class Block:
    """One lattice-coset block of a normal-form relation: the elements
    [d_1, v_1], ..., [d_r, v_r] whose concatenated vector lies in the coset."""

    d_tuple: tuple
    coset: LatticeCoset


@dataclass(frozen=True)
class Template:
    carrier: object
    arity: int
    relation: object  # frozenset of tuples, or tuple of Blocks


def is_nf_template(T):
    return isinstance(T.carrier, NormalFormMonoid)


def make_finite_template(M, arity, tuples):
    if arity < 1:
        raise ValidationError("arity must be at least 1")
    rel = set()
    for t in tuples:
        t = tuple(t)
        if len(t) != arity:
            raise ArityMismatch(f"tuple {t} does not have arity {arity}")
        if any(not 0 <= a < M.size for a in t):
            raise ValidationError(f"tuple {t} is not over the carrier")
        rel.add(t)
    return Template(M, arity, frozenset(rel))


def _embed_slice(vec, slot, arity, q):
    out = [0] * (arity * q)
    out[slot * q:(slot + 1) * q] = list(vec)
    return out


def _saturate_block(NF, arity, d_tuple, offset, generators):
    """Close a block's lattice under the per-coordinate relation lattices and
    canonicalize the offset."""
    q = NF.num_coords
    gens = [list(g) for g in generators]
    for i, d in enumerate(d_tuple):
        for row in NF.xi[d].basis:
            gens.append(_embed_slice(row, i, arity, q))
    L = lattice_from_generators(arity * q, gens)
    off = tuple(reduce_mod_lattice(list(offset), L))
    return Block(tuple(d_tuple), LatticeCoset(off, L))


def make_nf_template(NF, arity, blocks):
    """blocks: iterable of (d_tuple, offset, generators)."""
    if arity < 1:
        raise ValidationError("arity must be at least 1")
    q = NF.num_coords
    out = []
    for d_tuple, offset, generators in blocks:
        d_tuple = tuple(d_tuple)
        if len(d_tuple) != arity:
            raise ArityMismatch(f"d-tuple {d_tuple} does not have arity {arity}")
        if any(not 0 <= d < NF.semilattice.size for d in d_tuple):
            raise ValidationError(f"d-tuple {d_tuple} is not over the semilattice")
        offset = list(offset)
        if len(offset) != arity * q:
            raise ValidationError("block offset has wrong length")
        for vec in [offset] + [list(g) for g in generators]:
            if len(vec) != arity * q:
                raise ValidationError("block vector has wrong length")
            for i, d in enumerate(d_tuple):
                for j in range(q):
                    if j not in NF.lam[d] and vec[i * q + j] != 0:
                        raise ValidationError(
                            f"block vector not supported on lam({d}) in slot {i}")
        out.append(_saturate_block(NF, arity, d_tuple, offset, generators))
    return Template(NF, arity, tuple(out))


def block_contains(T, elems):
    """Membership of a tuple of NFElements in the template relation."""
    for block in T.relation:
        if tuple(x.d for x in elems) != block.d_tuple:
            continue
        flat = [a for x in elems for a in x.v]
        if coset_member(flat, block.coset):
            return True
    return False


# ---------------------------------------------------------------------------
# Assignment checking


def check_assignment(T, I, assignment):
    """True iff the assignment (a sequence indexed by variable) satisfies
    every constraint of I over the template carrier."""
    if len(assignment) < I.var_count:
        raise ValidationError("assignment is not total")
    if is_nf_template(T):
        NF = T.carrier
        ident = NF.identity
        for c in I.constraints:
            if isinstance(c, Product):
                if not nf_eq(nf_mul(NF, assignment[c.x], assignment[c.y]),
                             assignment[c.z]):
                    return False
            elif isinstance(c, Identity):
                if not nf_eq(assignment[c.x], ident):
                    return False
            else:
                if len(c.vars) != T.arity:
                    raise ArityMismatch("relation constraint arity mismatch")
                if not block_contains(T, [assignment[v] for v in c.vars]):
                    return False
        return True
    M = T.carrier
    for c in I.constraints:
        if isinstance(c, Product):
            if M.mul(assignment[c.x], assignment[c.y]) != assignment[c.z]:
                return False
        elif isinstance(c, Identity):
            if assignment[c.x] != M.identity:
                return False
        else:
            if len(c.vars) != T.arity:
                raise ArityMismatch("relation constraint arity mismatch")
            if tuple(assignment[v] for v in c.vars) not in T.relation:
                return False
    return True


# ---------------------------------------------------------------------------
# Brute-force oracle


DEFAULT_ORACLE_BUDGET = 2_000_000


def oracle_solve(T, I, budget=DEFAULT_ORACLE_BUDGET):
    """Exhaustive backtracking search for a satisfying assignment over a
    finite carrier.  Returns a list (variable -> element) or None.

    Deterministic: variables in index order, values in element order.  The
    budget bounds visited search nodes.
    """
    if is_nf_template(T):
        raise ValidationError("the oracle needs a finite carrier")
    M = T.carrier
    n = I.var_count
    # constraints become checkable once their last variable is assigned
    by_last = [[] for _ in range(n + 1)]
    for c in I.constraints:
        if isinstance(c, Product):
            last = max(c.x, c.y, c.z)
        elif isinstance(c, Identity):
            last = c.x
        else:
            if len(c.vars) != T.arity:
                raise ArityMismatch("relation constraint arity mismatch")
            last = max(c.vars) if c.vars else 0
        by_last[last].append(c)
    assignment = [None] * n
    nodes = 0

    def consistent(v):
        for c in by_last[v]:
            if isinstance(c, Product):
                if M.mul(assignment[c.x], assignment[c.y]) != assignment[c.z]:
                    return False
            elif isinstance(c, Identity):
                if assignment[c.x] != M.identity:
                    return False
            else:
                if tuple(assignment[u] for u in c.vars) not in T.relation:
                    return False
        return True

    def search(v):
        nonlocal nodes
        if v == n:
            return True
        for a in M.elements:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"oracle exceeded {budget} nodes")
            assignment[v] = a
            if consistent(v) and search(v + 1):
                return True
        assignment[v] = None
        return False

    if n == 0:
        return []
    return list(assignment) if search(0) else None


# ---------------------------------------------------------------------------
# Group signature translation


def group_to_monoid(I):
    """Rewrite an instance whose product constraints may reference inverted
    variables (Inv markers) into the plain monoid signature.

    Every inverted variable x gets a companion x_ with x_ * x = e = x * x_,
    enforced through a shared auxiliary identity variable.
    """
    inverted = set()
    for c in I.constraints:
        if isinstance(c, Product):
            for ref in (c.x, c.y, c.z):
                if isinstance(ref, Inv):
                    inverted.add(ref.var)
    if not inverted:
        return Instance(I.var_count, I.constraints)
    companion = {}
    next_var = I.var_count
    for x in sorted(inverted):
        companion[x] = next_var
        next_var += 1
    e_var = next_var
    next_var += 1

    def resolve(ref):
        return companion[ref.var] if isinstance(ref, Inv) else ref

    constraints = []
    for c in I.constraints:
        if isinstance(c, Product):
            constraints.append(Product(resolve(c.x), resolve(c.y), resolve(c.z)))
        else:
            constraints.append(c)
    constraints.append(Identity(e_var))
    for x in sorted(inverted):
        constraints.append(Product(companion[x], x, e_var))
        constraints.append(Product(x, companion[x], e_var))
    return make_instance(next_var, constraints)


# ---------------------------------------------------------------------------
# Text formats


def _content_lines(text):
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


class _Cursor:
    def __init__(self, text):
        self.lines = _content_lines(text)
        self.pos = 0

    def peek(self):
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def take(self, expect=None):
        if self.pos >= len(self.lines):
            raise ParseError(0, f"unexpected end of input (wanted {expect})")
        no, toks = self.lines[self.pos]
        self.pos += 1
        if expect is not None and toks[0] != expect:
            raise ParseError(no, f"expected {expect!r}, got {toks[0]!r}")
        return no, toks

    def done(self):
        return self.pos >= len(self.lines)


def _ints(no, toks):
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise ParseError(no, f"expected integers, got {toks}")


def _parse_finite_monoid(cur):
    no, toks = cur.take("monoid")
    if len(toks) != 3:
        raise ParseError(no, "monoid header needs a size and an identity")
    size, identity = _ints(no, toks[1:])
    rows = []
    for _ in range(size):
        rno, rtoks = cur.take()
        row = _ints(rno, rtoks)
        if len(row) != size:
            raise ParseError(rno, f"table row needs {size} entries")
        rows.append(tuple(row))
    try:
        validate_monoid(tuple(rows), identity)
    except Exception as e:
        raise ValidationError(str(e)) from e
    return FiniteMonoid(tuple(rows), identity)


def _parse_nf(cur):
    cur.take("nf")
    no, toks = cur.take("semilattice")
    if len(toks) != 3:
        raise ParseError(no, "semilattice header needs a size and an identity")
    size, identity = _ints(no, toks[1:])
    rows = []
    for _ in range(size):
        rno, rtoks = cur.take()
        row = _ints(rno, rtoks)
        if len(row) != size:
            raise ParseError(rno, f"table row needs {size} entries")
        rows.append(tuple(row))
    try:
        validate_monoid(tuple(rows), identity)
    except Exception as e:
        raise ValidationError(str(e)) from e
    N = FiniteMonoid(tuple(rows), identity)
    no, toks = cur.take("coords")
    if len(toks) != 2:
        raise ParseError(no, "coords line needs a count")
    (q,) = _ints(no, toks[1:])
    lam = [frozenset() for _ in range(size)]
    xi_gens = [[] for _ in range(size)]
    anchors = [None] * q
    while not cur.done() and cur.peek()[1][0] in ("lambda", "xi", "anchor"):
        no, toks = cur.take()
        if toks[0] == "lambda":
            vals = _ints(no, toks[1:])
            d, coords = vals[0], vals[1:]
            if not 0 <= d < size:
                raise ParseError(no, f"semilattice index {d} out of range")
            lam[d] = frozenset(coords)
        elif toks[0] == "xi":
            d, count = _ints(no, toks[1:])
            if not 0 <= d < size:
                raise ParseError(no, f"semilattice index {d} out of range")
            for _ in range(count):
                vno, vtoks = cur.take()
                vec = _ints(vno, vtoks)
                if len(vec) != q:
                    raise ParseError(vno, f"relation vector needs {q} entries")
                xi_gens[d].append(vec)
        else:
            alpha, d = _ints(no, toks[1:])
            if not 0 <= alpha < q:
                raise ParseError(no, f"coordinate {alpha} out of range")
            anchors[alpha] = d
    if any(a is None for a in anchors):
        raise ValidationError("every coordinate needs an anchor line")
    xi = [lattice_from_generators(q, g) for g in xi_gens]
    try:
        return make_normal_form(N, q, lam, xi, anchors)
    except Exception as e:
        raise ValidationError(str(e)) from e


def _parse_carrier(cur):
    no, toks = cur.take()
    word = toks[0]
    cur.pos -= 1
    if word == "monoid":
        return _parse_finite_monoid(cur)
    if word == "nf":
        return _parse_nf(cur)
    cur.pos += 1
    if word == "integers":
        return integers_nf()
    try:
        return monoid_from_keyword(word)
    except Exception as e:
        raise ParseError(no, f"unknown carrier {word!r}") from e


def _parse_rel_finite(cur, M):
    no, toks = cur.take("rel")
    if len(toks) != 2:
        raise ParseError(no, "rel header needs an arity")
    (arity,) = _ints(no, toks[1:])
    tuples = []
    while not cur.done() and cur.peek()[1][0] == "tuple":
        tno, ttoks = cur.take()
        t = _ints(tno, ttoks[1:])
        if len(t) != arity:
            raise ParseError(tno, f"tuple needs {arity} entries")
        tuples.append(tuple(t))
    return make_finite_template(M, arity, tuples)


def _parse_rel_nf(cur, NF):
    no, toks = cur.take("rel")
    if len(toks) != 2:
        raise ParseError(no, "rel header needs an arity")
    (arity,) = _ints(no, toks[1:])
    q = NF.num_coords
    blocks = []
    while not cur.done() and cur.peek()[1][0] == "block":
        bno, btoks = cur.take()
        (ngens,) = _ints(bno, btoks[1:])
        dno, dtoks = cur.take("d")
        d_tuple = _ints(dno, dtoks[1:])
        if len(d_tuple) != arity:
            raise ParseError(dno, f"d line needs {arity} entries")
        ono, otoks = cur.take("offset")
        offset = _ints(ono, otoks[1:])
        if len(offset) != arity * q:
            raise ParseError(ono, f"offset needs {arity * q} entries")
        gens = []
        for _ in range(ngens):
            gno, gtoks = cur.take("gen")
            g = _ints(gno, gtoks[1:])
            if len(g) != arity * q:
                raise ParseError(gno, f"generator needs {arity * q} entries")
            gens.append(g)
        blocks.append((d_tuple, offset, gens))
    return make_nf_template(NF, arity, blocks)


def _concat_templates(T1, T2):
    if is_nf_template(T1):
        blocks = []
        q = T1.carrier.num_coords
        for b1 in T1.relation:
            for b2 in T2.relation:
                blocks.append((
                    b1.d_tuple + b2.d_tuple,
                    list(b1.coset.offset) + list(b2.coset.offset),
                    [list(g) + [0] * (T2.arity * q) for g in b1.coset.lattice.basis]
                    + [[0] * (T1.arity * q) + list(g) for g in b2.coset.lattice.basis],
                ))
        return make_nf_template(T1.carrier, T1.arity + T2.arity, blocks)
    rel = frozenset(t1 + t2 for t1 in T1.relation for t2 in T2.relation)
    return Template(T1.carrier, T1.arity + T2.arity, rel)


def parse_template(text):
    cur = _Cursor(text)
    carrier = _parse_carrier(cur)
    nf = isinstance(carrier, NormalFormMonoid)
    T = None
    while not cur.done():
        if cur.peek()[1][0] != "rel":
            no, toks = cur.peek()
            raise ParseError(no, f"unexpected line {toks[0]!r}")
        part = _parse_rel_nf(cur, carrier) if nf else _parse_rel_finite(cur, carrier)
        T = part if T is None else _concat_templates(T, part)
    if T is None:
        raise ValidationError("template needs at least one rel block")
    return T


def parse_carrier(text):
    """Parse a file holding just a carrier (finite monoid, nf section, or a
    keyword); any relation sections after it are ignored."""
    cur = _Cursor(text)
    carrier = _parse_carrier(cur)
    if not cur.done() and cur.peek()[1][0] != "rel":
        no, toks = cur.peek()
        raise ParseError(no, f"unexpected line {toks[0]!r}")
    return carrier


def parse_instance(text):
    cur = _Cursor(text)
    no, toks = cur.take("instance")
    if len(toks) != 2:
        raise ParseError(no, "instance header needs a variable count")
    (var_count,) = _ints(no, toks[1:])
    constraints = []
    while not cur.done():
        no, toks = cur.take()
        kind = toks[0]
        args = _ints(no, toks[1:])
        if kind == "MUL":
            if len(args) != 3:
                raise ParseError(no, "MUL needs three variables")
            constraints.append(Product(*args))
        elif kind == "ID":
            if len(args) != 1:
                raise ParseError(no, "ID needs one variable")
            constraints.append(Identity(args[0]))
        elif kind == "REL":
            constraints.append(Relation(tuple(args)))
        else:
            raise ParseError(no, f"unknown constraint kind {kind!r}")
    try:
        return make_instance(var_count, constraints)
    except ValidationError as e:
        raise ValidationError(str(e))


def serialize_instance(I):
    lines = [f"instance {I.var_count}"]
    for c in I.constraints:
        if isinstance(c, Product):
            lines.append(f"MUL {c.x} {c.y} {c.z}")
        elif isinstance(c, Identity):
            lines.append(f"ID {c.x}")
        else:
            lines.append("REL " + " ".join(str(v) for v in c.vars))
    return "\n".join(lines) + "\n"


def serialize_template(T):
    if is_nf_template(T):
        NF = T.carrier
        lines = ["nf", f"semilattice {NF.semilattice.size} {NF.semilattice.identity}"]
        for row in NF.semilattice.table:
            lines.append(" ".join(str(v) for v in row))
        lines.append(f"coords {NF.num_coords}")
        for d in NF.semilattice.elements:
            lines.append(f"lambda {d} " + " ".join(str(a) for a in sorted(NF.lam[d])))
        for d in NF.semilattice.elements:
            lines.append(f"xi {d} {len(NF.xi[d].basis)}")
            for row in NF.xi[d].basis:
                lines.append(" ".join(str(v) for v in row))
        for alpha, d in enumerate(NF.anchors):
            lines.append(f"anchor {alpha} {d}")
        lines.append(f"rel {T.arity}")
        for block in sorted(T.relation, key=lambda b: (b.d_tuple, b.coset.offset)):
            lines.append(f"block {len(block.coset.lattice.basis)}")
            lines.append("d " + " ".join(str(d) for d in block.d_tuple))
            lines.append("offset " + " ".join(str(v) for v in block.coset.offset))
            for g in block.coset.lattice.basis:
                lines.append("gen " + " ".join(str(v) for v in g))
        return "\n".join(lines) + "\n"
    lines = [format_monoid(T.carrier).rstrip("\n"), f"rel {T.arity}"]
    for t in sorted(T.relation):
        lines.append("tuple " + " ".join(str(v) for v in t))
    return "\n".join(lines) + "\n"


def all_assignments(M, var_count):
    """Every total assignment, for cross-checking the oracle."""
    return product(M.elements, repeat=var_count)
