"""Polynomial-time solver for instances over a normal-form carrier whose
relation is a coset: arc-consistency on the idempotent projection, then an
integer linear system on the coordinate vectors.
"""

from dataclasses import dataclass

from .core import CartesianPower, minimal_generating_set
from .cosets import is_coset
from .errors import ArityMismatch, NotACoset, ValidationError
from .model import (
    Identity,
    Product,
    check_assignment,
    is_nf_template,
    make_nf_template,
)
from .regularize import nf_element, to_normal_form
from .zlinalg import solve_integer


# ---------------------------------------------------------------------------
# Semilattice templates and the minimal homomorphism


@dataclass(frozen=True)
class SemilatticeTemplate:
    semilattice: object
    arity: int
    relation: frozenset


def minimal_homomorphism(TI, I):
    """The pointwise least homomorphism from the instance into the
    semilattice template, or None when no homomorphism exists.

    Arc-consistency prunes per-variable domains to a fixpoint; the least
    homomorphism is the product of each variable's surviving values.
    """
    N = TI.semilattice
    domains = [set(N.elements) for _ in range(I.var_count)]

    def prune_product(c):
        dx, dy, dz = domains[c.x], domains[c.y], domains[c.z]
        triples = [(a, b, N.mul(a, b)) for a in dx for b in dy
                   if N.mul(a, b) in dz]
        if c.x == c.y:
            triples = [(a, b, p) for a, b, p in triples if a == b]
        if c.x == c.z:
            triples = [(a, b, p) for a, b, p in triples if a == p]
        if c.y == c.z:
            triples = [(a, b, p) for a, b, p in triples if b == p]
        changed = False
        for var, pos in ((c.x, 0), (c.y, 1), (c.z, 2)):
            keep = {t[pos] for t in triples}
            if domains[var] - keep:
                changed = True
                domains[var] &= keep
        return changed

    def prune_relation(c):
        if len(c.vars) != TI.arity:
            raise ArityMismatch("relation constraint arity mismatch")
        rows = [t for t in TI.relation
                if all(t[i] in domains[v] for i, v in enumerate(c.vars))
                and all(t[i] == t[j] for i in range(len(c.vars))
                        for j in range(i + 1, len(c.vars))
                        if c.vars[i] == c.vars[j])]
        changed = False
        for i, v in enumerate(c.vars):
            keep = {t[i] for t in rows}
            if domains[v] != keep & domains[v]:
                changed = True
            domains[v] &= keep
        return changed

    changed = True
    while changed:
        changed = False
        for c in I.constraints:
            if isinstance(c, Product):
                changed |= prune_product(c)
            elif isinstance(c, Identity):
                if domains[c.x] != {N.identity} & domains[c.x]:
                    changed = True
                domains[c.x] &= {N.identity}
            else:
                changed |= prune_relation(c)
        if any(not d for d in domains):
            return None
    h = [None] * I.var_count
    for x in range(I.var_count):
        h[x] = N.prod(sorted(domains[x]))
    for c in I.constraints:
        if isinstance(c, Product):
            if N.mul(h[c.x], h[c.y]) != h[c.z]:
                return None
        elif isinstance(c, Identity):
            if h[c.x] != N.identity:
                return None
        else:
            if tuple(h[v] for v in c.vars) not in TI.relation:
                return None
    return h


# ---------------------------------------------------------------------------
# The integer system


@dataclass(frozen=True)
class SigmaSystem:
    """Linear system over Z whose solvability decides the instance above a
    fixed minimal homomorphism h.

    Columns 0 .. var_count*q - 1 hold the coordinate vectors v^x; further
    columns hold fresh multipliers for relation-lattice generators.  A row is
    (coefficients, rhs).  missing_block records a relation constraint whose
    projected d-tuple has no block, which forecloses solvability.
    """

    var_count: int
    num_coords: int
    num_multipliers: int
    matrix: tuple
    rhs: tuple
    missing_block: object


def build_sigma(T, I, h):
    NF = T.carrier
    q = NF.num_coords
    base = I.var_count * q
    rows = []          # list of (dict col -> coeff, rhs int)
    multipliers = 0
    blocks = {b.d_tuple: b.coset for b in T.relation}

    def col(x, alpha):
        return x * q + alpha

    for x in range(I.var_count):
        for alpha in range(q):
            if alpha not in NF.lam[h[x]]:
                rows.append(({col(x, alpha): 1}, 0))
    missing = None
    for c in I.constraints:
        if isinstance(c, Identity):
            for alpha in range(q):
                rows.append(({col(c.x, alpha): 1}, 0))
        elif isinstance(c, Product):
            W = NF.xi[h[c.z]].basis
            start = base + multipliers
            multipliers += len(W)
            for alpha in range(q):
                coeffs = {}
                for cc, s in ((col(c.x, alpha), 1), (col(c.y, alpha), 1),
                              (col(c.z, alpha), -1)):
                    coeffs[cc] = coeffs.get(cc, 0) + s
                for k, u in enumerate(W):
                    if u[alpha]:
                        coeffs[start + k] = -u[alpha]
                rows.append((coeffs, 0))
        else:
            d_tuple = tuple(h[v] for v in c.vars)
            if d_tuple not in blocks:
                missing = d_tuple
                continue
            coset = blocks[d_tuple]
            V = coset.lattice.basis
            start = base + multipliers
            multipliers += len(V)
            for i, v in enumerate(c.vars):
                for alpha in range(q):
                    coeffs = {col(v, alpha): 1}
                    pos = i * q + alpha
                    for k, u in enumerate(V):
                        if u[pos]:
                            coeffs[start + k] = coeffs.get(start + k, 0) - u[pos]
                    rows.append((coeffs, coset.offset[pos]))
    width = base + multipliers
    matrix = tuple(tuple(coeffs.get(j, 0) for j in range(width))
                   for coeffs, _ in rows)
    rhs = tuple(r for _, r in rows)
    return SigmaSystem(I.var_count, q, multipliers, matrix, rhs, missing)


def projected_semilattice_template(T):
    """The idempotent projection of a coset-relation NF template, validated
    as a coset on the semilattice level."""
    NF = T.carrier
    d_tuples = frozenset(b.d_tuple for b in T.relation)
    power = CartesianPower(NF.semilattice, T.arity)
    if not is_coset(power, d_tuples):
        raise NotACoset("projected relation fails the coset equation")
    return SemilatticeTemplate(NF.semilattice, T.arity, d_tuples)


def solve_tractable(T, I):
    """Decide and solve an instance over a coset-relation NF template.

    Returns a satisfying assignment (list of NFElements) or None.
    """
    if not is_nf_template(T):
        raise ValidationError("solve_tractable needs a normal-form carrier")
    NF = T.carrier
    TI = projected_semilattice_template(T)
    h = minimal_homomorphism(TI, I)
    if h is None:
        return None
    system = build_sigma(T, I, h)
    if system.missing_block is not None:
        return None
    q = NF.num_coords
    if system.matrix:
        solved = solve_integer([list(r) for r in system.matrix], list(system.rhs))
        if solved is None:
            return None
        x0, _ = solved
    else:
        x0 = [0] * (I.var_count * q + system.num_multipliers)
    assignment = [nf_element(NF, h[x], x0[x * q:(x + 1) * q])
                  for x in range(I.var_count)]
    if not check_assignment(T, I, assignment):
        raise ValidationError("internal: decoded assignment fails verification")
    return assignment


# ---------------------------------------------------------------------------
# Finite template conversion


def finite_template_to_nf(T, generators=None):
    """Convert a template over a finite commutative regular monoid into an
    equivalent normal-form template.  Returns (nf_template, iso)."""
    M = T.carrier
    gens = generators if generators is not None else minimal_generating_set(M)
    iso = to_normal_form(M, gens)
    NF = iso.nf
    q = NF.num_coords
    groups = {}
    for t in sorted(T.relation):
        enc = [iso.encode(a) for a in t]
        d_tuple = tuple(x.d for x in enc)
        flat = [a for x in enc for a in x.v]
        groups.setdefault(d_tuple, []).append(flat)
    blocks = []
    for d_tuple in sorted(groups):
        vecs = groups[d_tuple]
        offset = vecs[0]
        gens_block = [[a - b for a, b in zip(v, offset)] for v in vecs[1:]]
        blocks.append((d_tuple, offset, gens_block))
    return make_nf_template(NF, T.arity, blocks), iso


def format_assignment(T, assignment):
    """Solver output lines: one variable per line."""
    lines = []
    if is_nf_template(T):
        for i, x in enumerate(assignment):
            vec = ",".join(str(a) for a in x.v)
            lines.append(f"x{i} = d:{x.d} v:({vec})")
    else:
        for i, a in enumerate(assignment):
            lines.append(f"x{i} = {a}")
    return "\n".join(lines)
