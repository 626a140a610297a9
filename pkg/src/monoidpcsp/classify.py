"""Tractability classification for promise templates: a pair (relM, relN)
is tractable exactly when some relation-preserving homomorphism from relM's
carrier into relN's finite carrier has a commutative completely regular
image whose relation image closes, as a coset, inside relN's relation.

The tractable witness comes with a sandwich: the finite template on the
witness image with the coset closure as relation, which sits between relM
and relN.
"""

from dataclasses import dataclass

from .core import (
    CartesianPower,
    enumerate_homs,
    is_commutative,
    is_completely_regular,
    submonoid,
)
from .cosets import coset_closure, elem_inverse, generated_subset, is_coset, setprod
from .errors import ArityMismatch, PromiseViolation, ValidationError
from .model import Template, is_nf_template
from .regularize import ab_reg, nf_element, nf_homs_to_finite


@dataclass(frozen=True)
class Classification:
    verdict: str                 # "Tractable" or "NPHard"
    witness: object = None       # MonoidHom or NFHom, Tractable only
    sandwich: object = None      # finite Template over the witness image
    sandwich_embedding: tuple = None  # sandwich carrier index -> relN element


def _require_compatible(relM, relN):
    if is_nf_template(relN):
        raise ValidationError("the target template must be finite")
    if relM.arity != relN.arity:
        raise ArityMismatch("template arities differ")


def _closure_in_image(N, r, image_elems, rel_tuples):
    """Coset closure of rel_tuples computed inside the submonoid of N on
    image_elems.  Returns None when the submonoid is not commutative
    completely regular, else (A, old_of_new, closure_A, closure_N)."""
    A, old_of_new, new_of_old = submonoid(N, image_elems)
    if not (is_commutative(A) and is_completely_regular(A)):
        return None
    tuples_A = frozenset(tuple(new_of_old[a] for a in t) for t in rel_tuples)
    closure_A = coset_closure(CartesianPower(A, r), tuples_A).members
    closure_N = frozenset(tuple(old_of_new[i] for i in t) for t in closure_A)
    return A, tuple(old_of_new), closure_A, closure_N


def _try_witness(relN, image_elems, rel_image):
    """Tractability test for one candidate hom, given its carrier image and
    relation image as finite sets over relN's carrier."""
    got = _closure_in_image(relN.carrier, relN.arity, image_elems, rel_image)
    if got is None:
        return None
    A, embedding, closure_A, closure_N = got
    if not closure_N <= relN.relation:
        return None
    sandwich = Template(A, relN.arity, frozenset(closure_A))
    return sandwich, embedding


def nf_hom_image(h):
    """The (finite) image set of an NFHom inside its target."""
    NF, F = h.source, h.target
    out = set()
    for d in NF.semilattice.elements:
        gens = []
        for alpha in sorted(NF.lam[d]):
            g = h.gen_images[alpha]
            gens.append(g)
            gens.append(elem_inverse(F, g))
        sub = generated_subset(F, gens)
        phi_d = h.phi_images[d]
        out.update(F.mul(phi_d, s) for s in sub)
    return frozenset(out)


def nf_relation_image(h, T):
    """h(R) for an NF template relation, as a finite tuple set over the
    target: per block, the image of the offset times the subgroup generated
    by the images of the lattice generators."""
    NF, F = h.source, h.target
    r, q = T.arity, NF.num_coords
    P = CartesianPower(F, r)
    out = set()
    for block in T.relation:
        o = tuple(
            h(nf_element(NF, block.d_tuple[i],
                         block.coset.offset[i * q:(i + 1) * q]))
            for i in range(r))
        words = []
        for u in block.coset.lattice.basis:
            w = tuple(_word_image(h, u[i * q:(i + 1) * q]) for i in range(r))
            words.append(w)
            words.append(tuple(elem_inverse(F, a) for a in w))
        subgroup = generated_subset(P, words)
        out.update(setprod(P, {o}, subgroup))
    return frozenset(out)


def _word_image(h, exponents):
    """Image of a pure coordinate word prod alpha^(n_alpha) under an NFHom."""
    F = h.target
    acc = F.identity
    for alpha, n in enumerate(exponents):
        g = h.gen_images[alpha]
        if n > 0:
            acc = F.mul(acc, F.power(g, n))
        elif n < 0:
            acc = F.mul(acc, F.power(elem_inverse(F, g), -n))
    return acc


def relation_preserving_homs(relM, relN):
    """Homomorphisms between carriers that map relM's relation into relN's,
    in deterministic order, paired with their relation images."""
    _require_compatible(relM, relN)
    out = []
    if is_nf_template(relM):
        for h in nf_homs_to_finite(relM.carrier, relN.carrier):
            image = nf_relation_image(h, relM)
            if image <= relN.relation:
                out.append((h, image))
    else:
        for h in enumerate_homs(relM.carrier, relN.carrier):
            image = frozenset(tuple(h(a) for a in t) for t in relM.relation)
            if image <= relN.relation:
                out.append((h, image))
    return out


def classify(relM, relN):
    """Decide the promise template pair.

    Raises PromiseViolation when relM is finite and admits no relational
    homomorphism into relN.  For normal-form relM with a coset relation, a
    relational homomorphism exists exactly in the tractable case, so the
    absence of one is reported as NPHard.
    """
    preserving = relation_preserving_homs(relM, relN)
    if not preserving and not is_nf_template(relM):
        raise PromiseViolation("no relational homomorphism between the templates")
    for h, rel_image in preserving:
        if is_nf_template(relM):
            image_elems = nf_hom_image(h)
        else:
            image_elems = h.image_set()
        got = _try_witness(relN, image_elems, rel_image)
        if got is not None:
            sandwich, embedding = got
            return Classification("Tractable", h, sandwich, embedding)
    return Classification("NPHard")


def classify_via_abreg(relM, relN):
    """Classify a finite relM by regularizing it first: tractability is
    equivalent to a relational homomorphism from the commutative
    regularization (with the coset closure of the projected relation)."""
    if is_nf_template(relM):
        raise ValidationError("regularization path needs a finite source template")
    _require_compatible(relM, relN)
    has_hom = any(
        all(tuple(h(a) for a in t) in relN.relation for t in relM.relation)
        for h in enumerate_homs(relM.carrier, relN.carrier))
    if not has_hom:
        raise PromiseViolation("no relational homomorphism between the templates")
    quot = ab_reg(relM.carrier)
    Q = quot.quotient
    projected = frozenset(tuple(quot.class_of[a] for a in t) for t in relM.relation)
    closed = coset_closure(CartesianPower(Q, relM.arity), projected).members
    for g in enumerate_homs(Q, relN.carrier):
        if not all(tuple(g(c) for c in t) in relN.relation for t in closed):
            continue
        composed = g.compose(quot.projection)
        rel_image = frozenset(tuple(composed(a) for a in t) for t in relM.relation)
        got = _try_witness(relN, composed.image_set(), rel_image)
        if got is None:
            continue
        sandwich, embedding = got
        return Classification("Tractable", composed, sandwich, embedding)
    return Classification("NPHard")


def sandwich_check(c, relM, relN):
    """Validate a Tractable classification: relM maps into the sandwich via
    the witness, the sandwich includes into relN, and the sandwich relation
    is a coset."""
    if c.verdict != "Tractable":
        return False
    A = c.sandwich.carrier
    new_of_old = {old: new for new, old in enumerate(c.sandwich_embedding)}
    h = c.witness
    if is_nf_template(relM):
        rel_image = nf_relation_image(h, relM)
    else:
        images = [h(a) for a in relM.carrier.elements]
        if any(a not in new_of_old for a in images):
            return False
        rel_image = frozenset(tuple(h(a) for a in t) for t in relM.relation)
    # relM -> A: the witness image of the relation sits in A's relation
    for t in rel_image:
        if any(a not in new_of_old for a in t):
            return False
        if tuple(new_of_old[a] for a in t) not in c.sandwich.relation:
            return False
    # A -> relN: inclusion is a relational homomorphism
    for t in c.sandwich.relation:
        if tuple(c.sandwich_embedding[i] for i in t) not in relN.relation:
            return False
    return is_coset(CartesianPower(A, c.sandwich.arity), c.sandwich.relation)
