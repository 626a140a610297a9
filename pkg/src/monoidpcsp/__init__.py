"""Promise equation templates over finite monoids: structure theory,
commutative regularization, normal forms, the tractability dichotomy
classifier, and a polynomial-time solver for coset templates.
"""

from .classify import Classification, classify, classify_via_abreg, sandwich_check
from .core import FiniteMonoid, MonoidHom, enumerate_homs, make_hom
from .errors import MonoidError
from .model import (
    Instance,
    Template,
    make_finite_template,
    make_instance,
    make_nf_template,
    oracle_solve,
    parse_instance,
    parse_template,
)
from .regularize import NormalFormMonoid, ab_reg, to_normal_form
from .solver import finite_template_to_nf, solve_tractable

__all__ = [
    "Classification",
    "FiniteMonoid",
    "Instance",
    "MonoidError",
    "MonoidHom",
    "NormalFormMonoid",
    "Template",
    "ab_reg",
    "classify",
    "classify_via_abreg",
    "enumerate_homs",
    "finite_template_to_nf",
    "make_finite_template",
    "make_hom",
    "make_instance",
    "make_nf_template",
    "oracle_solve",
    "parse_instance",
    "parse_template",
    "sandwich_check",
    "solve_tractable",
    "to_normal_form",
]

__version__ = "0.1.0"
