"""Eta-quotient coefficients mod 2 at scale: series arithmetic over GF(2),
an expression DSL, congruence and identity verification, progression search,
density estimation, and quadratic-residue congruence families.
"""

from etaparity._kernels import BACKEND_NAME as backend_name
from etaparity.analysis import (
    DensityEstimate,
    P2EvenReport,
    Progression,
    ProgressionCheck,
    QuadForm,
    check_progression,
    cmsz_predicate,
    density,
    legendre,
    mod_inverse,
    p2_even_check,
    pentagonal_form,
    primeclass_base,
    representable_residues,
    residue_complement,
    search_progressions,
    smallt0_predicate,
    triangular_form,
)
from etaparity.expr import EtaExpr, ParseError, canonical_string, evaluate, parse
from etaparity.identities import (
    IdentityCase,
    Term,
    VerificationResult,
    builtin_catalog,
    load_catalog,
    parse_catalog,
    verify,
    verify_all,
)
from etaparity.series import (
    BitSeries,
    SparseExponents,
    add,
    dissect,
    dumps,
    embed,
    eta_power,
    inverse,
    loads,
    magnify,
    mul,
    mul_sparse,
    pentagonal_factor,
    triangular_factor,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "BitSeries",
    "SparseExponents",
    "pentagonal_factor",
    "triangular_factor",
    "eta_power",
    "add",
    "mul",
    "mul_sparse",
    "inverse",
    "magnify",
    "dissect",
    "embed",
    "dumps",
    "loads",
    "EtaExpr",
    "ParseError",
    "parse",
    "canonical_string",
    "evaluate",
    "Progression",
    "ProgressionCheck",
    "DensityEstimate",
    "P2EvenReport",
    "QuadForm",
    "density",
    "check_progression",
    "search_progressions",
    "legendre",
    "mod_inverse",
    "representable_residues",
    "residue_complement",
    "pentagonal_form",
    "triangular_form",
    "p2_even_check",
    "primeclass_base",
    "cmsz_predicate",
    "smallt0_predicate",
    "Term",
    "IdentityCase",
    "VerificationResult",
    "verify",
    "verify_all",
    "parse_catalog",
    "load_catalog",
    "builtin_catalog",
]
