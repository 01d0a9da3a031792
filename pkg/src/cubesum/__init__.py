"""Exact construction, derivation, verification and search for sums of cubes of integer polynomials."""

from .catalog import (
    catalog_fixed,
    five_cubes_residue,
    four_cubes_sum_pq,
    four_cubes_two_diff,
    one_bivariate,
    represent,
    scale_representation,
    two_trivariate,
)
from .derive import (
    DerivationTrace,
    derive,
    derive_five_residue,
    derive_four_even,
    derive_four_pq,
    derive_one_bivariate,
    derive_two_trivariate,
)
from .errors import (
    BudgetExceeded,
    CubesumError,
    InexactDivision,
    NoFourCubeFamilyMatch,
    ParseError,
    ResidueMismatch,
    UnboundVariable,
    UnknownFamily,
    UnknownIdentity,
)
from .poly import Polynomial, parse, var, variables
from .representation import Representation
from .search import SearchResult, SearchSpace, search, search_shard
from .verify import VerificationReport, verifier_check, verifier_spot_check

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CubesumError",
    "DerivationTrace",
    "InexactDivision",
    "NoFourCubeFamilyMatch",
    "ParseError",
    "Polynomial",
    "Representation",
    "ResidueMismatch",
    "SearchResult",
    "SearchSpace",
    "UnboundVariable",
    "UnknownFamily",
    "UnknownIdentity",
    "VerificationReport",
    "catalog_fixed",
    "derive",
    "derive_five_residue",
    "derive_four_even",
    "derive_four_pq",
    "derive_one_bivariate",
    "derive_two_trivariate",
    "five_cubes_residue",
    "four_cubes_sum_pq",
    "four_cubes_two_diff",
    "one_bivariate",
    "parse",
    "represent",
    "scale_representation",
    "search",
    "search_shard",
    "two_trivariate",
    "var",
    "variables",
    "verifier_check",
    "verifier_spot_check",
]
