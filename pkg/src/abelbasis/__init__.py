"""Bases and isomorphism invariants of finite abelian groups."""

from .divisors import DivisorTable, OrderResult, element_order, enumerate_divisors, primary_split
from .edlp import EdlpSolution, IndependentBasis, solve_edlp, subgroup_dlp
from .errors import *  # noqa: F403
from .extend import Relation, extend_basis
from .factorization import Factorization
from .groups import (
    AbelianGroup,
    ProductGroup,
    TableGroup,
    UnitsModN,
    enumerate_elements,
    make_product_group,
    make_table_group,
    parse_product_spec,
    read_table_file,
    scalar_mul,
)
from .opcount import OpReport
from .structure import (
    CanonicalInvariants,
    GroupStructure,
    basis_cyclic,
    basis_from_generators,
    basis_from_table,
    canonical_invariants,
    is_isomorphic,
)

__version__ = "0.1.0"
