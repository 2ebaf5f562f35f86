"""Finite p-groups, their subgroup lattices, and Chermak-Delgado lattices."""

from .cd import CDReport, analyze, cd_lattice, delta, measure, verify_cd_axioms
from .families import FamilySpec, builtin_corpus, construct_family, order16_catalog
from .group import (
    FiniteGroup,
    StructureScalars,
    Subgroup,
    build_from_permutation_generators,
    build_from_table,
    center,
    central_product,
    centralizer,
    derived_and_lcs,
    direct_product,
    quotient,
)
from .lattice import (
    RankInfo,
    SubgroupLattice,
    enumerate_subgroups,
    is_maximal_class,
    is_metacyclic,
    ranks_and_omega,
    subgroup_counts,
    upper_interval,
)

__version__ = "0.1.0"
