"""Free groups, their automorphisms, and graphs of free groups with cyclic edge groups."""
from .automorphisms import (FreeAut, OuterAutClass, compose, conjugate_aut, identity,
                            inner, inner_witness, is_inner, mccool_membership,
                            outer_commutes, outer_equal, parse_aut)
from .folding import fold, subgroup_membership
from .gogaut import (DehnTwistData, GoGAut, compose_gog, induced_aut,
                     is_root_of_dehn_twist, mu, twist_aut, twist_kernel_rank, validate)
from .graph import (GraphOfGroups, PathWord, britton_reduce, extend_homomorphism,
                    free_basis, pi1_equal, translation_length)
from .kernels import BACKEND
from .words import (Alphabet, Word, are_conjugate, conjugacy_witness, cyclic_reduce,
                    is_proper_power, power_of)

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Word", "are_conjugate", "conjugacy_witness", "cyclic_reduce",
    "is_proper_power", "power_of", "FreeAut", "OuterAutClass", "compose",
    "conjugate_aut", "identity", "inner", "inner_witness", "is_inner",
    "mccool_membership", "outer_commutes", "outer_equal", "parse_aut", "fold",
    "subgroup_membership", "GraphOfGroups", "PathWord", "britton_reduce",
    "extend_homomorphism", "free_basis", "pi1_equal", "translation_length",
    "GoGAut", "DehnTwistData", "compose_gog", "induced_aut", "is_root_of_dehn_twist",
    "mu", "twist_aut", "twist_kernel_rank", "validate", "BACKEND",
]
