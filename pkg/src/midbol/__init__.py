"""Finite loops, middle Bol loops, their holomorphs and isostrophes."""

__version__ = "0.1.0"

from .errors import (BudgetExceeded, CapExceeded, DegreeMismatch, InversesNotTwoSided, LimitExceeded,
                     LoopError, Malformed, NoIdentity, NoneFound, NotASubgroup, NotAutomorphisms,
                     NotCommonSubgroup, NotCommutativeBase, NotLatin)
from .holomorph import (HolomorphLoop, build_holomorph, left_combined_holomorph,
                        right_combined_holomorph)
from .io import format_loop, parse_loop, read_loop, write_loop
from .isostrophe import (left_bol_from_middle, middle_from_left_bol, middle_from_right_bol,
                         right_bol_from_middle)
from .perm import (PermutationGroup, automorphism_group, closure, compose, invert, middle_regular_maps,
                   mult_groups, subgroups)
from .search import SearchSpec, canonical_form, enumerate_loops, find_bol_loops, search
from .table import FiniteLoop, TranslationKind, all_predicates, opposite, predicate, translation, validate_loop
from .theorems import TheoremReport, open_problem_scan, verify
from .topism import Topism, classify, enumerate_atp, verify_prop_atp_equal

__all__ = [
    "BudgetExceeded", "CapExceeded", "DegreeMismatch", "InversesNotTwoSided", "LimitExceeded", "LoopError",
    "Malformed", "NoIdentity", "NoneFound", "NotASubgroup", "NotAutomorphisms", "NotCommonSubgroup",
    "NotCommutativeBase", "NotLatin",
    "HolomorphLoop", "build_holomorph", "left_combined_holomorph", "right_combined_holomorph",
    "format_loop", "parse_loop", "read_loop", "write_loop",
    "left_bol_from_middle", "middle_from_left_bol", "middle_from_right_bol", "right_bol_from_middle",
    "PermutationGroup", "automorphism_group", "closure", "compose", "invert", "middle_regular_maps",
    "mult_groups", "subgroups",
    "SearchSpec", "canonical_form", "enumerate_loops", "find_bol_loops", "search",
    "FiniteLoop", "TranslationKind", "all_predicates", "opposite", "predicate", "translation", "validate_loop",
    "TheoremReport", "open_problem_scan", "verify",
    "Topism", "classify", "enumerate_atp", "verify_prop_atp_equal",
]
