from .lift import LiftOptions, LiftResult, VerifyReport, lift_region, seed_tuple, verify, verify_node
from .matching import MatchPlan, cost_matrix, expand_support, match_step, optimal_assignments
from .shire import Sheet, ShireGraph, UnionFind
