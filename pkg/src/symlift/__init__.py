"""Symmetric-product quotients of X^m and lifting of sampled regions through them."""

from .core import (LABELS, LINE, PLANE, FClass, PieceId, PointDomain, SPClass, classify,
                   euclidean, f_canonical, orbit_canonical, primitive_rep, project_piece,
                   sp_canonical, theta_canonical)
from .errors import (AmbiguousCoincidence, ClassificationAmbiguity, ConflictingSheet,
                     GroupTooLarge, HolonomyError, InputMismatch, LiftObstruction,
                     SymliftError)
from .lifting import LiftOptions, LiftResult, lift_region, match_step, verify
from .regions import SampledRegion, segment

__version__ = "0.1.0"
