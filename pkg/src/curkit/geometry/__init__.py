"""Exact polytope geometry: LP, polytope algebra, nerves and representations."""
from .lp import LPResult, Q, lp_feasible, qstr, solve
from .nerve import convex_hull_of_union, covers, covers_interior, nerve_of_collection
from .polytope import (HPolytope, VPolytope, bounding_box, box, common_point, contains,
                       dual_convert, empty_h, hpoly, intersect, interval, maximize, product,
                       to_h, to_v, vpoly)
from .representation import (Representation, UnionCertificate, VerifyReport,
                             code_of_representation, verify_representation)

__all__ = [name for name in dir() if not name.startswith("_")]
