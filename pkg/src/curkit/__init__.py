"""Tools for convex union representable simplicial complexes and convex codes."""
from .collapse import (INDETERMINATE, NO, CollapseCertificate, collapses_onto,
                       elementary_collapse, free_faces, is_collapsible)
from .complex import (Code, SimplicialComplex, alexander_dual, cone, detect_suspensions, empty,
                      face, from_facets, is_cone, join, link, path, restriction, simplex,
                      simplex_boundary, star, stellar_subdivide_facet, suspension,
                      suspension_power, void)
from .constructions import (build_cone_over_star, cone_representation, generic_representation,
                            join_representation, path_representation, replay,
                            suspension_power_representation, tree_representation)
from .geometry import (HPolytope, Representation, VPolytope, code_of_representation, covers,
                       dual_convert, lp_feasible, nerve_of_collection, verify_representation)
from .homology import GF2, RATIONAL, leray_number, reduced_betti
from .screen import Kind, ScreenOptions, obstruction_sites, screen_code, screen_complex
from .textio import format_code, format_complex, parse_code, parse_complex

__all__ = [name for name in dir() if not name.startswith("_")]
