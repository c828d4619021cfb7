"""KM-arcs in PG(2,q) through polar coordinates over GF(2^(2m))."""

from .gf2tower import FieldTower, make_tower, tower_from_json
from .plane import (Collineation, Line, ProjPoint, apply_collineation,
                    bilinear, line_points, line_through)
from .arcs import (ArcReport, ExponentSet, PointSet, classify_star_set,
                   gen_exponents, is_vandermonde, point_set,
                   point_set_from_json, power_sum, preceq, t_secants,
                   verify_bracket, verify_direct, verify_power_sums)
from .constructions import (build_hr, example_fixture, lift_construction,
                            recurrence_set, subplane_hyperoval, subplane_oval,
                            trace_slice)
from .autos import (group_closure, make_named, orbits, stabilizes,
                    verify_translation_arc)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
