"""Exact arithmetic for the pentagram map on twisted polygons.

Quick start::

    from pentagram import QQ, random_coords, map_coords, invariants_H

    c = random_coords(5, QQ, seed=1)
    assert invariants_H(map_coords(c)) == invariants_H(c)
"""

from .curves import (
    GenusReport, GoodFiberReport, NormalFormCurve, build_curve, count_points,
    count_points_bruteforce, fit_l_polynomial, generic_genus, genus_fit, genus_report,
    good_fiber_check, hasse_weil_ok, lemma_fiber,
)
from .dual import DualNumber, evaluate_with_partials
from .errors import *  # noqa: F401,F403
from .experiments import CensusReport, HeightSeries, census, fiber_periods, height_growth
from .fields import GF, QQ, parse_element, parse_field
from .lax import (
    InvariantVector, invariants_H, jacobian_rank_H, lax_conjugacy_holds, lax_L, lax_P,
    monodromy_T, spectral_poly, zero_curvature_holds,
)
from .linalg import Mat3, charpoly3, nullspace
from .pentagram import (
    VERTEX_SHIFT, OrbitRecord, OrbitStatus, map_coords, map_refactor, map_vertices,
    map_vertices_coords, orbit, scaling_act,
)
from .polygon import (
    CornerCoords, DifferenceOperator, TwistedPolygon, corner_coords_from_operator,
    corner_coords_from_vertices, delta, polygon_from_coords, random_coords,
    random_polygon, validate,
)
from .polys import BivariatePoly, LaurentPoly
from .projective import ProjLine, ProjPoint, collinear, cross_ratio4, join, meet

__version__ = "0.1.0"
