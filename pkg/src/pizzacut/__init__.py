"""Exact discrete pizza cutting: bisect 2n planar point sets with n lines."""

from .arrangement import (Arrangement, balance, dumps_arrangement, is_almost_bisecting,
                          is_bisecting, loads_arrangement)
from .brute import count_bisections, enumerate_bisections
from .geometry import OrientedLine, Point, Region, Side, orient, side_of
from .homotopy import advance, event_schedule, make_start, plan, solve
from .instance import (InvalidInstanceError, PizzaError, PointFamily, PreconditionError,
                       dumps_family, loads_family, make_family, pad_to_odd,
                       repair_after_padding, validate)
from .separated import AlphaVector, alpha_hs_pair, alpha_pizza_cut, is_well_separated

__all__ = [
    "Arrangement", "balance", "dumps_arrangement", "is_almost_bisecting", "is_bisecting",
    "loads_arrangement", "count_bisections", "enumerate_bisections", "OrientedLine", "Point",
    "Region", "Side", "orient", "side_of", "advance", "event_schedule", "make_start", "plan",
    "solve", "InvalidInstanceError", "PizzaError", "PointFamily", "PreconditionError",
    "dumps_family", "loads_family", "make_family", "pad_to_odd", "repair_after_padding",
    "validate", "AlphaVector", "alpha_hs_pair", "alpha_pizza_cut", "is_well_separated",
]
