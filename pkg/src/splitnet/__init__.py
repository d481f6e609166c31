"""Circular split networks, stable-curve dual graphs and the complexes relating them."""

from .compat import find_circular_order, pairwise_compatible, splits_of_order
from .complexes import cells_of_m0n_real, dual_intersection_complex, pbhv_complex
from .curves import DualGraphModel, arithmetic_genus, dual_from_network, is_stable
from .model import CyclicOrder, Split, WeightedSplitSystem, make_split
from .network import PlanarNetwork, add_split, build_network, n_star, verify_realization

__all__ = [
    "CyclicOrder",
    "DualGraphModel",
    "PlanarNetwork",
    "Split",
    "WeightedSplitSystem",
    "add_split",
    "arithmetic_genus",
    "build_network",
    "cells_of_m0n_real",
    "dual_from_network",
    "dual_intersection_complex",
    "find_circular_order",
    "is_stable",
    "make_split",
    "n_star",
    "pairwise_compatible",
    "pbhv_complex",
    "splits_of_order",
    "verify_realization",
]
