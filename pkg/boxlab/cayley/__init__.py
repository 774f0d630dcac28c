from .CayleyGraph import EDGE_LIST_HEADER, CayleyGraph, inverse_pairing
from .metrics import (
    adjacency_matrix,
    all_pairs_diameter,
    ball_growth,
    central_distortion_heisenberg,
    cheeger_exact,
    compute_metrics,
    diameter,
    distance_spectrum,
    girth,
    spectral_gap,
    sweep_cut,
    word_ball_layers,
)

build = CayleyGraph.build
