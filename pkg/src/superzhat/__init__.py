"""Exact sl(2|1) q-series invariants of plumbed 3-manifolds.

The main entry points:

- :func:`zhat_closed` / :func:`zhat_all_labels` for closed plumbed manifolds,
- :func:`fk` and :func:`torus_fk` for knot complements,
- :func:`dehn_surgery` and :func:`glue` for surgery and gluing,
- :func:`find_good_chambers` and :func:`apply_move` for chambers and moves.
"""

from .chambers import ChamberAssignment, check_chamber, find_good_chambers, is_copositive
from .knotfk import (FkDecomposition, KnotSeries, boundary_action, fk, framed_unknot_series,
                     knot_chambers, solid_torus_series, zhat_knot)
from .plumbing import (LabelPair, PlumbingGraph, SeifertData, apply_move, brieskorn_seifert,
                       build_matrix, enumerate_labels, graph_from_dict, homology, is_generic,
                       is_weakly_negative_definite, linear_graph, load_graph, load_seifert,
                       seifert_to_graph, signature_of, smith_form, zero_label)
from .qseries import (TriSeries, Window, from_json, from_text, invert_vars, mirror_q, series_add,
                      series_mul, to_json, to_text)
from .surgery import (GluingContext, SurgerySlope, dehn_surgery, glue, glue_graphs,
                      glue_knot_graphs, gluing_context, laplace_minus, laplace_plus,
                      surgery_by_gluing, surgery_labels, surgery_on_knot)
from .torusknots import (TorusKnot, box_window, closed_form_series, gm_torus_epsilon, mirror_fk,
                         t2_family_table, torus_chambers, torus_fk, torus_knot_graph)
from .zhat import ZhatResult, zhat_all_labels, zhat_closed

__version__ = "0.1.0"
