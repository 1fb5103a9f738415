"""Reduce NCL reconfiguration questions to unit-square robot motion planning and check the reduction."""

from .embed import GridEmbedding, check_embedding, embed, lift_orientation, project_orientation
from .gadgets import AND, CONNECTOR, OR, make_gadget, verify_gadget_semantics, verify_structural_lemmas
from .motion import (Instance, PathPlan, replay_plan, solve_labeled, solve_multi_to_multi,
                     solve_multi_to_single, solve_multi_to_single_restricted, solve_single_to_single)
from .ncl import (ConstraintGraph, Orientation, enumerate_valid_orientations, solve_edge_to_edge,
                  solve_full_to_edge, solve_full_to_full, validate_graph)
from .reducer import crosscheck, multiconfig_to_orientation, orientation_to_multiconfig, reduce

__version__ = "0.1.0"
