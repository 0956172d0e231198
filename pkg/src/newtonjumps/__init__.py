"""Exact Newton-diagram geometry and unit-jump deformation sequences."""

from .diagram import (
    Diagram,
    DiagramError,
    LatticePoint,
    NotNewtonDiagram,
    PaddingUnstable,
    Segment,
    SignedChainSpec,
    deform,
    diagram_from_points,
    lattice_count,
    lies_below,
    nu_axes,
    nu_general,
    parse_diagram,
    pick_area,
    realize_chain,
    triangle,
    twice_area_between,
)
from .eea import (
    EeaError,
    EeaLine,
    EeaTable,
    Shape,
    derived_table_N,
    derived_table_pj,
    eea_table,
    ensure_head_above_one,
    shift_line,
    short_eea_classify,
    sign_pq,
)
from .oracle import AttainableSet, OracleError, enumerate_attainable, verify_theorem
from .planner import ChainPlan, PlanError, PlanStep, check_full_coverage, search_chain, validate_chain
from .procedures import (
    JumpSequence,
    ProcedureError,
    expected_unit_jumps,
    gamma_k,
    points_PD,
    procedure1,
    procedure2,
    procedure2_full,
    procedure3,
    procedure4,
    procedure5,
    procedure6_master,
)

__version__ = "0.1.0"
