"""Trace-based repair of Reed-Solomon codes: one erasure, and two erasures by collaboration."""

from .cluster_sim import Cluster, spawn
from .dual_erasure import (DEPTH_ONE, DEPTH_TWO, build_dual_plan, run_depth_one, run_depth_two,
                           run_dual)
from .report import BandwidthReport
from .rs_code import CheckSpec, CodeParams, encode, full_length_code, interpolate_decode
from .single_repair import build_single_plan, recover_single, repair_single
from .tower import Tower, make_tower

__all__ = [
    "BandwidthReport", "CheckSpec", "Cluster", "CodeParams", "DEPTH_ONE", "DEPTH_TWO", "Tower",
    "build_dual_plan", "build_single_plan", "encode", "full_length_code", "interpolate_decode",
    "make_tower", "recover_single", "repair_single", "run_depth_one", "run_depth_two", "run_dual", "spawn",
]
