"""Numerical experiments on the explicit local models."""

from .config import BumpProfile, NumericConfig
from .models import LocalPoint, branch_points, convexity_check, eval_local_model, fiber_euler

__all__ = ["BumpProfile", "NumericConfig", "LocalPoint", "branch_points", "convexity_check",
           "eval_local_model", "fiber_euler"]
