"""Exact arithmetic kernel."""

from .poly import IntPolynomial, resultant
from .roots import (
    HOUSE_BOUND,
    INF,
    QuadIrrBound,
    RootInterval,
    isolate_real_roots,
    refine,
    sign_at,
    sturm_count,
)
