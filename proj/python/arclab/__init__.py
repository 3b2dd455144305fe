"""Equilibrium densities and L^p functionals on systems of circular arcs.

The heavy lifting lives in the compiled extension; this package just
re-exports it. Arcs travel as (lo, hi) angle pairs in [0, 2*pi), report
structs come back as plain dicts.
"""

from ._arclab import (
    ArcSet,
    DensityModel,
    TrigPoly,
    TSet,
    chebyshev_functionals,
    fast_decreasing_q,
    functionals,
    lemma_reports,
    lukashov_sup_ratio,
    nikolskii_value,
    random_trigpoly,
    run_experiment,
    sup_norm,
    symmetrize,
)

__all__ = [
    "ArcSet",
    "DensityModel",
    "TrigPoly",
    "TSet",
    "chebyshev_functionals",
    "fast_decreasing_q",
    "functionals",
    "lemma_reports",
    "lukashov_sup_ratio",
    "nikolskii_value",
    "random_trigpoly",
    "run_experiment",
    "sup_norm",
    "symmetrize",
]
