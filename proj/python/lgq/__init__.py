"""Python interface to the stationary-surface toolkit.

Thin wrapper over the compiled ``_lgq`` extension.  Functions that the core
reports as JSON strings are decoded into plain dicts here; numeric kernels
(gap, metrics, curvature, indices) pass straight through.
"""

import json as _json

try:
    from . import _lgq  # wheel layout: extension lives inside the package
except ImportError:
    import _lgq  # build-tree layout: extension sits next to the package dir

LgqError = _lgq.LgqError
catalog_manifest = _lgq.catalog_manifest
catalog_names = _lgq.catalog_names
conj_similar = _lgq.conj_similar
gauss_K = _lgq.gauss_K
hermitian_gap = _lgq.hermitian_gap
hyperplane_metric = _lgq.hyperplane_metric
local_index = _lgq.local_index
metric_ds2 = _lgq.metric_ds2
metric_g = _lgq.metric_g
write_surface = _lgq.write_surface

__all__ = [
    "LgqError",
    "catalog_manifest",
    "catalog_names",
    "chart",
    "classify_hyperplane",
    "classify_matrix",
    "conj_similar",
    "gauss_K",
    "gen_surface",
    "hermitian_gap",
    "hyperplane_area",
    "hyperplane_metric",
    "local_index",
    "metric_ds2",
    "metric_g",
    "solve_ef",
    "total_curvature",
    "validate_wdata",
    "write_surface",
]


def classify_matrix(a, b, c, d):
    """Conjugate-similarity class of [[a, b], [c, d]], as a dict."""
    return _json.loads(_lgq.classify_matrix(a, b, c, d))


def classify_hyperplane(a1, a2, a3, a4):
    """Orbit classification of the hyperplane with pole (a1, a2, a3, a4)."""
    return _json.loads(_lgq.classify_hyperplane(a1, a2, a3, a4))


def chart(z1, z2, z3, z4):
    """Chart coordinates (w1, w2) of a quadric point, as a dict."""
    return _json.loads(_lgq.chart(z1, z2, z3, z4))


def hyperplane_area(case, param=0.0, kmax=8):
    """Exhaustion-certified total area for a hyperplane metric case."""
    return _json.loads(_lgq.hyperplane_area(case, param, kmax))


def solve_ef(P, Q):
    """Certified solution set of f(w) = conj(w) for f = P/Q, with bounds."""
    return _json.loads(_lgq.solve_ef(list(P), list(Q)))


def validate_wdata(catalog="", psi1="", psi2="", f="", grid=40):
    """Run the representation-data validation report."""
    return _json.loads(_lgq.validate_wdata(catalog, psi1, psi2, f, grid))


def total_curvature(catalog, kmax=6):
    """Total Gauss curvature of a catalog surface, with convergence stages."""
    return _json.loads(_lgq.total_curvature(catalog, kmax))


def gen_surface(catalog, nu=64, nv=64, dual=False, allow_cut=False):
    """Integrate a catalog surface and summarize the resulting mesh."""
    return _json.loads(_lgq.gen_surface(catalog, nu, nv, dual, allow_cut))
