"""Parabolicity/hyperbolicity toolkit for radially controlled submanifolds.

The heavy lifting lives in the C++ extension ``parhyp._core``; this package
re-exports its surface.
"""

from ._core import (
    DomainError,
    RadialProfile,
    SchemaError,
    UnknownExampleError,
    WarpingDescriptor,
    balance,
    capacity_limit,
    catalog,
    classify_model,
    classify_submanifold,
    drifted_capacity,
    effective_conductance,
    eta,
    eval_warping,
    hessian_radial,
    lambda_plain,
    lambda_tangency,
    potential_bvp,
    potential_closed_form,
    radial_curvature,
    simulate_hitting,
    sphere_volume,
    unit_sphere_volume,
)

__all__ = [
    "DomainError",
    "RadialProfile",
    "SchemaError",
    "UnknownExampleError",
    "WarpingDescriptor",
    "balance",
    "capacity_limit",
    "catalog",
    "classify_model",
    "classify_submanifold",
    "drifted_capacity",
    "effective_conductance",
    "eta",
    "eval_warping",
    "hessian_radial",
    "lambda_plain",
    "lambda_tangency",
    "potential_bvp",
    "potential_closed_form",
    "radial_curvature",
    "simulate_hitting",
    "sphere_volume",
    "unit_sphere_volume",
]

__version__ = "0.1.0"
