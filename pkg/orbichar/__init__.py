"""
orbichar
========
Irreducible modules, characters and modular data of lattice orbifold
vertex algebras V_Q^σ for σ of prime order.

    >>> from orbichar import example, classify, s_coefficients
    >>> L, sigma = example("a3")
    >>> classify(L, sigma).total
    9

Last updated: 17 October 2026
"""

from orbichar.catalog import example, example_names
from orbichar.characters import (
    Classification,
    OrbifoldModuleLabel,
    char_orbifold,
    char_orbifold_qexpansion,
    char_twisted_trace,
    char_untwisted_trace,
    classify,
    conformal_weight,
    permutation_orbifold,
)
from orbichar.config import Config, configure_logging
from orbichar.exceptions import OrbicharError
from orbichar.isometry import Isometry, new_isometry, restrict_to_qbar, sigma_data
from orbichar.lattice import Lattice, discriminant_group, new_lattice
from orbichar.modular_functions import eta, p_denominator, theta
from orbichar.transforms import (
    dimensions,
    s_coefficients,
    t_matrix,
    v_constants,
    verify_transforms,
    verlinde_fusion,
)

__version__ = "0.3.0"

__all__ = [
    "__version__",
    "Config",
    "configure_logging",
    "OrbicharError",
    "Lattice",
    "new_lattice",
    "discriminant_group",
    "Isometry",
    "new_isometry",
    "restrict_to_qbar",
    "sigma_data",
    "eta",
    "theta",
    "p_denominator",
    "Classification",
    "OrbifoldModuleLabel",
    "classify",
    "char_untwisted_trace",
    "char_twisted_trace",
    "char_orbifold",
    "char_orbifold_qexpansion",
    "conformal_weight",
    "permutation_orbifold",
    "t_matrix",
    "s_coefficients",
    "v_constants",
    "dimensions",
    "verlinde_fusion",
    "verify_transforms",
    "example",
    "example_names",
]
