"""Beurling generalized number systems and their zeta functions."""

from .semigroup import (
    AxiomAParams,
    ElementTable,
    PrimeSystem,
    build_system,
    enumerate_elements,
    fit_axiom_a,
)

__all__ = [
    "AxiomAParams",
    "ElementTable",
    "PrimeSystem",
    "build_system",
    "enumerate_elements",
    "fit_axiom_a",
]

__version__ = "0.1.0"
