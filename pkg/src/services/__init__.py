"""Services package for hakencx.

One module per concern; import the module you need, for example
``from services.phi_cd import phi``.
"""

__all__ = [
    "complex_core",
    "duality",
    "flagness",
    "haken_checks",
    "phi_cd",
    "coefficients",
    "surgery",
    "catalog",
    "serialization",
]
