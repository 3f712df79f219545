"""Exact algebra: the parameter ring, differential forms and matrices
over it.

Note: Functions are imported lazily to avoid circular dependencies.
Import directly from submodules when needed:
  - from spinflux.algebra.symring import ...
  - from spinflux.algebra.exterior import ...
  - from spinflux.algebra.matrices import ...
"""

# Only export module names, not individual functions
__all__ = [
    "exterior",
    "matrices",
    "symring",
]
