"""Normal forms, the geometry class catalog and curvature contractions.

Note: Functions are imported lazily to avoid circular dependencies.
Import directly from submodules when needed:
  - from spinflux.geometry.catalog import ...
  - from spinflux.geometry.curvature import ...
"""

# Only export module names, not individual functions
__all__ = [
    "catalog",
    "curvature",
    "forms",
]
