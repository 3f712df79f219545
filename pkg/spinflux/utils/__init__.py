"""CLI plumbing: argument parsing, logging, output paths and seeded sampling.

Note: Functions are imported lazily to avoid circular dependencies.
Import directly from submodules when needed:
  - from spinflux.utils.sampling import RationalSampler
  - from spinflux.utils.metadata import write_json
"""

# Only export module names, not individual functions
__all__ = [
    "logging_setup",
    "metadata",
    "parser",
    "paths",
    "sampling",
]
