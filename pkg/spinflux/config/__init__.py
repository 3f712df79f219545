"""Run configuration for spinflux commands.

Note: RunConfig is not re-exported here because it validates class ids
against the geometry catalog, which itself imports the enums below.
Import it from spinflux.config.configs.
"""

from spinflux.config.mode import Command, Derivative, Mode, OutputFormat

__all__ = [
    # Enums
    "Command",
    "Derivative",
    "OutputFormat",
    # Config classes
    "Mode",
]
