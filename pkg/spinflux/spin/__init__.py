"""Spin representations, spinor frames and their calibration."""

# Only export module names, not individual functions
__all__ = [
    "calibration",
    "frames",
    "spinrep",
]
