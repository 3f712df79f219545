"""Theorem records and the engines that check them."""

__all__ = [
    "census",
    "crosschecks",
    "obstruction",
    "report",
    "theorems",
    "verifier",
]
