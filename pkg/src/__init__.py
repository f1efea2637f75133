"""
GenTree - configuration interaction inference

Learns, for every covered program location, the boolean formula over
configuration options that describes exactly which configurations reach it,
by iteratively refining decision trees over a small configuration sample.
"""

__version__ = "0.1.0"
