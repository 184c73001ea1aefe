"""Sieve weights, pseudo-random measures and prime pattern search over F_q[t]."""

__version__ = "0.1.0"
