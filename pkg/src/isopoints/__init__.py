"""Closed points, divisors and Riemann-Roch spaces on hyperelliptic curves over Q."""

__version__ = "0.1.0"
