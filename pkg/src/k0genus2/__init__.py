"""Integral K-theory rings of genus-two moduli, recomputed from localization and strong Groebner bases."""

__version__ = "0.1.0"
