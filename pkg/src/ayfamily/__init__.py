"""Exact constructions for the Arnoux-Yoccoz family of translation surfaces."""

__version__ = "0.1.0"
