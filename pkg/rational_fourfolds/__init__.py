"""Exact rational homotopy of simply connected four-manifolds and their gauge spaces."""

__version__ = "0.1.0"
