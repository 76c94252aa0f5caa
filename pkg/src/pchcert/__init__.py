"""Exact certificates for the boundary map into PCH^1 of a product of Neron polygons."""

__version__ = "0.1.0"
