"""Exact computations with DGLA pairs: Maurer-Cartan sets over Artinian rings,
twisted cohomology, resonance ideals and representation-variety tangent spaces."""

__version__ = "0.1.0"
