"""Exact lattice-polytope toolkit for reflexive simplices, Ehrhart data and triangulation certificates."""
