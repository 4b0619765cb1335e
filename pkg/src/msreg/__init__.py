"""Computational toolkit for surfaces of maximal sectional regularity."""
