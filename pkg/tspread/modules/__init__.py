"""Computational core: monomials, segments, decompositions, homological data, classification and the oracle."""
