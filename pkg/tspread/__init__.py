"""tspread: t-spread lexsegment ideals, their decompositions, Betti numbers and Cohen-Macaulay classification."""

__version__ = "0.1.0"
