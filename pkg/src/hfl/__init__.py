"""Link Floer homology (hat version, GF(2)) from multi-pointed Heegaard diagrams."""

__version__ = "0.1.0"
