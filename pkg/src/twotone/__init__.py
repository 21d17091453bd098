"""Two-tone dihedral colorings of link diagrams."""

__version__ = "0.1.0"
