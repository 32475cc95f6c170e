"""Sharp constants for refined Bohr inequalities on the Schur class."""

__version__ = "0.1.0"
