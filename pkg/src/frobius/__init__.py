"""Spider diagrams for interacting Frobenius algebras, with exact group-algebra semantics."""

__version__ = "0.1.0"
