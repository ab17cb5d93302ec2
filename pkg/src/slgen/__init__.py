"""Two-element generating sets for traceless-matrix Lie algebras over
finite fields, with exact Lie-closure certificates and verifiers for the
characteristic-3 (n=3) and characteristic-2 (n=4) obstructions."""

__version__ = "0.1.0"
