"""Exact Green polynomials of Weyl groups, elliptic pairings, and pin-cover
character data, with a verifying triangular solver for the defining matrix
identity K(q) L(q) K(q)^t = Omega(q)."""

__version__ = "0.1.0"
