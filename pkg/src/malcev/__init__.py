"""Exact structure-constant calculus for Malcev and pre-Malcev algebras.

The package verifies defining identities (Malcev, Sagle, Jacobi, the
four-slot pre-Malcev identity), representation and bimodule axioms,
O-operator equations and both classical Yang-Baxter equations, and it
builds the derived objects those verifications feed on: dual
representations and bimodules, semidirect products, skew and symmetric
solution tensors, bilinear forms and the compatible products they
induce.  Everything is computed over exact scalars (rationals and
Laurent polynomials), so every verdict is exact, not an approximation.
"""

__version__ = "0.1.0"
