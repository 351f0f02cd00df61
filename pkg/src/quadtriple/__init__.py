"""Exact p-adic harmonic analysis for triples of quadratic spaces.

Computes, over F = Q_p in exact arithmetic: Weil representations of SL_2^3
on Schwartz-Bruhat functions, K-invariant cell functions on the rank-3
Braverman-Kazhdan space with their Fourier transform F_X, the local period
integrals I, I_0, I_i attached to the five orbits, the basic function b_Y,
and the descended Fourier transform F_Y — each closed form cross-verified
against an independent brute-force shell-summation oracle.
"""

from .exact import Cyc, CFiniteSequence, Q, RationalFunction, cyclotomic_e
from .padic import PAdicContext, ShellRange
from .quadform import QuadraticSpace, QuadraticSpaceTriple

__all__ = [
    "Cyc",
    "CFiniteSequence",
    "Q",
    "RationalFunction",
    "cyclotomic_e",
    "PAdicContext",
    "ShellRange",
    "QuadraticSpace",
    "QuadraticSpaceTriple",
]

__version__ = "0.1.0"
