"""ellgenus: exact-arithmetic complex elliptic genera.

Computes the universal elliptic genus over Q[A,B,C,D] (weights 1..4), its
level-N and classical specializations, q-expansions as Jacobi forms, the
level-N relation ideals and their Poincare series, and blow-up invariance
checks — everything over the rationals, no floating point anywhere.
"""

__version__ = "0.1.0"
