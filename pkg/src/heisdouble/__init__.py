"""Twisted Hopf algebras, twisted pairings, and twisted Heisenberg doubles.

All arithmetic is exact, over Z[q,q^-1] and Q(q).  The package builds graded
bialgebra presentations, pairs them through twisted bilinear forms, forms the
resulting smash-product (Heisenberg double) algebras, and verifies every
defining axiom and derived relation degree by degree.
"""

__version__ = "0.1.0"
