"""Twisted semigroup algebras of diagram monoids, exactly.

Builds partition, Brauer and Temperley-Lieb monoids, computes Green's
relations generically and in closed form, constructs cell data for the
delta-twisted semigroup algebras from per-D-class group cell data, and
analyzes semisimplicity through twisted sandwich matrices, Gram
determinants, and an independent trace-form oracle.  All arithmetic is
exact (rationals and polynomials in delta); every construction is
cross-checked against brute-force oracles at small rank.
"""

__version__ = "0.1.0"
