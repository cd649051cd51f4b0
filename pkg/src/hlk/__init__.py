"""Exact-arithmetic toolkit for polarized Lefschetz structures.

Finite bigraded cohomology models over Q(i), the operator Lie algebras
generated by their Lefschetz sl2-triples, relative Lie algebra
cohomology with its Hodge bigrading, and an assembler that combines
per-representation diamonds into a global one.
"""

__version__ = "0.1.0"
