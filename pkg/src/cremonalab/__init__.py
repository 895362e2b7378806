"""Exact arithmetic and symbolic geometry for plane birational groups.

Subpackages: cyclo (cyclotomic fields), poly / multipoly (exact polynomial
arithmetic), lattice (blow-up Picard lattices), weyl (integer lattice
automorphisms), maps (symbolic self-maps of projective ambients), jonq (the
fiber-preserving group PGL(2,k(x)) x| PGL(2,k)), corpus and tables
(classification re-verification), cli (command line).
"""

__version__ = "0.1.0"
