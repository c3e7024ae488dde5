"""Decategorified bordered Heegaard Floer invariants.

Exact combinatorial algebra over F2 and integer linear algebra: strands
algebras of pointed matched circles with their Z/2 and Alexander gradings,
Grothendieck-group classes of type D structures and A-infinity modules, the
box-tensor pairing, the CFK-to-CFD translation with the satellite Alexander
polynomial identity, and the signed-intersection-matrix computation of
[CFD] and the first-homology kernel.
"""

__version__ = "0.1.0"
