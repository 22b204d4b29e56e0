"""Exact toric geometry via quiver representations.

Subpackages cover integer linear algebra (latcore), rational cones and fans
(polycone), affine and projective toric constructions (torvar), quiver
representation moduli (quivrep), binomial ideals (binom), McKay quivers and
G-constellations (mckay), and quivers of sections (qsec).  Everything runs on
exact integer or rational arithmetic; there is no floating point anywhere.
"""

__version__ = "0.1.0"
