"""ultralogic-lab: finite shadows of a nonstandard deduction framework.

Subpackages cover word encoding, a conjunction-only deductive system,
orthomodular lattice checks, truncated infinitesimal arithmetic, smooth
step gluing, and the prime-coded subparticle algebra.
"""

__version__ = "0.1.0"
