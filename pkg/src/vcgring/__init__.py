"""Integral cohomology rings of virtually cyclic groups F⋊Z.

Two independent routes to the same answers:

* a closed-form evaluator for the known formulas (``closedform``), and
* a resolution-based verifier that recomputes small cases from explicit
  cochain complexes with exact integer linear algebra (``oracle``).

The command-line entry point (``vcgring``) exposes both and can
cross-check one against the other.
"""

from .intlinalg import FinAb, IntMatrix

__all__ = ["FinAb", "IntMatrix"]

__version__ = "0.1.0"
