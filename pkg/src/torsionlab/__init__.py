"""Exact Reidemeister torsion of chain complexes and zero-surgery
manifolds, with the Conway polynomial as the verifiable endpoint.

The package computes, in exact arithmetic over the rationals and the
rational-function field in one variable:

* the torsion isomorphism from the determinant line of a finite chain
  complex to the determinant line of its homology, with its parity sign,
  plus the fusion and duality operators on determinant lines;
* torsions of Euler structures on twisted CW data, their characteristic
  classes, canonical Euler structures, the absolute torsion, the duality
  scalar product, the canonical involution, and torsion phases;
* Conway polynomials of knots two independent ways: through the surgery
  torsion of the knot's zero-surgery manifold, and through skein
  resolution of the planar diagram, which must agree coefficient for
  coefficient.
"""

from .chain import (ChainComplex, DetLineCoord, GradedDims, HomologyData,
                    alpha_beta, compute_homology, complex_to_text, dualize,
                    duality_sign, fuse, fusion_sign, parse_complex, sign_N,
                    torsion_phi)
from .cw import (AbsoluteTorsion, EulerStructure, FlatBundle, HomOrientation,
                 TwistedCWComplex, absolute_torsion, canonical_euler,
                 char_class_base, cw_to_text, involution_bar_det, parse_cw,
                 phase, pr_product, torsion_euler, twist, untwisted_betti)
from .diagrams import (FIXTURE_NAMES, KnotDiagram, load_fixture, parse_pd)
from .knots import (TorsionRep, WirtingerPresentation, absolute_torsion_at,
                    alexander_poly, build_surgery_complex, canonical_normalize,
                    conway_from_torsion, conway_symbolic, exterior_torsion,
                    surgery_torsion, wirtinger)
from .linalg import Matrix, det_exact, kernel_image_bases
from .scalars import (LaurentPoly, RatFunc, bar_involution, double_powers,
                      evaluate_at, parse_laurent, parse_ratfunc, ratfunc_arith)
from .skein import ConwayPoly, SkeinStats, conway_skein

__version__ = "0.1.0"
