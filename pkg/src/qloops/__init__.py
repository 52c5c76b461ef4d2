"""Canonical forms and elliptic invariants for integral twisted conjugacy
classes of matrix loops, a(z) -> g(qz) a(z) g(z)^-1."""

__version__ = "0.1.0"

from .config import DEFAULT_MODULUS, DEFAULT_TOLERANCE, ModulusConfig, ToleranceConfig
from .errors import (InconsistentResonanceGraph, NonCommutingPair, NonInvertibleLeadingTerm,
                     NotConstantCocycle, NotIntegralRepresentative, NotPolynomial, QLoopsError,
                     RejectedInput, ResonanceMismatch, ShapeMismatch, SingularMatrix,
                     ValuationError, VerificationError, VerificationFailed, WindowTooShort)
from .series import (LaurentMatrix, exp_series, galois_shift, invert, log_series, multiply,
                     q_shift, twisted_conjugate)
from .spectral import (JordanData, WeightData, joint_block_decomposition, jordan_decomposition,
                       weight_decomposition)
from .resonance import (GammaExponent, LatticeSplit, ResonanceData, gamma_recognize, is_reduced,
                        lattice_split, resonance_analyze)
from .align import AlignedForm, align, check_integral, triangularize
from .descent import DescentData, descend, galois_cocycle
from .invariant import (EllipticInvariant, EPoint, atiyah_data, classify, dual_data, equivalent,
                        hom_dimension_formula, sum_data, synthesize, tensor_data)
from .intertwiner import (SolutionSpace, certificate_conjugator, hom_dimension_measured,
                          solve_intertwiners, support_bound)
