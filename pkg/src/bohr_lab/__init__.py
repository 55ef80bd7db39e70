"""Bohr-type radii and inequalities for lacunary analytic functions and harmonic mappings."""
from .bohrsum import (BohrReport, Verdict, bohr_sum, bohr_sum_harmonic, check_inequality,
                      m1_pk_sum, m1_sum, m_pk_sum, m_sum, n_pk_sum)
from .errors import (AllSamplesDegenerate, BohrLabError, DomainError, EmptySeries,
                     FormatError, NoRootFound, NotSharp, ParamError, SpecMismatch,
                     WitnessInadmissible, ZeroConstantTerm)
from .extremal import (SharpnessReport, closed_form_bohr_blaschke, extremal_witness,
                       sharpness_test)
from .pseries import (HarmonicMapSpec, LacunarySeries, blaschke_coeffs, load_series, ps_div,
                      ps_mul, schur_from_params, shifted_blaschke_coeffs)
from .radii import (ClassId, ClassSpec, RadiusResult, Regime, RootRule, char_eval,
                    lemma1_residual, lemma2_residual, radius_regime, solve_radius,
                    theorem_radius)
from .schur import (Family, FuzzConfig, coeff_sq_check, dilatation_check, dilatation_partner,
                    fuzz_class, lemma4_check, lemma6_check, lift_to_class, random_schur)

__version__ = "0.1.0"
