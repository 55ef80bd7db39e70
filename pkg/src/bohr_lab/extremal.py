"""Extremal witnesses and sharpness checks."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .bohrsum import check_inequality
from .errors import DomainError, NotSharp, WitnessInadmissible
from .pseries import (DEFAULT_TERMS, HarmonicMapSpec, LacunarySeries, blaschke_coeffs,
                      shifted_blaschke_coeffs)
from .radii import ClassId, ClassSpec, regime_case, theorem_radius

DEFAULT_EPS = 1e-3
DEFAULT_TOL = 1e-8

# witness = shifted Blaschke whose a maximises the M1-type sum at the radius
_M1_OPTIMAL = frozenset({ClassId.RkA1, ClassId.Vk24, ClassId.TauK26})
# witness = the monomial z^(pk+m)
_MONOMIAL = frozenset({ClassId.SkA2, ClassId.Wk24, ClassId.ThetaK27})
# witness = shifted Blaschke with the class's fixed a
_FIXED_A = frozenset({ClassId.RhoA3, ClassId.EtaK24, ClassId.SigmaK28})


@dataclass(frozen=True)
class SharpnessReport:
    spec: ClassSpec
    radius: float
    witness_a: float
    value_at_radius: float
    value_above: float
    eps: float
    attained: bool
    violated_above: bool
    bound: float
    tol: float

    def to_dict(self) -> dict:
        return {
            "class": self.spec.to_dict(),
            "radius": self.radius,
            "witness_a": self.witness_a,
            "value_at_radius": self.value_at_radius,
            "value_above": self.value_above,
            "eps": self.eps,
            "attained": self.attained,
            "violated_above": self.violated_above,
            "bound": self.bound,
            "tol": self.tol,
        }


def closed_form_bohr_blaschke(a: float, p: int, m: int, r: float) -> float:
    """Bohr sum of ``z^m (z^p - a) / (1 - a z^p)`` summed in closed form."""
    a, r = float(a), float(r)
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"a must lie in [0, 1], got {a!r}")
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    x = r ** p
    return r ** m * (a + (1 - a * a) * x / (1 - a * x))


def blaschke_optimal_a(x: float) -> float:
    """Maximiser over ``a`` of ``a + (1-a^2) x / (1 - a x)`` for ``x = r^p`` in (0, 1)."""
    return (1 - math.sqrt(1 - x * x) / math.sqrt(2)) / x


def _admissible(a: float, spec: ClassSpec) -> float:
    if not 0.0 <= a <= 1.0:
        raise WitnessInadmissible(f"{spec.id.value}: extremal parameter a={a} lies outside [0, 1]")
    return a


def _pair(h: LacunarySeries) -> HarmonicMapSpec:
    # lambda = 1; the functionals see only coefficient moduli
    return HarmonicMapSpec(h, h, 1.0)


def extremal_witness(spec: ClassSpec, n: int = DEFAULT_TERMS):
    """Return ``(witness, a)`` for a sharp class.

    Harmonic classes get the pair ``h = g``.  Raises :class:`NotSharp` for
    ``Rk25`` and for ``Rpmd21`` with ``d < 1``.
    """
    cid = spec.id
    p, m, k = spec.p, spec.m, spec.k
    if cid is ClassId.Rk25:
        raise NotSharp("Rk25: no extremal function is claimed")
    if cid is ClassId.Rpmd21 and spec.d != 1.0:
        raise NotSharp("Rpmd21: sharpness is claimed only for d = 1")
    radius = theorem_radius(spec)

    if cid in _M1_OPTIMAL:
        x = radius ** p
        a = _admissible((1 - x) / (2 * x), spec)
        h = shifted_blaschke_coeffs(a, p, m, k, n)
    elif cid in _MONOMIAL:
        a = 1.0
        h = shifted_blaschke_coeffs(1.0, p, m, k, n)
    elif cid in _FIXED_A:
        a = spec.a
        h = shifted_blaschke_coeffs(a, p, m, k, n)
    else:
        # p-symmetric families: z^m in the first regime, optimal Blaschke otherwise
        if cid is not ClassId.RpmB and regime_case(p, m, 1.0) == 1:
            a = 1.0
        else:
            a = _admissible(blaschke_optimal_a(radius ** p), spec)
        h = blaschke_coeffs(a, p, m, n)
    return (_pair(h) if spec.harmonic else h), a


def sharpness_test(spec: ClassSpec, eps: float | None = None,
                   tol: float = DEFAULT_TOL) -> SharpnessReport:
    """Evaluate the class functional on its witness at the radius and just above it."""
    witness, a = extremal_witness(spec)
    radius = theorem_radius(spec)
    if eps is None:
        eps = min(DEFAULT_EPS, (1 - radius) / 10)
    eps = float(eps)
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    if radius + eps >= 1:
        raise DomainError(f"radius + eps = {radius + eps} is not inside the unit disk")
    at = check_inequality(spec, witness, radius)
    above = check_inequality(spec, witness, radius + eps)
    attained = abs(at.value - at.bound) <= tol and at.tail_bound <= tol
    return SharpnessReport(spec, radius, a, at.value, above.value, eps, attained,
                           above.value > above.bound, at.bound, tol)
