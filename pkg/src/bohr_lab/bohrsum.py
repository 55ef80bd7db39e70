"""Bohr-type functionals on truncated lacunary series.

Every functional is a sum of non-negative terms, so the truncated value is a
lower bound for the full series and ``value + tail_bound`` an upper bound.
Verdicts use both: ``holds`` means even the upper bound stays within the
bound, ``fails`` means the lower bound already exceeds it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, EmptySeries, SpecMismatch
from .pseries import HarmonicMapSpec, LacunarySeries
from .radii import HARMONIC, PLAIN_SERIES, USES_A, ClassId, ClassSpec

# relative allowance for floating-point round-off in verdict comparisons
ROUND_SLACK = 1e-12

_LEAD_TOL = 1e-12


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


class Functional(str, Enum):
    B = "B"
    BH = "BH"
    Mk1 = "Mk1"
    Mk = "Mk"
    Mpk = "Mpk"
    Mpk1 = "Mpk1"
    Npk = "Npk"


def leq(x: float, y: float) -> bool:
    """``x <= y`` up to :data:`ROUND_SLACK` relative round-off."""
    return x <= y + ROUND_SLACK * max(abs(x), abs(y))


def verdict_for(value: float, tail_bound: float, bound: float) -> Verdict:
    if leq(value + tail_bound, bound):
        return Verdict.HOLDS
    if not leq(value, bound):
        return Verdict.FAILS
    return Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class BohrReport:
    functional: str
    r: float
    value: float
    tail_bound: float
    bound: float
    verdict: Verdict
    margin: float

    def to_dict(self) -> dict:
        return {
            "functional": self.functional,
            "r": self.r,
            "value": self.value,
            "tail_bound": self.tail_bound,
            "bound": self.bound,
            "verdict": self.verdict.value,
            "margin": self.margin,
        }


def make_report(functional: str, r: float, value: float, tail_bound: float,
                bound: float = 1.0) -> BohrReport:
    value, tail_bound, bound = float(value), float(tail_bound), float(bound)
    return BohrReport(str(functional), float(r), value, tail_bound, bound,
                      verdict_for(value, tail_bound, bound), bound - value)


def combine(reports: list[BohrReport], functional: str, bound: float = 1.0) -> BohrReport:
    """Report for the sum of several functionals evaluated at the same radius."""
    value = math.fsum(rep.value for rep in reports)
    tail = math.fsum(rep.tail_bound for rep in reports)
    return make_report(functional, reports[0].r, value, tail, bound)


def _check_r(r: float) -> float:
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    return r


def _fsum(terms: np.ndarray) -> float:
    # exactly rounded, hence independent of summation order
    return math.fsum(terms.tolist())


def bohr_sum(f: LacunarySeries, r: float, bound: float = 1.0) -> BohrReport:
    """Majorant series ``sum |c_n| r^(pn+m)`` with its geometric tail."""
    r = _check_r(r)
    value = _fsum(np.abs(f.coeffs) * r ** f.exponents())
    tail = 0.0
    if f.tail_sup:
        tail = f.tail_sup * r ** (f.p * (f.k0 + f.n_terms) + f.m) / (1 - r ** f.p)
    return make_report(Functional.B.value, r, value, tail, bound)


def bohr_sum_harmonic(F: HarmonicMapSpec, r: float, bound: float = 1.0) -> BohrReport:
    return combine([bohr_sum(F.h, r), bohr_sum(F.g, r)], Functional.BH.value, bound)


def _refined(f: LacunarySeries, r: float, lead_mod: float, skip_lead: bool,
             functional: Functional, bound: float) -> BohrReport:
    # sum_{n>=k} |c_n| r^(pn+m) + w * sum_{n>=k(+1)} |c_n|^2 r^(p(2n-k)+m),
    # w = 1/(1+lead) + r^p/(1-r^p)
    r = _check_r(r)
    if f.n_terms == 0:
        raise EmptySeries("refined Bohr functionals need a leading coefficient")
    p, m, k, n = f.p, f.m, f.k0, f.n_terms
    x = r ** p
    weight = 1.0 / (1.0 + lead_mod) + x / (1.0 - x)
    mods = np.abs(f.coeffs)
    idx = f.indices()
    linear = _fsum(mods * r ** (p * idx + m))
    squares = mods ** 2 * r ** (p * (2 * idx - k) + m)
    square_sum = _fsum(squares[1:] if skip_lead else squares)
    value = math.fsum([linear, weight * square_sum])
    tail = 0.0
    if f.tail_sup:
        t = f.tail_sup
        tail = (t * r ** (p * (k + n) + m) / (1 - x)
                + weight * t * t * r ** (p * (k + 2 * n) + m) / (1 - x * x))
    return make_report(functional.value, r, value, tail, bound)


def _require_analytic_a(f: LacunarySeries) -> None:
    if (f.p, f.m) != (1, 0):
        raise SpecMismatch(f"expected a series in powers z^n (p=1, m=0), got p={f.p}, m={f.m}")


def m_sum(f: LacunarySeries, r: float, bound: float = 1.0) -> BohrReport:
    """Refined sum for ``f`` in ``B_k`` with the squared part starting at ``n = k``."""
    _require_analytic_a(f)
    return _refined(f, r, abs(f.lead), False, Functional.Mk, bound)


def m1_sum(f: LacunarySeries, r: float, bound: float = 1.0) -> BohrReport:
    _require_analytic_a(f)
    return _refined(f, r, abs(f.lead), True, Functional.Mk1, bound)


def m_pk_sum(h: LacunarySeries, r: float, bound: float = 1.0) -> BohrReport:
    return _refined(h, r, abs(h.lead), False, Functional.Mpk, bound)


def m1_pk_sum(h: LacunarySeries, r: float, bound: float = 1.0) -> BohrReport:
    return _refined(h, r, abs(h.lead), True, Functional.Mpk1, bound)


def n_pk_sum(g: LacunarySeries, r: float, a_lead: float, bound: float = 1.0) -> BohrReport:
    """Co-analytic companion of :func:`m_pk_sum`.

    The weight uses ``a_lead = |a_{pk+m}|`` of the analytic part ``h``, not
    the leading coefficient of ``g``.
    """
    a_lead = float(a_lead)
    if not 0.0 <= a_lead <= 1.0:
        raise DomainError(f"a_lead must lie in [0, 1], got {a_lead!r}")
    return _refined(g, r, a_lead, False, Functional.Npk, bound)


def _check_shape(spec: ClassSpec, f: LacunarySeries, role: str) -> None:
    if (f.p, f.m) != (spec.p, spec.m):
        raise SpecMismatch(f"{role}: series has p={f.p}, m={f.m}; "
                           f"{spec.id.value} expects p={spec.p}, m={spec.m}")
    if spec.k and f.k0 != spec.k:
        raise SpecMismatch(f"{role}: series starts at k0={f.k0}; {spec.id.value} expects k={spec.k}")
    if np.max(np.abs(f.coeffs)) > 1 + _LEAD_TOL or f.tail_sup > 1:
        raise SpecMismatch(f"{role}: coefficients exceed 1, series is not normalized to sup norm <= 1")
    if spec.id in USES_A and abs(abs(f.lead) - spec.a) > _LEAD_TOL:
        raise SpecMismatch(f"{role}: leading modulus {abs(f.lead)} differs from fixed a={spec.a}")


def check_inequality(spec: ClassSpec, F: HarmonicMapSpec | LacunarySeries, r: float) -> BohrReport:
    """Evaluate the functional that the class's theorem bounds and compare it to the bound.

    Harmonic classes given a single series use ``g = h`` (the unimodular
    ``lambda = 1`` family), which is admissible only when ``d = 1``.
    """
    cid = spec.id
    if cid in HARMONIC:
        if isinstance(F, LacunarySeries):
            if spec.d != 1.0:
                raise SpecMismatch(f"{cid.value} with d < 1 needs an explicit co-analytic part")
            F = HarmonicMapSpec(F, F, 1.0)
        h, g = F.h, F.g
        _check_shape(spec, h, "h")
        _check_shape(spec, g, "g")
        if cid is ClassId.Rpmd21:
            return bohr_sum_harmonic(F, r)
        if cid is ClassId.Rk25:
            return combine([m_pk_sum(h, r), n_pk_sum(g, r, abs(h.lead))], "Mpk+Npk")
        if cid is ClassId.TauK26:
            return combine([m1_pk_sum(h, r), m1_pk_sum(g, r)], "Mpk1+Mpk1")
        return combine([m_pk_sum(h, r), m_pk_sum(g, r)], "Mpk+Mpk")

    if not isinstance(F, LacunarySeries):
        raise SpecMismatch(f"{cid.value} is a class of analytic functions, got a harmonic pair")
    _check_shape(spec, F, "f")
    if cid is ClassId.RpmB:
        return bohr_sum(F, r)
    if cid is ClassId.RpmCor2:
        return bohr_sum(F, r, bound=0.5)
    if cid in PLAIN_SERIES:
        return m1_sum(F, r) if cid is ClassId.RkA1 else m_sum(F, r)
    if cid is ClassId.Vk24:
        return m1_pk_sum(F, r)
    return m_pk_sum(F, r)
