"""Randomized stress tests of the inequalities and of the supporting lemmas.

Random Schur functions come from the Schur parameter recursion with every
parameter drawn uniformly from the disk of radius 0.95.  Each trial owns an
independent generator spawned from ``(seed, trial_index)``, so summaries do
not depend on scheduling or on how many workers run the trials.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bohrsum import Verdict, check_inequality, leq, m1_pk_sum
from .errors import AllSamplesDegenerate, DomainError, ParamError
from .pseries import DEFAULT_TERMS, HarmonicMapSpec, LacunarySeries, schur_from_params
from .radii import HARMONIC, USES_A, ClassId, ClassSpec, theorem_radius

GAMMA_RADIUS = 0.95
DEGENERATE_DERIVATIVE = 1e-14
DILATATION_SLACK = 1e-9


class Family(str, Enum):
    ANALYTIC_SHIFTED = "analytic_shifted"
    HARMONIC_LAMBDA = "harmonic_lambda"
    HARMONIC_DILATATION = "harmonic_dilatation"


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 42
    trials: int = 1000
    depth: int = 6
    truncation: int = DEFAULT_TERMS
    backoff: float = 1e-6
    family: Family | None = None
    include_extremal: bool = False

    def __post_init__(self) -> None:
        for name, low in (("seed", 0), ("trials", 1), ("depth", 0), ("truncation", 1)):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < low:
                raise ParamError(f"{name} must be an integer >= {low}, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not 0.0 < self.backoff < 1.0:
            raise ParamError(f"backoff must lie in (0, 1), got {self.backoff!r}")
        if self.family is not None:
            try:
                object.__setattr__(self, "family", Family(self.family))
            except ValueError:
                raise ParamError(f"unknown family {self.family!r}") from None


@dataclass(frozen=True)
class LemmaCheck:
    lhs: float
    rhs: float
    tail_bound: float
    holds: bool


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _unit(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.random()))


def random_schur(rng: np.random.Generator, depth: int, n: int = DEFAULT_TERMS,
                 lead: float | None = None) -> np.ndarray:
    """Coefficients of a random Schur function.

    With ``lead`` given the constant term has modulus exactly ``lead`` (a
    random rotation of it); ``lead = 1`` yields a unimodular constant.
    """
    gammas = GAMMA_RADIUS * np.sqrt(rng.random(depth)) * np.exp(2j * np.pi * rng.random(depth))
    if lead is not None:
        if not 0.0 <= lead <= 1.0:
            raise DomainError(f"lead must lie in [0, 1], got {lead!r}")
        rotation = _unit(rng)
        if lead == 1.0:
            out = np.zeros(n, dtype=complex)
            out[0] = rotation
            return out
        gammas = np.concatenate(([lead * rotation], gammas[1:]))
    return schur_from_params(gammas, n)


def lift_to_class(t, p: int, m: int, k: int, *, schur: bool = False,
                  tail_sup: float = 1.0) -> LacunarySeries:
    """``z^(pk+m) t(z^p)`` as a lacunary series starting at index ``k``."""
    return LacunarySeries(p, m, k, t, tail_sup, schur)


def dilatation_partner(h: LacunarySeries, s, d: float) -> LacunarySeries:
    """Co-analytic part ``g`` with ``g' = d s(z^p) h'`` and no constant term.

    Termwise: ``b_i = d / e_i * sum_{j+n=i} s_j e_n a_n`` with ``e_n = pn+m``.
    The integrated dilatation bound gives ``|b_i| <= d``, which becomes the
    tail bound of the result.
    """
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"d must lie in [0, 1], got {d!r}")
    n = h.n_terms
    e = h.exponents().astype(float)
    s = np.asarray(s, dtype=complex)[:n]
    conv = np.convolve(s, e * h.coeffs)[:n]
    b = np.zeros(n, dtype=complex)
    nz = e > 0
    b[nz] = d * conv[nz] / e[nz]
    return LacunarySeries(h.p, h.m, h.k0, b, d * min(h.tail_sup, 1.0))


def _parseval_rem(coeffs: np.ndarray) -> float:
    # a Schur function has H^2 norm at most 1
    return max(0.0, 1.0 - math.fsum((np.abs(coeffs) ** 2).tolist()))


def lemma4_check(b, b0: complex | None = None, R: float = 1.0, p: int = 1,
                 truncated: bool = True) -> LemmaCheck:
    """``sum_{k>=1} |b_k|^2 R^(pk) <= R^p (1-|b_0|^2)^2 / (1 - |b_0|^2 R^p)``.

    With ``truncated`` the list is a prefix of a Schur function and the
    unseen terms are bounded through Parseval; otherwise the list is the
    whole function.
    """
    b = np.asarray(b, dtype=complex).reshape(-1)
    if b.size == 0:
        raise DomainError("empty coefficient list")
    if not 0.0 < R <= 1.0:
        raise DomainError(f"R must lie in (0, 1], got {R!r}")
    if int(p) != p or p < 1:
        raise DomainError(f"p must be a positive integer, got {p!r}")
    c0 = abs(b[0] if b0 is None else b0)
    if c0 > 1:
        raise DomainError("|b_0| exceeds 1")
    x = R ** p
    mods2 = np.abs(b[1:]) ** 2
    lhs = math.fsum((mods2 * x ** np.arange(1, b.size)).tolist())
    rhs = x * (1 - c0 * c0) ** 2 / (1 - c0 * c0 * x) if c0 * c0 * x < 1 else 0.0
    tail = x ** b.size * _parseval_rem(b) if truncated else 0.0
    return LemmaCheck(lhs, rhs, tail, leq(lhs + tail, rhs))


def lemma6_check(a, r: float, truncated: bool = True) -> LemmaCheck:
    """Refined Bohr sum of a Schur function against ``|a_0| + r/(1-r) (1-|a_0|^2)``."""
    a = np.asarray(a, dtype=complex).reshape(-1)
    if a.size == 0:
        raise DomainError("empty coefficient list")
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    c0 = abs(a[0])
    if c0 > 1:
        raise DomainError("|a_0| exceeds 1")
    lhs = m1_pk_sum(LacunarySeries(1, 0, 0, a, 0.0), r).value
    rhs = c0 + r / (1 - r) * (1 - c0 * c0)
    tail = 0.0
    if truncated:
        rem = _parseval_rem(a)
        n = a.size
        weight = 1 / (1 + c0) + r / (1 - r)
        # Cauchy-Schwarz for the linear part, Parseval for the squares
        tail = math.sqrt(rem) * r ** n / math.sqrt(1 - r * r) + weight * rem * r ** (2 * n)
    return LemmaCheck(lhs, rhs, tail, leq(lhs + tail, rhs))


def coeff_sq_check(h: LacunarySeries, g: LacunarySeries, d: float, r: float) -> LemmaCheck:
    """``sum_{n>k0} |b_n|^2 r^(p(n-k0)) <= d^2 sum_{n>k0} |a_n|^2 r^(p(n-k0))``.

    The unseen part of the left side is bounded with ``g.tail_sup``; the
    right side is truncated, which only makes the check stricter.
    """
    if (h.p, h.m, h.k0) != (g.p, g.m, g.k0):
        raise DomainError("h and g must share p, m and k0")
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"d must lie in [0, 1], got {d!r}")
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r!r}")
    x = r ** h.p
    n = min(h.n_terms, g.n_terms)
    w = x ** np.arange(1, n)
    lhs = math.fsum((np.abs(g.coeffs[1:n]) ** 2 * w).tolist())
    rhs = d * d * math.fsum((np.abs(h.coeffs[1:n]) ** 2 * w).tolist())
    tail = g.tail_sup ** 2 * x ** n / (1 - x) if g.tail_sup else 0.0
    return LemmaCheck(lhs, rhs, tail, leq(lhs + tail, rhs))


@dataclass(frozen=True)
class DilatationCheck:
    max_ratio: float
    holds: bool
    skipped: int
    samples: int


def dilatation_check(h: LacunarySeries, g: LacunarySeries, d: float,
                     n_radii: int = 9, n_angles: int = 64) -> DilatationCheck:
    """Sample ``|g'| / |h'|`` on circles of radius 0.1 .. 0.9; a sanity check, not a proof."""
    if n_radii < 8 or n_angles < 8:
        raise DomainError("sampling grid needs at least 8 radii and 8 angles")
    radii = np.linspace(0.1, 0.9, n_radii)
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    z = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
    dh = np.abs(h.derivative(z))
    dg = np.abs(g.derivative(z))
    ok = dh >= DEGENERATE_DERIVATIVE
    if not ok.any():
        raise AllSamplesDegenerate("h' vanishes at every sample point")
    max_ratio = float(np.max(dg[ok] / dh[ok]))
    return DilatationCheck(max_ratio, max_ratio <= d + DILATATION_SLACK,
                           int((~ok).sum()), int(z.size))


def default_family(spec: ClassSpec) -> Family:
    if spec.id not in HARMONIC:
        return Family.ANALYTIC_SHIFTED
    if spec.id is ClassId.Rk25 or (spec.id is ClassId.Rpmd21 and spec.d != 1.0):
        return Family.HARMONIC_DILATATION
    return Family.HARMONIC_LAMBDA


def _check_family(spec: ClassSpec, family: Family) -> None:
    cid = spec.id
    if cid not in HARMONIC:
        allowed = {Family.ANALYTIC_SHIFTED}
    elif cid in (ClassId.Rpmd21, ClassId.Rk25):
        allowed = {Family.HARMONIC_DILATATION}
        if spec.d == 1.0:
            allowed.add(Family.HARMONIC_LAMBDA)
    else:
        allowed = {Family.ANALYTIC_SHIFTED, Family.HARMONIC_LAMBDA}
    if family not in allowed:
        names = ", ".join(sorted(f.value for f in allowed))
        raise ParamError(f"family {family.value} does not fit {cid.value} (d={spec.d}); use {names}")


def _forces_zero_lead(spec: ClassSpec, family: Family) -> bool:
    # |g'| <= d|h'| with g' = d s h' gives |b_0| = d |s(0)| |a_0|; equal leading
    # moduli then need a_0 = 0 unless s(0) is unimodular
    return spec.id is ClassId.Rpmd21 and family is Family.HARMONIC_DILATATION


def _sample_t(rng, spec: ClassSpec, cfg: FuzzConfig, zero_lead: bool) -> np.ndarray:
    n = cfg.truncation
    if zero_lead:
        t = random_schur(rng, cfg.depth, n)
        return np.concatenate(([0.0], t[:-1]))
    return random_schur(rng, cfg.depth, n, spec.a if spec.id in USES_A else None)


def _extremal_t(spec: ClassSpec, cfg: FuzzConfig, zero_lead: bool) -> np.ndarray:
    t = np.zeros(cfg.truncation, dtype=complex)
    if zero_lead:
        t[1] = 1.0
    elif spec.id in USES_A and spec.a < 1.0:
        a = spec.a
        t[0] = a
        t[1:] = -(1 - a * a) * a ** np.arange(cfg.truncation - 1)
    else:
        t[0] = 1.0
    return t


def _build_trial(spec: ClassSpec, cfg: FuzzConfig, family: Family, index: int):
    rng = trial_rng(cfg.seed, index)
    zero_lead = _forces_zero_lead(spec, family)
    extremal = cfg.include_extremal and index == 0
    t = _extremal_t(spec, cfg, zero_lead) if extremal else _sample_t(rng, spec, cfg, zero_lead)
    h = lift_to_class(t, spec.p, spec.m, spec.k)
    if spec.id not in HARMONIC:
        return h
    if family is Family.HARMONIC_LAMBDA:
        lam = 1.0 if extremal else _unit(rng)
        return HarmonicMapSpec(h, h.with_coeffs(lam * h.coeffs), 1.0)
    if family is Family.HARMONIC_DILATATION:
        if extremal:
            s = np.ones(1)
        else:
            s = random_schur(rng, cfg.depth, cfg.truncation)
        return HarmonicMapSpec(h, dilatation_partner(h, s, spec.d), spec.d)
    g = h if extremal else lift_to_class(_sample_t(rng, spec, cfg, False), spec.p, spec.m, spec.k)
    return HarmonicMapSpec(h, g, spec.d)


def fuzz_class(spec: ClassSpec, cfg: FuzzConfig = FuzzConfig(), workers: int | None = None) -> dict:
    """Check the class inequality on random members at ``radius * (1 - backoff)``."""
    family = cfg.family or default_family(spec)
    _check_family(spec, family)
    radius = theorem_radius(spec)
    r = radius * (1 - cfg.backoff)

    def run(index: int):
        return check_inequality(spec, _build_trial(spec, cfg, family, index), r)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run, range(cfg.trials)))
    else:
        reports = [run(i) for i in range(cfg.trials)]
    counts = {v: 0 for v in Verdict}
    for rep in reports:
        counts[rep.verdict] += 1
    return {
        "class": spec.to_dict(),
        "trials": cfg.trials,
        "holds": counts[Verdict.HOLDS],
        "fails": counts[Verdict.FAILS],
        "inconclusive": counts[Verdict.INCONCLUSIVE],
        "worst_margin": min(rep.margin for rep in reports),
        "seed": cfg.seed,
        "family": family.value,
        "r": r,
        "radius": radius,
    }
