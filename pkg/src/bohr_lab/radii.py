"""Characteristic equations of the Bohr-type radii and their certified roots.

Every radius is the designated root of a polynomial expression ``F(r)``:
either the unique root in (0, 1) of a strictly decreasing ``F`` or, for the
p-symmetric families, the largest root found by a sign-change scan.  Roots
come back as :class:`RadiusResult` objects that carry the final bisection
bracket and the residual ``|F(value)|``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import DomainError, NoRootFound, ParamError


class ClassId(str, Enum):
    RkA1 = "RkA1"
    SkA2 = "SkA2"
    RhoA3 = "RhoA3"
    RpmB = "RpmB"
    RpmCor2 = "RpmCor2"
    Rpmd21 = "Rpmd21"
    Vk24 = "Vk24"
    Wk24 = "Wk24"
    EtaK24 = "EtaK24"
    Rk25 = "Rk25"
    TauK26 = "TauK26"
    ThetaK27 = "ThetaK27"
    SigmaK28 = "SigmaK28"


class RootRule(str, Enum):
    UNIQUE = "unique_in_01"
    MAXIMAL = "maximal_positive"
    CLOSED_FORM = "closed_form"
    MIN_WITH_CAP = "min_with_cap"


PLAIN_SERIES = frozenset({ClassId.RkA1, ClassId.SkA2, ClassId.RhoA3})
P_SYMMETRIC = frozenset({ClassId.RpmB, ClassId.RpmCor2, ClassId.Rpmd21})
MAXIMAL_ROOT = P_SYMMETRIC
UNIQUE_ROOT = frozenset(ClassId) - MAXIMAL_ROOT - {ClassId.Rk25}
USES_A = frozenset({ClassId.RhoA3, ClassId.EtaK24, ClassId.SigmaK28})
USES_D = frozenset({ClassId.Rpmd21, ClassId.Rk25})
HARMONIC = frozenset({ClassId.Rpmd21, ClassId.Rk25, ClassId.TauK26,
                      ClassId.ThetaK27, ClassId.SigmaK28})
_MIN_K = {ClassId.TauK26: 2, ClassId.ThetaK27: 2, ClassId.SigmaK28: 2}

DEFAULT_TOL = 1e-12
MAX_BISECTIONS = 200
SCAN_START = 4096
SCAN_LIMIT = 2 ** 20


def bohr_cap(p: int) -> float:
    """``r_{p,0} = 3^(-1/p)``, the classical 1/3 radius in the variable ``z^p``."""
    return (1.0 / 3.0) ** (1.0 / p)


def _int_param(name: str, value, low: int) -> int:
    if isinstance(value, bool) or int(value) != value or value < low:
        raise ParamError(f"{name} must be an integer >= {low}, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class ClassSpec:
    """A theorem's function class together with its parameters.

    Parameters left as ``None`` take the class default.  Parameters that do
    not apply to the class (``a`` outside the fixed-coefficient classes,
    ``d`` outside the dilatation classes, ``k`` for the p-symmetric
    families) must stay at their canonical value.
    """

    id: ClassId
    p: int | None = None
    m: int | None = None
    k: int | None = None
    d: float | None = None
    a: float | None = None

    def __post_init__(self) -> None:
        try:
            cid = ClassId(self.id)
        except ValueError:
            raise ParamError(f"unknown class id {self.id!r}") from None
        plain = cid in PLAIN_SERIES
        defaults = {
            "p": 1,
            "m": 0 if plain else 1,
            "k": 0 if cid in P_SYMMETRIC else _MIN_K.get(cid, 1),
            "d": 1.0,
            "a": 1.0,
        }
        values = {name: defaults[name] if getattr(self, name) is None else getattr(self, name)
                  for name in defaults}
        p = _int_param("p", values["p"], 1)
        m = _int_param("m", values["m"], 0)
        k = _int_param("k", values["k"], 0)
        d = float(values["d"])
        a = float(values["a"])
        if plain and (p, m) != (1, 0):
            raise ParamError(f"{cid.value} is stated for p = 1, m = 0")
        if not plain and not 1 <= m <= p:
            raise ParamError(f"{cid.value} requires 1 <= m <= p, got p={p}, m={m}")
        if cid in P_SYMMETRIC:
            if k != 0:
                raise ParamError(f"{cid.value} takes no k")
        elif k < _MIN_K.get(cid, 1):
            raise ParamError(f"{cid.value} requires k >= {_MIN_K.get(cid, 1)}, got {k}")
        if cid in USES_D:
            if not 0.0 <= d <= 1.0:
                raise ParamError(f"d must lie in [0, 1], got {d}")
        elif d != 1.0:
            raise ParamError(f"{cid.value} takes no d")
        if cid in USES_A:
            if not 0.0 < a <= 1.0:
                raise ParamError(f"a must lie in (0, 1], got {a}")
        elif a != 1.0:
            raise ParamError(f"{cid.value} takes no a")
        for name, value in (("id", cid), ("p", p), ("m", m), ("k", k), ("d", d), ("a", a)):
            object.__setattr__(self, name, value)

    @property
    def harmonic(self) -> bool:
        return self.id in HARMONIC

    def to_dict(self) -> dict:
        out = asdict(self)
        out["id"] = self.id.value
        return out


@dataclass(frozen=True)
class RadiusResult:
    """A certified root.

    For ``min_with_cap`` the bracket and residual certify the uncapped root
    ``root``; ``value`` is ``min(root, 3^(-1/p))``.  ``roots`` lists every
    bracketed root the scanner found (maximal-root classes only).
    """

    value: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    root_rule: RootRule
    iterations: int
    root: float
    roots: tuple = field(default=())

    def to_dict(self) -> dict:
        out = asdict(self)
        out["root_rule"] = self.root_rule.value
        out["roots"] = list(self.roots)
        return out


def char_eval(spec: ClassSpec, r):
    """Evaluate the characteristic function of ``spec`` at ``r`` (scalar or array)."""
    arr = np.asarray(r, dtype=float)
    if np.any(~((arr >= 0) & (arr <= 1))):
        raise DomainError("characteristic functions are evaluated on [0, 1]")
    r = arr if arr.ndim else float(arr)
    p, m, k, d, a = spec.p, spec.m, spec.k, spec.d, spec.a
    x = r ** p
    cid = spec.id
    if cid is ClassId.RkA1:
        return 4 * (1 - r) - r ** (k - 1) * (1 - 2 * r + 5 * r * r)
    if cid is ClassId.SkA2:
        return 2 * (1 - r) - r ** k * (3 - r)
    if cid is ClassId.RhoA3:
        return (1 + a) * (1 - r) - r ** k * (2 * a * a + a + r * (1 - 2 * a * a))
    if cid is ClassId.RpmB:
        y = r ** (p - m)
        return -6 * y + y * y + 8 * x * x + 1
    if cid is ClassId.RpmCor2:
        y = r ** (p - m)
        return -12 * y + y * y + 32 * x * x + 4
    if cid is ClassId.Rpmd21:
        y = r ** (p - m)
        return y * y - (8 + 4 * d) * y + 4 * (1 + d) * (3 + d) * x * x + 4
    lead = r ** (p * k + m)
    if cid is ClassId.Vk24:
        return 4 * (1 - x) - r ** (p * (k - 1) + m) * (5 * x * x - 2 * x + 1)
    if cid is ClassId.Wk24:
        return 2 * (1 - x) - lead * (3 - x)
    if cid is ClassId.EtaK24:
        return (1 + a) * (1 - x) - lead * (2 * a * a + a + x * (1 - 2 * a * a))
    if cid is ClassId.Rk25:
        return 2 / (d + 1) * (1 - x) - lead * (3 - x)
    if cid is ClassId.TauK26:
        return 2 * (1 - x) - r ** (p * (k - 1) + m) * (5 * x * x - 2 * x + 1)
    if cid is ClassId.ThetaK27:
        return (1 - x) - lead * (3 - x)
    if cid is ClassId.SigmaK28:
        return (1 + a) * (1 - x) - 2 * lead * (2 * a * a + a + x * (1 - 2 * a * a))
    raise ParamError(f"no characteristic function for {cid!r}")


def _check_tol(tol: float) -> float:
    if not 0 < tol <= 1e-6:
        raise ParamError(f"tol must lie in (0, 1e-6], got {tol!r}")
    return tol


def _bisect(fn, lo: float, hi: float, tol: float) -> tuple[float, float, float, int]:
    """Bisect down to adjacent doubles; the final width is far below any admissible ``tol``.

    Stopping at ``tol`` would leave the radius off by up to ``tol / 2``, and
    the functionals evaluated there would overshoot their bound by that
    much times their slope.
    """
    flo = fn(lo)
    if not flo * fn(hi) < 0:
        raise NoRootFound(f"no sign change on [{lo}, {hi}]")
    iterations = 0
    while iterations < MAX_BISECTIONS:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fmid = fn(mid)
        iterations += 1
        if fmid == 0:
            return mid, mid, mid, iterations
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    if hi - lo > tol:
        raise NoRootFound(f"bracket [{lo}, {hi}] did not shrink below {tol}")
    return 0.5 * (lo + hi), lo, hi, iterations


def _closed_form_result(spec: ClassSpec, value: float) -> RadiusResult:
    return RadiusResult(
        value=value,
        bracket_lo=float(np.nextafter(value, 0.0)),
        bracket_hi=float(np.nextafter(value, 1.0)),
        residual=abs(float(char_eval(spec, value))),
        root_rule=RootRule.CLOSED_FORM,
        iterations=0,
        root=value,
        roots=(value,),
    )


def rpmd_equal_exponents(m: int, d: float) -> float:
    """Root of the dilatation equation when p = m: ``((3+4d) / (4(1+d)(3+d)))^(1/(2m))``."""
    return ((3 + 4 * d) / (4 * (1 + d) * (3 + d))) ** (1.0 / (2 * m))


def _scan_brackets(fn, n: int) -> list[tuple[float, float]]:
    xs = np.linspace(0.0, 1.0, n + 1)
    s = np.sign(fn(xs))
    brackets = [(float(xs[i]), float(xs[i + 1])) for i in np.nonzero(s[:-1] * s[1:] < 0)[0]]
    # a simple root landing exactly on an interior grid point
    for i in np.nonzero(s[1:-1] == 0)[0] + 1:
        if s[i - 1] * s[i + 1] < 0:
            brackets.append((float(xs[i - 1]), float(xs[i + 1])))
    return sorted(brackets)


def solve_radius(spec: ClassSpec, tol: float = DEFAULT_TOL) -> RadiusResult:
    """Solve the characteristic equation of ``spec`` for its designated root."""
    tol = _check_tol(tol)
    fn = lambda r: char_eval(spec, r)  # noqa: E731
    cid = spec.id

    if cid in MAXIMAL_ROOT:
        if spec.p == spec.m and cid is not ClassId.RpmB:
            d = 1.0 if cid is ClassId.RpmCor2 else spec.d
            return _closed_form_result(spec, rpmd_equal_exponents(spec.m, d))
        n = SCAN_START
        while n <= SCAN_LIMIT:
            brackets = _scan_brackets(fn, n)
            if brackets:
                break
            n *= 2
        else:
            raise NoRootFound(f"{cid.value}: no sign change on (0, 1) at {SCAN_LIMIT} subintervals")
        solved = [_bisect(fn, lo, hi, tol) for lo, hi in brackets]
        value, lo, hi, iterations = max(solved)
        return RadiusResult(value, lo, hi, abs(float(fn(value))), RootRule.MAXIMAL,
                            iterations, value, tuple(s[0] for s in solved))

    if not (fn(0.0) > 0 and fn(1.0) < 0):
        raise NoRootFound(f"{cid.value}: endpoint signs F(0)={fn(0.0)}, F(1)={fn(1.0)}")
    value, lo, hi, iterations = _bisect(fn, 0.0, 1.0, tol)
    residual = abs(float(fn(value)))
    if cid is ClassId.Rk25:
        return RadiusResult(min(value, bohr_cap(spec.p)), lo, hi, residual,
                            RootRule.MIN_WITH_CAP, iterations, value)
    return RadiusResult(value, lo, hi, residual, RootRule.UNIQUE, iterations, value)


def regime_case(p: int, m: int, d: float) -> int:
    """1 when ``p/m > log2(2+d)``, else 2.

    Decided exactly as ``2^p > (2+d)^m`` in rational arithmetic, so the
    boundary ``p/m = log2(2+d)`` falls in case 2.
    """
    return 1 if Fraction(2) ** p > (2 + Fraction(d)) ** m else 2


@dataclass(frozen=True)
class Regime:
    case: int
    radius: float
    result: RadiusResult | None

    def to_dict(self) -> dict:
        return {"case": self.case, "radius": self.radius,
                "result": None if self.result is None else self.result.to_dict()}


def radius_regime(p: int, m: int, d: float, tol: float = DEFAULT_TOL) -> Regime:
    """Radius of the harmonic p-symmetric inequality with dilatation bound ``d``.

    Case 1 (``p/m > log2(2+d)``) gives ``2^(-1/m)``; case 2 gives the maximal
    root of the dilatation equation.
    """
    p = _int_param("p", p, 2)
    m = _int_param("m", m, 1)
    if m > p:
        raise ParamError(f"the regime split needs p/m >= 1, got p={p}, m={m}")
    if not 0.0 <= d <= 1.0:
        raise ParamError(f"d must lie in [0, 1], got {d}")
    if regime_case(p, m, d) == 1:
        return Regime(1, 0.5 ** (1.0 / m), None)
    result = solve_radius(ClassSpec(ClassId.Rpmd21, p=p, m=m, d=d), tol)
    return Regime(2, result.value, result)


def theorem_radius(spec: ClassSpec, tol: float = DEFAULT_TOL) -> float:
    """Radius up to which the class's inequality is asserted.

    Same as ``solve_radius(spec).value`` except for the two p-symmetric
    classes whose statement switches to ``2^(-1/m)`` when
    ``p/m > log2(2+d)`` (``d = 1`` for the analytic half-bound class).
    """
    if spec.id in (ClassId.Rpmd21, ClassId.RpmCor2):
        d = spec.d if spec.id is ClassId.Rpmd21 else 1.0
        if regime_case(spec.p, spec.m, d) == 1:
            return 0.5 ** (1.0 / spec.m)
    return solve_radius(spec, tol).value


def _lemma_radius(p: int, m: int, d: float) -> float:
    if not 1 <= m <= p:
        raise ParamError(f"the lemmas need 1 <= m <= p, got p={p}, m={m}")
    if not 0.0 < d <= 1.0:
        raise ParamError(f"the lemmas need d in (0, 1], got {d}")
    return solve_radius(ClassSpec(ClassId.Rpmd21, p=p, m=m, d=d), tol=1e-15).value


def lemma1_residual(p: int, m: int, d: float) -> float:
    """``1/(3+d) - r^(p+m)`` at the maximal dilatation-equation root; >= 0 when the bound holds."""
    r = _lemma_radius(p, m, d)
    return 1.0 / (3 + d) - r ** (p + m)


def lemma2_residual(p: int, m: int, d: float) -> float:
    r = _lemma_radius(p, m, d)
    lhs = (2 + d - math.sqrt((1 + d) * (3 + d)) * math.sqrt(1 - r ** (2 * p))) / r ** (p - m)
    return abs(lhs - 0.5)
