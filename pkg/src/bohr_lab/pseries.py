"""Truncated power series and lacunary coefficient sequences.

A lacunary series stores the coefficients ``c_n`` of

    sum_{n >= k0} c_n z^(p n + m)

for ``n = k0 .. k0 + N - 1`` together with ``tail_sup``, a bound on ``|c_n|``
for every index that was cut off.  Downstream Bohr sums turn that bound into
a geometric tail estimate, so truncation never silently weakens a verdict.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np
from scipy.signal import lfilter

from .errors import DomainError, EmptySeries, FormatError, SpecMismatch, ZeroConstantTerm

DEFAULT_TERMS = 256

# rounding allowance when validating Schur-class coefficient moduli
_SCHUR_SLACK = 1e-12


def _as_complex(a: Any) -> np.ndarray:
    return np.asarray(a, dtype=complex).reshape(-1)


def _check_length(n: int) -> int:
    if int(n) != n or n < 1:
        raise DomainError(f"truncation length must be a positive integer, got {n!r}")
    return int(n)


def ps_mul(a: Sequence[complex], b: Sequence[complex], n: int) -> np.ndarray:
    """First ``n`` coefficients of the Cauchy product ``a * b``."""
    n = _check_length(n)
    a = _as_complex(a)[:n]
    b = _as_complex(b)[:n]
    out = np.zeros(n, dtype=complex)
    if a.size and b.size:
        prod = np.convolve(a, b)[:n]
        out[: prod.size] = prod
    return out


def ps_div(a: Sequence[complex], b: Sequence[complex], n: int) -> np.ndarray:
    """First ``n`` coefficients of ``a / b``.

    The quotient is the impulse response of the recursive filter with
    numerator ``a`` and denominator ``b``, which is exactly the usual
    coefficient recurrence ``q_j = (a_j - sum_{i>=1} b_i q_{j-i}) / b_0``.
    """
    n = _check_length(n)
    b = _as_complex(b)
    if b.size == 0 or b[0] == 0:
        raise ZeroConstantTerm("denominator has zero constant term")
    a = _as_complex(a)[:n]
    if a.size == 0:
        return np.zeros(n, dtype=complex)
    impulse = np.zeros(n, dtype=complex)
    impulse[0] = 1.0
    return lfilter(a, b[:n], impulse)


@dataclass(frozen=True, eq=False)
class LacunarySeries:
    """Truncated ``sum_{n >= k0} c_n z^(p n + m)`` with a uniform tail bound."""

    p: int
    m: int
    k0: int
    coeffs: np.ndarray
    tail_sup: float = 1.0
    schur: bool = False

    def __post_init__(self) -> None:
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        for name, low in (("p", 1), ("m", 0), ("k0", 0)):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < low:
                raise DomainError(f"{name} must be an integer >= {low}, got {value!r}")
            object.__setattr__(self, name, int(value))
        if c.size == 0:
            raise EmptySeries("a lacunary series needs at least one stored coefficient")
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be finite")
        tail = float(self.tail_sup)
        if not math.isfinite(tail) or tail < 0:
            raise DomainError(f"tail_sup must be finite and >= 0, got {self.tail_sup!r}")
        object.__setattr__(self, "tail_sup", tail)
        if self.schur:
            if np.max(np.abs(c)) > 1 + _SCHUR_SLACK or tail > 1:
                raise DomainError("Schur-class series need |c_n| <= 1 and tail_sup <= 1")

    @property
    def n_terms(self) -> int:
        return int(self.coeffs.size)

    @property
    def lead(self) -> complex:
        """Coefficient of the lowest stored power, ``c_{k0}``."""
        return complex(self.coeffs[0])

    def indices(self) -> np.ndarray:
        return self.k0 + np.arange(self.n_terms)

    def exponents(self) -> np.ndarray:
        return self.p * self.indices() + self.m

    def with_coeffs(self, coeffs: Sequence[complex], tail_sup: float | None = None,
                    schur: bool = False) -> "LacunarySeries":
        return LacunarySeries(self.p, self.m, self.k0, coeffs,
                              self.tail_sup if tail_sup is None else tail_sup, schur)

    def evaluate(self, z: Any) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return np.power.outer(z, self.exponents()) @ self.coeffs

    def derivative(self, z: Any) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        e = self.exponents()
        keep = e > 0
        weights = self.coeffs[keep] * e[keep]
        return np.power.outer(z, e[keep] - 1) @ weights

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "k0": self.k0,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
            "tail_sup": self.tail_sup,
            "schur": self.schur,
        }

    @classmethod
    def from_json(cls, obj: Any) -> "LacunarySeries":
        """Parse the coefficient-file layout.

        ``tail_sup`` defaults to 1 (the coefficient bound of a function with
        sup norm at most 1) and ``schur`` to false.  Coefficients may be
        ``[re, im]`` pairs or bare real numbers.
        """
        if not isinstance(obj, dict):
            raise FormatError("coefficient file must hold a JSON object")
        try:
            p, m, k0 = (obj[key] for key in ("p", "m", "k0"))
            raw = obj["coeffs"]
        except KeyError as exc:
            raise FormatError(f"missing key {exc.args[0]!r}") from None
        for key, value in (("p", p), ("m", m), ("k0", k0)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise FormatError(f"{key} must be an integer")
        if not isinstance(raw, list):
            raise FormatError("coeffs must be a list")
        coeffs = []
        for item in raw:
            if isinstance(item, (int, float)) and not isinstance(item, bool):
                coeffs.append(complex(item, 0.0))
            elif (isinstance(item, list) and len(item) == 2
                  and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in item)):
                coeffs.append(complex(item[0], item[1]))
            else:
                raise FormatError(f"bad coefficient entry {item!r}")
        tail = obj.get("tail_sup", 1.0)
        schur = obj.get("schur", False)
        if isinstance(tail, bool) or not isinstance(tail, (int, float)):
            raise FormatError("tail_sup must be a number")
        if not isinstance(schur, bool):
            raise FormatError("schur must be a boolean")
        try:
            return cls(p, m, k0, coeffs, float(tail), schur)
        except (DomainError, EmptySeries) as exc:
            raise FormatError(str(exc)) from None


def load_series(path: str | Path) -> LacunarySeries:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
    return LacunarySeries.from_json(obj)


@dataclass(frozen=True, eq=False)
class HarmonicMapSpec:
    """``f = h + conj(g)`` with the dilatation bound ``|g'| <= d |h'|``."""

    h: LacunarySeries
    g: LacunarySeries
    d: float = 1.0

    def __post_init__(self) -> None:
        if (self.h.p, self.h.m, self.h.k0) != (self.g.p, self.g.m, self.g.k0):
            raise SpecMismatch("h and g must share p, m and k0")
        if not 0.0 <= self.d <= 1.0:
            raise DomainError(f"dilatation bound must lie in [0, 1], got {self.d!r}")


def _check_a(a: float) -> float:
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"Blaschke parameter must lie in [0, 1], got {a!r}")
    return a


def blaschke_coeffs(a: float, p: int, m: int, n: int = DEFAULT_TERMS) -> LacunarySeries:
    """Lacunary coefficients of ``z^m (z^p - a) / (1 - a z^p)``.

    ``c_0 = -a`` and ``c_j = (1 - a^2) a^(j-1)``; ``a = 1`` is the one-term
    series ``-z^m``.
    """
    a = _check_a(a)
    n = _check_length(n)
    c = np.zeros(n)
    if a == 1.0:
        c[0] = -1.0
        return LacunarySeries(p, m, 0, c, 0.0, schur=True)
    c[0] = -a
    c[1:] = (1 - a * a) * a ** np.arange(n - 1)
    return LacunarySeries(p, m, 0, c, (1 - a * a) * a ** (n - 1), schur=True)


def shifted_blaschke_coeffs(a: float, p: int, m: int, k: int,
                            n: int = DEFAULT_TERMS) -> LacunarySeries:
    """Lacunary coefficients of ``z^(pk+m) (a - z^p) / (1 - a z^p)``, starting at index k."""
    a = _check_a(a)
    n = _check_length(n)
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a non-negative integer, got {k!r}")
    c = np.zeros(n)
    c[0] = a
    if a == 1.0:
        return LacunarySeries(p, m, k, c, 0.0, schur=True)
    c[1:] = -(1 - a * a) * a ** np.arange(n - 1)
    return LacunarySeries(p, m, k, c, (1 - a * a) * a ** (n - 1), schur=True)


def schur_from_params(gammas: Sequence[complex], n: int = DEFAULT_TERMS) -> np.ndarray:
    """Taylor coefficients of the Schur function with parameters ``gammas``.

    Runs the backward recursion ``f_j = (g_j + z f_{j+1}) / (1 + conj(g_j) z f_{j+1})``
    from ``f_{J} = 0``.  Each step is a Mobius map of the unit disk composed
    with ``z f_{j+1}``, so every intermediate function stays bounded by 1.
    The recursion is carried out on ``f_j = P_j / Q_j`` with polynomials of
    degree at most ``J``; only the final quotient is expanded.
    """
    n = _check_length(n)
    g = _as_complex(gammas)
    if g.size and np.max(np.abs(g)) >= 1:
        raise DomainError("Schur parameters must satisfy |gamma| < 1")
    num = np.zeros(1, dtype=complex)
    den = np.ones(1, dtype=complex)
    for gamma in g[::-1]:
        znum = np.concatenate(([0.0], num))
        den = np.concatenate((den, [0.0]))
        num, den = gamma * den + znum, den + np.conj(gamma) * znum
    return ps_div(num, den, n)
