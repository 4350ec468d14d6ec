"""Legendre polynomials and scaled Legendre sequences in real arithmetic.

The closed forms for photon-added/subtracted squeezed thermal states contain
products ``q**(k/2) * P_k(p / sqrt(q))`` where ``q`` may be negative.  Such a
product is always real: it is the k-th Maclaurin coefficient of
``(1 - 2 p t + q t**2) ** -0.5``.  :func:`scaled_sequence` computes these
coefficients directly from the recurrence

    (k + 1) W[k+1] = (2k + 1) p W[k] - k q W[k-1],   W[0] = 1, W[1] = p

so no complex numbers or square roots of ``q`` are ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError

__all__ = [
    "legendre_p",
    "ScaledLegendreSequence",
    "scaled_sequence",
    "genfun_coefficients",
    "convergence_radius",
]

# rescale the running pair once magnitudes leave [_LOW, _HIGH]
_HIGH = 1e150
_LOW = 1e-150
_LN2 = math.log(2.0)


def _check_finite(**values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise DomainError(f"{name}={v} is not finite")


def legendre_p(m: int, x: float) -> float:
    """Legendre polynomial ``P_m(x)`` by Bonnet's recurrence.

    Any finite ``x`` is accepted, including ``|x| > 1``.

    >>> legendre_p(3, 2.0)
    17.0
    """
    if m < 0:
        raise DomainError(f"degree m={m} must be non-negative")
    x = float(x)
    _check_finite(x=x)
    if m == 0:
        return 1.0
    p_prev, p = 1.0, x
    for k in range(1, m):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p


@dataclass(frozen=True)
class ScaledLegendreSequence:
    """Coefficients ``W_0 .. W_K`` of ``(1 - 2 p t + q t^2)^(-1/2)``.

    Values are stored as ``mantissa[k] * 2**exponent[k]`` so long sequences
    neither overflow nor underflow.  ``exponent[k]`` is zero whenever
    ``W_k`` itself fits comfortably in a double (about 1e-300 to 1e300).
    """

    p: float
    q: float
    mantissa: np.ndarray
    exponent: np.ndarray = field(repr=False)

    @property
    def K(self) -> int:
        return len(self.mantissa) - 1

    def __len__(self):
        return len(self.mantissa)

    @property
    def values(self) -> np.ndarray:
        """Plain float values; entries beyond double range become inf or 0."""
        with np.errstate(over="ignore", under="ignore"):
            return np.ldexp(self.mantissa, self.exponent)

    def __getitem__(self, k):
        return self.values[k]

    def sign(self, k: int) -> float:
        return float(np.sign(self.mantissa[k]))

    def log_abs(self, k: int) -> float:
        """``log|W_k|``; ``-inf`` for an exact zero."""
        mk = abs(float(self.mantissa[k]))
        if mk == 0.0:
            return -math.inf
        return math.log(mk) + int(self.exponent[k]) * _LN2

    def log_abs_all(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.mantissa)) + self.exponent * _LN2


def scaled_sequence(p: float, q: float, K: int) -> ScaledLegendreSequence:
    """Scaled Legendre sequence ``W_0 .. W_K`` for real ``p`` and ``q``.

    For ``q > 0`` this equals ``q**(k/2) * legendre_p(k, p / sqrt(q))``; for
    ``q <= 0`` it is the analytic continuation of that product, still real.

    Args:
        p: linear coefficient of the quadratic.
        q: quadratic coefficient, any sign.
        K: highest index to compute.

    Returns:
        ScaledLegendreSequence holding ``K + 1`` entries.
    """
    p, q = float(p), float(q)
    _check_finite(p=p, q=q)
    if K < 0:
        raise DomainError(f"K={K} must be non-negative")
    mant = np.zeros(K + 1)
    expo = np.zeros(K + 1, dtype=np.int64)
    mant[0] = 1.0
    if K == 0:
        return ScaledLegendreSequence(p, q, mant, expo)
    if p == 0.0 and q == 0.0:
        return ScaledLegendreSequence(p, q, mant, expo)

    # W_k(2^e p', 4^e q') = 2^(k e) W_k(p', q'): run the recurrence on O(1) inputs
    scale = math.frexp(max(abs(p), math.sqrt(abs(q))))[1]
    ps, qs = math.ldexp(p, -scale), math.ldexp(q, -2 * scale)
    mant[1] = ps

    # w_prev, w hold W[k-1], W[k] in units of 2**shift
    w_prev, w, shift = 1.0, ps, 0
    for k in range(1, K):
        w_next = ((2 * k + 1) * ps * w - k * qs * w_prev) / (k + 1)
        w_prev, w = w, w_next
        big = max(abs(w), abs(w_prev))
        if big > _HIGH or (0.0 < big < _LOW):
            e = math.frexp(big)[1]
            w = math.ldexp(w, -e)
            w_prev = math.ldexp(w_prev, -e)
            shift += e
        mant[k + 1] = w
        expo[k + 1] = shift
    expo += scale * np.arange(K + 1)
    _renormalize(mant, expo)
    return ScaledLegendreSequence(p, q, mant, expo)


def _renormalize(mant: np.ndarray, expo: np.ndarray) -> None:
    """Fold exponents back into the mantissas wherever the plain value fits."""
    frac, e2 = np.frexp(mant)
    total = e2.astype(np.int64) + expo
    fits = (mant != 0.0) & (total > -1000) & (total < 1000)
    mant[fits] = np.ldexp(frac[fits], total[fits])
    expo[fits] = 0


def convergence_radius(p: float, q: float) -> float:
    """Radius of convergence in ``t`` of the series for ``(1 - 2pt + qt^2)^(-1/2)``."""
    disc = p * p - q
    if disc >= 0:
        lam = abs(p) + math.sqrt(disc)
    else:
        lam = math.sqrt(q)
    return math.inf if lam == 0.0 else 1.0 / lam


def genfun_coefficients(p: float, q: float, t: float, K: int) -> float:
    """Partial sum ``sum_{k <= K} W_k t^k`` of the generating function.

    Raises:
        DomainError: if ``1 - 2pt + qt^2 <= 0`` or ``t`` lies outside the
            radius of convergence.
    """
    _check_finite(p=float(p), q=float(q), t=float(t))
    base = 1.0 - 2.0 * p * t + q * t * t
    if base <= 0.0:
        raise DomainError(f"1 - 2pt + qt^2 = {base} is not positive")
    if abs(t) >= convergence_radius(p, q):
        raise DomainError(f"|t|={abs(t)} outside the radius of convergence")
    seq = scaled_sequence(p, q, K)
    if t == 0.0:
        return 1.0
    k = np.arange(K + 1)
    with np.errstate(under="ignore"):
        terms = np.sign(seq.mantissa) * np.sign(t) ** k * np.exp(
            seq.log_abs_all() + k * math.log(abs(t))
        )
    return float(math.fsum(terms))
