"""Closed-form normalization constants and photon-number distributions.

Notation: ``W_k(p, q)`` is the scaled Legendre sequence of
:mod:`sqthermal.legendre`.  For a squeezed thermal state with coefficients
``A .. E`` (see :mod:`sqthermal.core`):

* ``<exp(f a^dag a)> = (C e^{2f} - 2 B e^f + A)^(-1/2)``
* photon added:      ``N_add(m) = m! W_m(D, A)``
* photon subtracted: ``N_sub(m) = m! W_m(E, C)``
* ``P_add(n) = n! / ((n-m)! N_add sqrt(A)) * W_{n-m}(B/A, C/A)`` for ``n >= m``
* ``P_sub(n) = (m+n)! / (n! N_sub sqrt(A)) * W_{m+n}(B/A, C/A)``

In the subtracted PND the power of ``C/A`` pairs with the Legendre index
``m + n``, i.e. it is ``(C/A)^((m+n)/2)``.  :func:`pnd_pssts_literal` keeps
the alternative ``(C/A)^(m + n/2)`` reading around so the verification suite
can show that it disagrees with the Fock-space oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DomainError,
    ParameterError,
    StateParams,
    TruncationError,
    Variant,
    ZeroNormError,
    coefficients,
)
from .legendre import scaled_sequence

__all__ = [
    "Distribution",
    "expectation_exp_number",
    "norm_pasts",
    "norm_pssts",
    "normalization",
    "log_normalization",
    "pnd_pasts",
    "pnd_pssts",
    "pnd",
    "pnd_pssts_literal",
    "pnd_table",
    "tail_ratio",
    "mean_photon_number",
]

NEG_TOL = 1e-12
AUTO_MASS_TOL = 1e-10
DECADE_MASS_TOL = 1e-12
AUTO_NMAX_LIMIT = 10**6
# below this, factorial ratios are exact integers and values stay in range
_DIRECT_LIMIT = 170
_SAFE_LOW = 1e-280


@dataclass(frozen=True)
class Distribution:
    """Photon-number probabilities for ``n = 0 .. n_max``.

    ``tail_bound`` is the probability mass beyond ``n_max``, i.e. one minus
    the table sum (clipped at zero); the closed forms are exactly normalized.
    ``probabilities`` are clamped at zero; ``raw`` keeps the unclamped values.
    """

    probabilities: np.ndarray
    n_max: int
    tail_bound: float = 0.0
    raw: np.ndarray | None = None

    def __len__(self):
        return len(self.probabilities)

    def __getitem__(self, n):
        return self.probabilities[n]

    @property
    def total(self) -> float:
        return math.fsum(self.probabilities)

    def mean(self) -> float:
        return math.fsum(np.arange(len(self.probabilities)) * self.probabilities)


def _as_params(params, variant=None) -> StateParams:
    if not isinstance(params, StateParams):
        params = StateParams(params.n_c, params.r, getattr(params, "m", 0),
                             getattr(params, "variant", Variant.ADDED))
    if variant is not None:
        variant = Variant.parse(variant)
        if params.variant is not variant:
            params = params.with_(variant=variant)
    return params


def expectation_exp_number(f: float, params: StateParams) -> float:
    """Expectation of ``exp(f a^dag a)`` in the squeezed thermal state.

    ``params.m`` must be zero.  ``f = -inf`` is allowed and returns the
    vacuum probability ``A^(-1/2)``.
    """
    params = _as_params(params)
    if params.m != 0:
        raise ParameterError("expectation_exp_number needs m = 0 (plain squeezed thermal state)")
    if math.isnan(f) or f == math.inf:
        raise DomainError(f"f={f} is not a usable exponent")
    c = coefficients(params)
    ef = math.exp(f)
    quad = c.C * ef * ef - 2.0 * c.B * ef + c.A
    if not quad > 0.0 or not math.isfinite(quad):
        raise DomainError(
            f"C e^(2f) - 2B e^f + A = {quad} is not positive; the expectation diverges"
        )
    return quad**-0.5


def log_normalization(params: StateParams) -> float:
    """Natural log of the normalization constant; ``-inf`` for a zero-norm state."""
    params = _as_params(params)
    c = coefficients(params)
    m = params.m
    if params.variant is Variant.ADDED:
        seq = scaled_sequence(c.D, c.A, m)
    else:
        seq = scaled_sequence(c.E, c.C, m)
    if seq.mantissa[m] <= 0.0:
        if params.is_zero_norm or seq.mantissa[m] == 0.0:
            return -math.inf
        # a trace cannot be negative; only roundoff gets here
        if abs(seq.mantissa[m]) > 1e-12 * abs(seq.mantissa).max():
            raise ArithmeticError(f"negative normalization W_m={seq.mantissa[m]}")
        return -math.inf
    return math.lgamma(m + 1) + seq.log_abs(m)


def _normalization(params: StateParams) -> float:
    c = coefficients(params)
    m = params.m
    if params.variant is Variant.ADDED:
        seq = scaled_sequence(c.D, c.A, m)
    else:
        seq = scaled_sequence(c.E, c.C, m)
    if m <= _DIRECT_LIMIT and seq.exponent[m] == 0:
        val = math.factorial(m) * float(seq.mantissa[m])
        if math.isfinite(val):
            return max(val, 0.0)
    logn = log_normalization(params)
    if logn >= 709.0:
        return math.inf
    return math.exp(logn) if logn > -745.0 else 0.0


def norm_pasts(params: StateParams) -> float:
    """Normalization of the m-photon-added squeezed thermal state, ``m! W_m(D, A)``.

    >>> norm_pasts(StateParams(n_c=2.0, r=0.0, m=3))
    162.0
    """
    return _normalization(_as_params(params, Variant.ADDED))


def norm_pssts(params: StateParams) -> float:
    """Normalization of the m-photon-subtracted squeezed thermal state, ``m! W_m(E, C)``.

    Real and non-negative for every parameter set, also when ``C < 0``.
    Returns exactly ``0.0`` for subtraction from the vacuum.
    """
    params = _as_params(params, Variant.SUBTRACTED)
    if params.is_zero_norm:
        return 0.0
    return _normalization(params)


def normalization(params: StateParams) -> float:
    params = _as_params(params)
    if params.variant is Variant.ADDED:
        return norm_pasts(params)
    return norm_pssts(params)


def _require_nonzero(params: StateParams) -> None:
    if params.is_zero_norm:
        raise ZeroNormError(
            f"photon-subtracted state with n_c=0, r=0, m={params.m} has zero norm"
        )


def _pnd_values(params: StateParams, n: np.ndarray) -> np.ndarray:
    """Raw (unclamped) PND at the integer array ``n``."""
    params = _as_params(params)
    _require_nonzero(params)
    c = coefficients(params)
    m = params.m
    added = params.variant is Variant.ADDED
    n = np.asarray(n, dtype=np.int64)
    out = np.zeros(n.shape)
    if n.size == 0:
        return out
    if np.any(n < 0):
        raise DomainError("photon numbers must be non-negative")

    if added:
        k = n - m
        valid = k >= 0
    else:
        k = n + m
        valid = np.ones(n.shape, dtype=bool)
    if not valid.any():
        return out
    seq = scaled_sequence(c.B / c.A, c.C / c.A, int(k[valid].max()))
    norm = _normalization(params)
    sqrt_a = math.sqrt(c.A)
    log_norm = None

    for idx in np.flatnonzero(valid):
        ni, ki = int(n[idx]), int(k[idx])
        mant = float(seq.mantissa[ki])
        if mant == 0.0:
            continue
        hi, lo = (ni, ki) if added else (ki, ni)
        if hi <= _DIRECT_LIMIT and seq.exponent[ki] == 0 and _SAFE_LOW < norm < math.inf:
            ratio = float(math.factorial(hi) // math.factorial(lo))
            val = ratio * mant / (norm * sqrt_a)
            if math.isfinite(val) and val != 0.0:
                out[idx] = val
                continue
        if log_norm is None:
            log_norm = log_normalization(params)
        log_val = (
            math.lgamma(hi + 1) - math.lgamma(lo + 1)
            + seq.log_abs(ki) - log_norm - 0.5 * math.log(c.A)
        )
        out[idx] = math.copysign(math.exp(log_val), mant) if log_val > -745 else 0.0
    return out


def pnd_pasts(params: StateParams, n: int) -> float:
    """Probability of ``n`` photons in the m-photon-added squeezed thermal state.

    Exactly zero for ``n < m``.  Negative roundoff is clamped to zero.
    """
    params = _as_params(params, Variant.ADDED)
    return max(float(_pnd_values(params, np.array([n]))[0]), 0.0)


def pnd_pssts(params: StateParams, n: int) -> float:
    """Probability of ``n`` photons in the m-photon-subtracted squeezed thermal state.

    Raises:
        ZeroNormError: for subtraction from the vacuum.
    """
    params = _as_params(params, Variant.SUBTRACTED)
    return max(float(_pnd_values(params, np.array([n]))[0]), 0.0)


def pnd(params: StateParams, n: int) -> float:
    params = _as_params(params)
    if params.variant is Variant.ADDED:
        return pnd_pasts(params, n)
    return pnd_pssts(params, n)


def pnd_pssts_literal(params: StateParams, n: int) -> complex:
    """Subtracted PND with the power of ``C/A`` read as ``m + n/2``.

    This differs from :func:`pnd_pssts` by a factor ``(C/A)^(m/2)``, which is
    complex when ``C < 0``.  Kept only for the verification suite.
    """
    params = _as_params(params, Variant.SUBTRACTED)
    c = coefficients(params)
    base = pnd_pssts(params, n)
    return base * complex(c.C / c.A) ** (0.5 * params.m)


def tail_ratio(params: StateParams) -> float:
    """Asymptotic ratio ``P(n+1)/P(n)`` of the geometric PND tail.

    It is the larger root magnitude ``(B + (2 n_c + 1)|sinh 2r|/2) / A``,
    always strictly below one.
    """
    params = _as_params(params)
    c = coefficients(params)
    s = (2.0 * params.n_c + 1.0) * abs(math.sinh(2.0 * params.r)) / 2.0
    return max(abs(c.B + s), abs(c.B - s)) / c.A


def _tail_estimate(raw: np.ndarray, params: StateParams, weight_power: int = 0) -> float:
    """Geometric extrapolation of ``sum_{n > n_max} n^weight_power P(n)``."""
    n_max = len(raw) - 1
    if n_max < 1:
        return 0.0
    rho = tail_ratio(params)
    # polynomial prefactor n^(m + weight) slows the decay at finite n
    rho_eff = min(rho * (1.0 + (params.m + weight_power + 1.0) / max(n_max, 1)), 1.0 - 1e-6)
    last = raw[max(0, n_max - 9):].clip(min=0.0)
    n_last = np.arange(max(0, n_max - 9), n_max + 1)
    peak = float((last * n_last**weight_power).max())
    return peak * rho_eff / (1.0 - rho_eff)


def _initial_nmax(params: StateParams) -> int:
    rho = tail_ratio(params)
    guess = 16 + 2 * params.m
    if 0.0 < rho < 1.0:
        guess = max(guess, int(math.ceil(-10.0 / math.log(rho))) + params.m)
    return 1 << max(4, (guess - 1).bit_length())


def _distribution(raw: np.ndarray) -> Distribution:
    probs = raw.clip(min=0.0)
    tail = max(0.0, 1.0 - math.fsum(probs))
    return Distribution(probs, len(raw) - 1, tail, raw)


def pnd_table(params: StateParams, n_max: int | str = "auto") -> Distribution:
    """Photon-number distribution for ``n = 0 .. n_max``.

    With ``n_max="auto"`` the table length is doubled until both the mass of
    the last ten entries drops below 1e-12 and the extrapolated tail drops
    below 1e-10.

    Raises:
        ZeroNormError: for subtraction from the vacuum.
        TruncationError: when auto mode has not converged by ``n_max = 10**6``.
    """
    params = _as_params(params)
    _require_nonzero(params)
    if n_max != "auto":
        n_max = int(n_max)
        if n_max < 0:
            raise DomainError(f"n_max={n_max} must be non-negative")
        raw = _pnd_values(params, np.arange(n_max + 1))
        return _distribution(raw)

    if params.n_c == 0.0 and params.r == 0.0:
        # vacuum, or a Fock state |m> after adding m photons
        return _distribution(_pnd_values(params, np.arange(params.m + 1)))

    size = _initial_nmax(params)
    while size <= AUTO_NMAX_LIMIT:
        raw = _pnd_values(params, np.arange(size + 1))
        decade = math.fsum(raw[-10:].clip(min=0.0))
        tail = _tail_estimate(raw, params)
        if decade < DECADE_MASS_TOL and tail < AUTO_MASS_TOL:
            return _distribution(raw)
        size *= 2
    raise TruncationError(f"auto truncation did not converge by n_max={AUTO_NMAX_LIMIT}")


def mean_photon_number(params: StateParams) -> float:
    """Mean photon number ``sum_n n P(n)`` over an auto-truncated table.

    The table is extended until the extrapolated tail of ``n P(n)`` is below
    1e-11, which is stricter than the plain probability truncation.
    """
    params = _as_params(params)
    dist = pnd_table(params, "auto")
    raw = dist.raw
    while _tail_estimate(raw, params, weight_power=1) > 1e-11:
        if len(raw) > AUTO_NMAX_LIMIT:
            raise TruncationError("mean photon number tail did not converge")
        raw = _pnd_values(params, np.arange(2 * len(raw) - 1))
    return math.fsum(np.arange(len(raw)) * raw.clip(min=0.0))
