"""Brute-force reference: density matrices in a truncated Fock basis.

Nothing here uses Legendre polynomials or the Gaussian coefficients.  States
are built as explicit matrices (thermal weights, matrix exponential of the
squeezing generator, ladder operators) and measured directly.  Because the
squeezing generator ``(r/2)(a^2 - a^dag^2)`` is real, all matrices are real
and "Hermitian" means symmetric.

Truncation is certified by doubling: a quantity is only reported once it
changes by less than 1e-10 between ``dim`` and ``2 dim``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import (
    DomainError,
    ParameterError,
    StateParams,
    TruncationError,
    Variant,
    ZeroNormError,
)

__all__ = [
    "DensityMatrix",
    "OracleResult",
    "annihilation_matrix",
    "thermal_state",
    "squeeze_matrix",
    "sts_density",
    "apply_photon_op",
    "default_dim",
    "oracle_norm",
    "oracle_norm_certified",
    "oracle_pnd",
    "oracle_pnd_certified",
    "oracle_exp_number",
    "thermal_vacuum",
    "partial_trace_fictitious",
    "headroom",
    "tfd_purification_check",
]

THERMAL_TAIL = 1e-12
HEADROOM_MASS = 1e-13
CERTIFICATE_TOL = 1e-10
MAX_DIM = 8192
MAX_TFD_DIM = 512
# thermal columns lighter than this are dropped before conjugating by S
_COLUMN_CUTOFF = 1e-30


@dataclass(frozen=True)
class DensityMatrix:
    """Real symmetric matrix in the Fock basis ``|0> .. |dim-1>``.

    ``norm`` is the trace the matrix is meant to have: 1 for a state, the
    normalization constant for an unnormalized post-operation matrix.
    """

    matrix: np.ndarray
    norm: float = 1.0

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.matrix).copy()

    def trace(self) -> float:
        return math.fsum(np.diagonal(self.matrix))

    def asymmetry(self) -> float:
        return float(np.abs(self.matrix - self.matrix.T).max())

    def min_eigenvalue(self) -> float:
        return float(scipy.linalg.eigvalsh(self.matrix).min())


@dataclass(frozen=True)
class OracleResult:
    """Certified oracle value together with the truncation that produced it."""

    value: object
    dim: int
    change_on_doubling: float


def _check_dim(dim: int) -> int:
    dim = int(dim)
    if dim < 2:
        raise DomainError(f"dim={dim} must be at least 2")
    if dim > MAX_DIM:
        raise TruncationError(f"dim={dim} exceeds the oracle limit {MAX_DIM}")
    return dim


def annihilation_matrix(dim: int) -> np.ndarray:
    """Truncated annihilation operator; entry ``(n-1, n)`` is ``sqrt(n)``."""
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1.0, dim)), k=1)


def _thermal_weights(n_c: float, dim: int) -> np.ndarray:
    if n_c == 0.0:
        w = np.zeros(dim)
        w[0] = 1.0
        return w
    n = np.arange(dim)
    return np.exp(n * math.log(n_c / (n_c + 1.0)) - math.log(n_c + 1.0))


def _thermal_min_dim(n_c: float) -> int:
    if n_c == 0.0:
        return 2
    return int(math.ceil(math.log(THERMAL_TAIL) / math.log(n_c / (n_c + 1.0)))) + 1


def thermal_state(n_c: float, dim: int) -> DensityMatrix:
    """Thermal state with weights ``n_c^n / (n_c + 1)^(n+1)``.

    Raises:
        TruncationError: if the omitted tail ``(n_c/(n_c+1))^dim`` is not
            below 1e-12.  The message reports the minimum dimension.
    """
    dim = _check_dim(dim)
    if n_c < 0 or not math.isfinite(n_c):
        raise ParameterError(f"n_c={n_c} must be finite and non-negative")
    need = _thermal_min_dim(n_c)
    if dim < need:
        raise TruncationError(f"thermal state with n_c={n_c} needs dim >= {need}, got {dim}")
    return DensityMatrix(np.diag(_thermal_weights(n_c, dim)))


@functools.lru_cache(maxsize=32)
def _squeeze_cached(r: float, dim: int) -> np.ndarray:
    s = np.zeros((dim, dim))
    for parity in (0, 1):
        idx = np.arange(parity, dim, 2)
        if len(idx) == 0:
            continue
        # within a parity block a^2 couples idx[j+1] -> idx[j]
        hi = idx[1:]
        coupling = np.sqrt(hi * (hi - 1.0))
        gen = np.zeros((len(idx), len(idx)))
        gen[np.arange(len(hi)), np.arange(1, len(idx))] = 0.5 * r * coupling
        gen -= gen.T
        s[np.ix_(idx, idx)] = scipy.linalg.expm(gen)
    s.setflags(write=False)
    return s


def squeeze_matrix(r: float, dim: int) -> np.ndarray:
    """Truncated squeezing operator ``exp[(r/2)(a^2 - a^dag^2)]``.

    Computed as a dense matrix exponential on each parity block separately.
    """
    dim = _check_dim(dim)
    if not math.isfinite(r):
        raise ParameterError(f"r={r} is not finite")
    return _squeeze_cached(float(r), dim)


def default_dim(params: StateParams, n_max: int = 0) -> int:
    """Starting truncation before the doubling certificate kicks in."""
    guess = max(
        64,
        n_max + 16,
        math.ceil(12.0 * (2.0 * params.n_c + 1.0) * math.exp(2.0 * abs(params.r))),
        _thermal_min_dim(params.n_c),
    )
    return int(guess)


@functools.lru_cache(maxsize=64)
def _sts_cached(n_c: float, r: float, dim: int) -> np.ndarray:
    w = _thermal_weights(n_c, dim)
    keep = max(1, int(np.count_nonzero(w > _COLUMN_CUTOFF)))
    s = squeeze_matrix(r, dim)[:, :keep]
    rho = (s * w[:keep]) @ s.T
    rho = 0.5 * (rho + rho.T)
    rho.setflags(write=False)
    return rho


def sts_density(params: StateParams, dim: int) -> DensityMatrix:
    """Squeezed thermal state ``S(r) rho_th S(r)^dag`` (``params.m`` is ignored)."""
    dim = _check_dim(dim)
    need = _thermal_min_dim(params.n_c)
    if dim < need:
        raise TruncationError(
            f"thermal state with n_c={params.n_c} needs dim >= {need}, got {dim}"
        )
    return DensityMatrix(_sts_cached(params.n_c, params.r, dim))


def _lower(mat: np.ndarray) -> np.ndarray:
    """``a @ mat @ a^dag`` using the one-off-diagonal structure of ``a``."""
    dim = mat.shape[0]
    root = np.sqrt(np.arange(1.0, dim))
    out = np.zeros_like(mat)
    out[:-1, :-1] = mat[1:, 1:] * np.outer(root, root)
    return out


def _raise(mat: np.ndarray) -> np.ndarray:
    """``a^dag @ mat @ a``."""
    dim = mat.shape[0]
    root = np.sqrt(np.arange(1.0, dim))
    out = np.zeros_like(mat)
    out[1:, 1:] = mat[:-1, :-1] * np.outer(root, root)
    return out


def headroom(dim: int, m: int) -> int:
    return m + math.ceil(dim / 8)


def apply_photon_op(rho: DensityMatrix, m: int, variant: Variant | str) -> DensityMatrix:
    """Unnormalized ``a^dag^m rho a^m`` (added) or ``a^m rho a^dag^m`` (subtracted).

    Raises:
        TruncationError: for addition, when the top ``m + ceil(dim/8)`` levels
            of ``rho`` carry mass above 1e-13.
    """
    variant = Variant.parse(variant)
    if m < 0:
        raise ParameterError(f"m={m} must be non-negative")
    mat = rho.matrix
    if m == 0:
        return DensityMatrix(mat, rho.trace())
    if variant is Variant.ADDED:
        top = math.fsum(np.abs(np.diagonal(mat)[-headroom(rho.dim, m):]))
        if top >= HEADROOM_MASS:
            raise TruncationError(
                f"top {headroom(rho.dim, m)} Fock levels carry mass {top:.3g}; "
                "increase dim before adding photons"
            )
        step = _raise
    else:
        step = _lower
    for _ in range(m):
        mat = step(mat)
    return DensityMatrix(mat, math.fsum(np.diagonal(mat)))


def _post_operation(params: StateParams, dim: int) -> DensityMatrix:
    return apply_photon_op(sts_density(params, dim), params.m, params.variant)


def _certify(compute, start_dim: int, distance) -> OracleResult:
    """Double ``dim`` from ``start_dim`` until ``compute`` is stable to 1e-10."""
    dim = start_dim
    prev = None
    while dim <= MAX_DIM:
        try:
            cur = compute(dim)
        except TruncationError:
            prev = None
            dim *= 2
            continue
        if prev is not None:
            change = distance(prev, cur)
            if change < CERTIFICATE_TOL:
                return OracleResult(cur, dim, change)
        prev = cur
        dim *= 2
    raise TruncationError(f"oracle did not stabilise below dim={MAX_DIM}")


def oracle_norm(params: StateParams, dim: int | str = "auto") -> float:
    """Trace of the unnormalized photon-added/subtracted state.

    With ``dim="auto"`` the value is certified by doubling; use
    :func:`oracle_norm_certified` to see the chosen dimension.
    """
    if dim == "auto":
        return oracle_norm_certified(params).value
    return _post_operation(params, _check_dim(dim)).trace()


def oracle_norm_certified(params: StateParams) -> OracleResult:
    def rel(a, b):
        return abs(a - b) / max(1.0, abs(b))

    return _certify(lambda d: _post_operation(params, d).trace(), default_dim(params), rel)


def _normalized_diagonal(params: StateParams, dim: int, n_max: int) -> np.ndarray:
    if n_max >= dim - headroom(dim, params.m):
        raise TruncationError(f"n_max={n_max} too close to dim={dim}")
    post = _post_operation(params, dim)
    norm = post.trace()
    if norm <= 0.0 or params.is_zero_norm:
        raise ZeroNormError(f"post-operation state for {params} has zero norm")
    return post.diagonal[: n_max + 1] / norm


def oracle_pnd(params: StateParams, dim: int | str = "auto", n_max: int = 40) -> np.ndarray:
    """Normalized photon-number distribution ``P(0) .. P(n_max)`` from the matrix diagonal."""
    if params.is_zero_norm:
        raise ZeroNormError(f"post-operation state for {params} has zero norm")
    if dim == "auto":
        return oracle_pnd_certified(params, n_max).value
    return _normalized_diagonal(params, _check_dim(dim), n_max)


def oracle_pnd_certified(params: StateParams, n_max: int = 40) -> OracleResult:
    if params.is_zero_norm:
        raise ZeroNormError(f"post-operation state for {params} has zero norm")
    return _certify(
        lambda d: _normalized_diagonal(params, d, n_max),
        default_dim(params, n_max),
        lambda a, b: float(np.abs(a - b).max()),
    )


def oracle_exp_number(f: float, params: StateParams, dim: int | str = "auto") -> float:
    """``sum_n e^(f n) <n|rho_STS|n>`` for the plain squeezed thermal state."""
    if params.m != 0:
        raise ParameterError("oracle_exp_number needs m = 0")

    def compute(d):
        diag = sts_density(params, d).diagonal
        with np.errstate(over="ignore", under="ignore"):
            weights = np.exp(f * np.arange(d))
        return math.fsum(weights * diag)

    if dim == "auto":
        return _certify(compute, default_dim(params), lambda a, b: abs(a - b)).value
    return compute(_check_dim(dim))


def thermal_vacuum(n_c: float, dim: int, method: str = "series") -> np.ndarray:
    """Thermal vacuum as a ``dim x dim`` amplitude array ``psi[n, n_tilde]``.

    ``method="series"`` expands ``sech(t) exp(tanh(t) a^dag b^dag)|0,0>``;
    ``method="operator"`` applies ``exp[t (a^dag b^dag - a b)]`` to ``|0,0>``
    by a matrix exponential on the ``n = n_tilde`` ladder, which is the only
    subspace it reaches.  Here ``t = arcsinh(sqrt(n_c))``.
    """
    dim = _check_dim(dim)
    if dim > MAX_TFD_DIM:
        raise TruncationError(f"purification check limited to dim <= {MAX_TFD_DIM}")
    theta = math.asinh(math.sqrt(n_c))
    psi = np.zeros((dim, dim))
    if method == "series":
        amp = np.empty(dim)
        amp[0] = 1.0 / math.cosh(theta)
        th = math.tanh(theta)
        for k in range(1, dim):
            amp[k] = amp[k - 1] * th
    elif method == "operator":
        # a^dag b^dag |k,k> = (k+1) |k+1,k+1>
        gen = np.diag(theta * np.arange(1.0, dim), k=-1)
        gen -= gen.T
        amp = scipy.linalg.expm(gen)[:, 0]
    else:
        raise ValueError(f"unknown method {method!r}")
    psi[np.arange(dim), np.arange(dim)] = amp
    return psi


def partial_trace_fictitious(psi: np.ndarray) -> np.ndarray:
    """Reduced density matrix of the real mode: ``rho[i, j] = sum_k psi[i, k] psi[j, k]``."""
    return np.einsum("ik,jk->ij", psi, psi.conj()).real


def tfd_purification_check(n_c: float, dim: int = 128) -> dict:
    """Compare the partial trace of the thermal vacuum with the thermal state.

    Returns a dict with ``max_deviation`` (elementwise, against
    :func:`thermal_state`) and ``mean_photon_deviation`` (``|<a^dag a> - n_c|``).
    """
    dim = _check_dim(dim)
    if dim > MAX_TFD_DIM:
        raise TruncationError(f"purification check limited to dim <= {MAX_TFD_DIM}")
    psi = thermal_vacuum(n_c, dim)
    reduced = partial_trace_fictitious(psi)
    target = thermal_state(n_c, dim).matrix
    number = math.fsum(np.arange(dim) * np.diagonal(reduced))
    return {
        "max_deviation": float(np.abs(reduced - target).max()),
        "mean_photon_deviation": abs(number - n_c),
    }
