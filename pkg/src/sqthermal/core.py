"""State parameters and the Gaussian coefficients of a squeezed thermal state.

Every closed-form result in this package is expressed through five real
numbers ``A, B, C, D, E`` that depend only on the mean thermal photon number
``n_c`` and the squeezing parameter ``r``:

    A = n_c^2 + (2 n_c + 1) cosh^2 r
    B = n_c (n_c + 1)
    C = n_c^2 - (2 n_c + 1) sinh^2 r
    D = n_c cosh 2r + cosh^2 r
    E = ((2 n_c + 1) cosh 2r - 1) / 2 = n_c cosh 2r + sinh^2 r
"""

from __future__ import annotations

import enum
import math
import operator
from dataclasses import dataclass

__all__ = [
    "ParameterError",
    "DomainError",
    "ZeroNormError",
    "TruncationError",
    "Variant",
    "StateParams",
    "CoefficientSet",
    "coefficients",
    "validate_params",
]


class ParameterError(ValueError):
    """Raised when state parameters are outside their physical domain."""


class DomainError(ValueError):
    """Raised when a formula is evaluated outside its domain of definition."""


class ZeroNormError(ArithmeticError):
    """Raised for a state whose normalization constant vanishes.

    The only such case is photon subtraction from the vacuum
    (``n_c = 0``, ``r = 0``, ``m >= 1``).
    """


class TruncationError(RuntimeError):
    """Raised when a Fock-space truncation is too small to be trusted."""


class Variant(enum.Enum):
    ADDED = "add"
    SUBTRACTED = "sub"

    @classmethod
    def parse(cls, value: Variant | str) -> Variant:
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "add": cls.ADDED,
            "added": cls.ADDED,
            "sub": cls.SUBTRACTED,
            "subtracted": cls.SUBTRACTED,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ParameterError(f"unknown variant {value!r}; use 'add' or 'sub'") from None


@dataclass(frozen=True)
class StateParams:
    """Physical parameters of an m-photon-added or -subtracted squeezed thermal state.

    Attributes:
        n_c: mean photon number of the thermal state before squeezing.
        r: real squeezing parameter.
        m: number of photons added or subtracted.
        variant: whether photons are added or subtracted.
    """

    n_c: float
    r: float
    m: int = 0
    variant: Variant = Variant.ADDED

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        problems = [v for v in validate_params(self) if not v.startswith("warning")]
        if problems:
            raise ParameterError("; ".join(problems))
        object.__setattr__(self, "n_c", float(self.n_c))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "m", _as_int(self.m))

    @property
    def is_zero_norm(self) -> bool:
        return (
            self.variant is Variant.SUBTRACTED
            and self.m >= 1
            and self.n_c == 0.0
            and self.r == 0.0
        )

    def with_(self, **changes) -> StateParams:
        fields = {"n_c": self.n_c, "r": self.r, "m": self.m, "variant": self.variant}
        fields.update(changes)
        return StateParams(**fields)


@dataclass(frozen=True)
class CoefficientSet:
    A: float
    B: float
    C: float
    D: float
    E: float


def validate_params(params) -> list[str]:
    """Return a list of problems with ``params``; empty when the state is usable.

    Works on anything carrying ``n_c``, ``r``, ``m`` (and optionally
    ``variant``) attributes, so it can vet raw values before a
    :class:`StateParams` is built. Entries starting with ``"warning"`` flag
    states that are valid parameters but have no normalizable density
    operator.
    """
    out = []
    n_c = getattr(params, "n_c", None)
    r = getattr(params, "r", None)
    m = getattr(params, "m", 0)

    try:
        n_c_f = float(n_c)
    except (TypeError, ValueError):
        out.append(f"mean photon number n_c={n_c!r} is not a real number")
        n_c_f = None
    if n_c_f is not None:
        if not math.isfinite(n_c_f):
            out.append(f"mean photon number n_c={n_c_f} is not finite")
        elif n_c_f < 0:
            out.append(f"negative mean photon number n_c={n_c_f}")

    try:
        r_f = float(r)
    except (TypeError, ValueError):
        out.append(f"squeezing parameter r={r!r} is not a real number")
        r_f = None
    if r_f is not None and not math.isfinite(r_f):
        out.append(f"squeezing parameter r={r_f} is not finite")
    elif r_f is not None and abs(r_f) > 350:
        # cosh(r)^2 overflows double precision
        out.append(f"squeezing parameter |r|={abs(r_f)} too large for double precision")

    m_int = _as_int(m)
    if m_int is None:
        out.append(f"photon count m={m!r} is not an integer")
        return out
    if m_int < 0:
        out.append(f"negative photon count m={m_int}")

    if out:
        return out
    variant = getattr(params, "variant", Variant.ADDED)
    try:
        variant = Variant.parse(variant)
    except ParameterError as exc:
        return [str(exc)]
    if variant is Variant.SUBTRACTED and m_int >= 1 and n_c_f == 0.0 and r_f == 0.0:
        out.append("warning: zero-norm state (no photons to subtract from the vacuum)")
    return out


def _as_int(value):
    if isinstance(value, bool):
        return None
    try:
        return operator.index(value)
    except TypeError:
        pass
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return None


def coefficients(params: StateParams) -> CoefficientSet:
    """Coefficients A, B, C, D, E for the squeezed thermal state behind ``params``.

    Only ``n_c`` and ``r`` enter; ``m`` and ``variant`` are ignored.

    >>> coefficients(StateParams(n_c=2.0, r=0.0))
    CoefficientSet(A=9.0, B=6.0, C=4.0, D=3.0, E=2.0)
    """
    if not isinstance(params, StateParams):
        params = StateParams(params.n_c, params.r)
    n, r = params.n_c, params.r
    ch2 = math.cosh(r) ** 2
    sh2 = math.sinh(r) ** 2
    c2r = math.cosh(2.0 * r)
    g = 2.0 * n + 1.0
    return CoefficientSet(
        A=n * n + g * ch2,
        B=n * (n + 1.0),
        C=n * n - g * sh2,
        D=n * c2r + ch2,
        # same as ((2 n_c + 1) cosh 2r - 1) / 2 without the cancellation at small r
        E=n * c2r + sh2,
    )
