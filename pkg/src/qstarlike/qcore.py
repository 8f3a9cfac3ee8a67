"""q-calculus primitives: q-bracket, q-Pochhammer symbol, q-difference operator.

All functions are pure and validate the deformation parameter strictly:
q must lie in the open interval (0, 1).  Classical (q -> 1) behaviour is
probed by evaluating at q close to 1, never at q = 1 itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import DomainError

__all__ = [
    "require_q",
    "q_bracket",
    "q_pochhammer",
    "NormalizedSeries",
    "q_derivative_at",
    "q_derivative_series",
]


def require_q(q: float) -> float:
    """Validate 0 < q < 1 (strict) and return q as a float.

    Values at or beyond the endpoints are rejected rather than clamped:
    the q-difference calculus degenerates there.
    """
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError(f"q must lie strictly inside (0, 1); got {q!r}")
    return q


def q_bracket(n: int, q: float) -> float:
    """q-analog [n]_q = (1 - q^n) / (1 - q) of the nonnegative integer n."""
    q = require_q(q)
    if n < 0:
        raise DomainError(f"q_bracket expects n >= 0; got {n}")
    if n == 0:
        return 0.0
    return (1.0 - q**n) / (1.0 - q)


def q_pochhammer(a: float, q: float, n: int) -> float:
    """Finite q-Pochhammer symbol (a; q)_n = prod_{j=0}^{n-1} (1 - a q^j).

    The empty product (n = 0) is 1.  Computed by direct multiplication in
    double precision; all factors stay in (-1, 2) for the parameter ranges
    used here, so no log-space rescaling is needed.
    """
    q = require_q(q)
    if n < 0:
        raise DomainError(f"q_pochhammer expects n >= 0; got {n}")
    out = 1.0
    aqj = float(a)
    for _ in range(n):
        out *= 1.0 - aqj
        aqj *= q
    return out


@dataclass(frozen=True)
class NormalizedSeries:
    """A normalized analytic function as a finite coefficient vector.

    Represents f(z) = sum_{n=1}^{N} a_n z^n with the Montel normalization
    a_1 = 1.  ``coeffs[k]`` holds a_{k+1}.
    """

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.coeffs, dtype=np.complex128).copy()
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("NormalizedSeries needs at least one coefficient")
        if arr[0] != 1.0:
            raise DomainError(f"first coefficient must be exactly 1; got {arr[0]!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def n_terms(self) -> int:
        return int(self.coeffs.size)

    def eval(self, z: complex) -> complex:
        """Evaluate f(z) = z * (a_1 + a_2 z + ...) by Horner's rule."""
        acc = 0.0 + 0.0j
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc * z

    def ratio_polys(self, q: float) -> tuple[np.ndarray, np.ndarray]:
        """Polynomials (num, den) with z(D_q f)(z)/f(z) = num(z)/den(z).

        Both carry the common factor z already cancelled, so the ratio is
        well defined at z = 0 where it equals 1.
        """
        q = require_q(q)
        n = np.arange(1, self.coeffs.size + 1)
        brackets = (1.0 - q**n) / (1.0 - q)
        return brackets * self.coeffs, self.coeffs.copy()


def q_derivative_at(
    f: Union[Callable[[complex], complex], NormalizedSeries],
    z: complex,
    q: float,
) -> complex:
    """q-difference operator (D_q f)(z) = (f(z) - f(qz)) / (z (1 - q)).

    At z = 0 the operator is defined through f'(0), which is only available
    when f is series-represented; a bare callable at z = 0 is a domain error.
    """
    q = require_q(q)
    z = complex(z)
    if isinstance(f, NormalizedSeries):
        if z == 0:
            return complex(f.coeffs[0])
        return (f.eval(z) - f.eval(q * z)) / (z * (1.0 - q))
    if z == 0:
        raise DomainError(
            "q_derivative_at at z=0 requires a series-represented function"
        )
    return (f(z) - f(q * z)) / (z * (1.0 - q))


def q_derivative_series(f: NormalizedSeries, q: float) -> np.ndarray:
    """Coefficients of D_q f: entry k is [k+1]_q * a_{k+1}, the z^k coefficient."""
    q = require_q(q)
    n = np.arange(1, f.coeffs.size + 1)
    return ((1.0 - q**n) / (1.0 - q)) * f.coeffs
