"""Reduced Bessel functions of half-integral order and related oracles.

``kh(nu, z) = (2/pi)^(1/2) z^nu K_nu(z)`` satisfies the upward-stable
three-term recursion ``kh_{nu+1} = 2 nu kh_nu + z^2 kh_{nu-1}`` with the
elementary starting values ``kh_{-1/2} = exp(-z)/z`` and
``kh_{1/2} = exp(-z)``.  At half-integral order the function is an
exponential times a polynomial, which connects it to the closed-form Pade
approximants of the exponential function; those in turn serve as independent
cross-checks for the epsilon table.  All hypergeometric sums here terminate;
there is deliberately no general-purpose series engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import (
    BadArgument,
    BadParameter,
    InsufficientData,
    SequenceSample,
    UnstableValue,
    guard_threshold,
)

__all__ = [
    "HalfIntOrder",
    "rbf_half",
    "rbf_at_zero",
    "bessel_poly_theta",
    "pade_exp",
    "shanks_determinant",
    "hankel_recursive",
    "inv_z_series_terms",
]


@dataclass(frozen=True)
class HalfIntOrder:
    """Order ``nu = n + 1/2`` with ``n >= -1``."""

    n: int

    def __post_init__(self) -> None:
        if self.n < -1:
            raise BadArgument(f"half-integral order needs n >= -1, got {self.n}")

    @property
    def nu(self) -> float:
        return self.n + 0.5


def _order(n: int | HalfIntOrder) -> int:
    if isinstance(n, HalfIntOrder):
        return n.n
    n = int(n)
    if n < -1:
        raise BadArgument(f"half-integral order needs n >= -1, got {n}")
    return n


def rbf_half(n: int | HalfIntOrder, z: float) -> float:
    """Reduced Bessel function of order ``n + 1/2`` by upward recursion."""
    n = _order(n)
    z = float(z)
    if not (z > 0.0 and math.isfinite(z)):
        raise BadArgument("rbf_half needs z > 0 (order -1/2 is singular at 0)")
    prev = math.exp(-z) / z  # order -1/2
    if n == -1:
        return prev
    cur = math.exp(-z)       # order +1/2
    z2 = z * z
    for m in range(n):
        prev, cur = cur, 2.0 * (m + 0.5) * cur + z2 * prev
    return cur


def _pochhammer_half(n: int) -> float:
    p = 1.0
    for i in range(n):
        p *= 0.5 + i
    return p


def rbf_at_zero(n: int) -> float:
    """Value at the origin, ``2^n (1/2)_n``, which also bounds ``rbf_half``."""
    if n < 0:
        raise BadArgument("rbf_at_zero needs n >= 0")
    return 2.0 ** n * _pochhammer_half(n)


def _hyp1f1_terminating(n: int, b: float, x: float) -> float:
    """``1F1(-n; b; x)`` for integer ``n >= 0`` as a finite sum."""
    total = 1.0
    term = 1.0
    for j in range(1, n + 1):
        term *= (j - 1 - n) / (b + j - 1) * x / j
        total += term
    return total


def bessel_poly_theta(n: int, z: float) -> float:
    """Bessel polynomial ``theta_n(z) = exp(z) rbf_half(n, z)``.

    Evaluated as the terminating sum ``2^n (1/2)_n 1F1(-n; -2n; 2z)``, which
    is a polynomial and therefore also defined for ``z <= 0`` (needed for the
    diagonal Pade identity).  Grows like ``2^n (1/2)_n exp(z)`` for large n.
    """
    if n < 0:
        raise BadArgument("bessel_poly_theta needs n >= 0")
    if n == 0:
        return 1.0
    return rbf_at_zero(n) * _hyp1f1_terminating(n, -2.0 * n, 2.0 * float(z))


def pade_exp(n: int, m: int, z: float) -> float:
    """Closed-form Pade approximant ``[n/m]`` of ``exp`` at ``z``.

    Ratio of two terminating confluent hypergeometric sums; on the real axis
    some off-diagonal approximants have poles, which surface as a sub-guard
    denominator.
    """
    if n < 0 or m < 0:
        raise BadParameter("pade_exp needs n, m >= 0")
    z = float(z)
    num = _hyp1f1_terminating(n, -float(n + m) if n + m else 1.0, z)
    den = _hyp1f1_terminating(m, -float(n + m) if n + m else 1.0, -z)
    if abs(den) < guard_threshold():
        raise UnstableValue(f"[{n}/{m}] of exp has a pole near z={z:g}")
    return num / den


def _det_pivoted(matrix: list[list[float]]) -> float:
    """Determinant by Gaussian elimination with partial pivoting."""
    a = [row[:] for row in matrix]
    size = len(a)
    det = 1.0
    for col in range(size):
        pivot = max(range(col, size), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0.0:
            return 0.0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1.0 / a[col][col]
        for r in range(col + 1, size):
            factor = a[r][col] * inv
            if factor != 0.0:
                for c in range(col, size):
                    a[r][c] -= factor * a[col][c]
    return det


def shanks_determinant(sample: SequenceSample, k: int, n: int) -> float:
    """Order-``k`` Shanks value as an explicit ratio of two determinants.

    This is the oracle route: both ``(k+1) x (k+1)`` determinants are
    evaluated by direct elimination with partial pivoting, independently of
    any lozenge recursion.  Restricted to ``k <= 4``; the determinants
    condition badly beyond that and the recursive routes cover larger orders.
    """
    if k < 0 or k > 4:
        raise BadParameter("shanks_determinant is an oracle for k <= 4")
    s = sample.values
    if n < 0 or n + 2 * k > sample.last_offset:
        raise InsufficientData(f"shanks_determinant needs offsets {n}..{n + 2 * k}")
    if k == 0:
        return s[n]
    d = [s[i + 1] - s[i] for i in range(len(s) - 1)]
    top = [[s[n + j] for j in range(k + 1)]]
    bot = [[1.0] * (k + 1)]
    for i in range(1, k + 1):
        row = [d[n + j + i - 1] for j in range(k + 1)]
        top.append(row)
        bot.append(row[:])
    den = _det_pivoted(bot)
    if abs(den) < guard_threshold():
        raise UnstableValue("singular denominator determinant")
    return _det_pivoted(top) / den


def hankel_recursive(u: Sequence[float], k: int, n: int) -> float:
    """Hankel determinant ``H_k(u_n)`` via the cross-rule recursion.

    ``H_{k+2}(u_n) H_k(u_{n+2}) = H_{k+1}(u_n) H_{k+1}(u_{n+2}) - H_{k+1}(u_{n+1})^2``
    from ``H_0 = 1`` and ``H_1(u_n) = u_n``.  Restricted to ``k <= 6``.
    """
    if k < 0 or k > 6:
        raise BadParameter("hankel_recursive supports 0 <= k <= 6")
    u = [float(x) for x in u]
    if k == 0:
        return 1.0
    need = n + 2 * (k - 1)
    if n < 0 or need > len(u) - 1:
        raise InsufficientData(f"hankel_recursive needs u[{n}..{need}]")
    guard = guard_threshold()
    H: dict[tuple[int, int], float] = {}
    for m in range(len(u)):
        H[(0, m)] = 1.0
        H[(1, m)] = u[m]
    for kk in range(0, k - 1):
        for m in range(len(u) - 2 * (kk + 1)):
            div = H.get((kk, m + 2))
            a = H.get((kk + 1, m))
            b = H.get((kk + 1, m + 2))
            c = H.get((kk + 1, m + 1))
            if div is None or a is None or b is None or c is None:
                continue
            if abs(div) < guard or not all(map(math.isfinite, (a, b, c))):
                if kk + 2 == k and m == n:
                    raise UnstableValue("vanishing pivot H_k(u_{n+2}) in the recursion")
                continue
            H[(kk + 2, m)] = (a * b - c * c) / div
    value = H.get((k, n))
    if value is None or not math.isfinite(value):
        raise UnstableValue("recursion pivot vanished along the way")
    return value


def inv_z_series_terms(z: float, count: int) -> list[float]:
    """Terms ``rbf_half(m - 1/2, z) / (2^m m!)`` of the ``1/z`` expansion.

    The division by ``2^m m!`` is interleaved with the upward recursion so
    the carried pair stays of order one (the raw function values grow like
    ``2^m (1/2)_m``).  Terms decay like ``m^(-3/2)``; the partial sums
    approach ``1/z`` like ``n^(-1/2)``.  If a nonfinite value ever appears
    the list is truncated there, so a short result flags the unstable tail.
    """
    z = float(z)
    if not (z > 0.0 and math.isfinite(z)):
        raise BadArgument("inv_z_series_terms needs z > 0")
    if count < 1:
        raise BadParameter("inv_z_series_terms needs count >= 1")
    terms: list[float] = []
    p = math.exp(-z) / z  # kh_{m-1/2} / (2^m m!) at m = 0
    c = math.exp(-z)      # kh_{m+1/2} / (2^m m!) at m = 0
    z2 = z * z
    for m in range(count):
        if not math.isfinite(p):
            break
        terms.append(p)
        nxt = 2.0 * (m + 0.5) * c + z2 * p
        den = 2.0 * (m + 1)
        p, c = c / den, nxt / den
    return terms
