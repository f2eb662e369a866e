"""Levin-type transformations driven by explicit remainder estimates.

The general transformation divides two binomial sums of weighted
``S_{n+j} / w_{n+j}`` and ``1 / w_{n+j}`` values, where ``w_n`` estimates the
remainder ``S_n - S``.  The ``u`` and ``v`` variants derive the estimates
from the input data itself and therefore start one element late (they read
``S_{n-1}``).  Low-order explicit forms are provided separately because they
double as starting values for the blended epsilon/theta scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import (
    BadEstimates,
    BadParameter,
    EntryStatus,
    InsufficientData,
    SequenceSample,
    TableEntry,
    TransformSpec,
    TransformTable,
    UnstableValue,
    guard_threshold,
)

__all__ = [
    "RemainderEstimates",
    "levin_general",
    "levin_u",
    "levin_v",
    "u2_explicit",
    "v1_explicit",
]


@dataclass(frozen=True)
class RemainderEstimates:
    """Remainder estimates ``w_n`` aligned with sample offsets.

    ``values[n]`` is ``w_n`` or ``None`` where no estimate exists (data-derived
    policies have no estimate at the edges).  ``policy`` records how the
    estimates were obtained: ``"explicit"``, ``"u"`` or ``"v"``.
    """

    values: tuple[float | None, ...]
    policy: str = "explicit"

    @staticmethod
    def explicit(values: Sequence[float]) -> "RemainderEstimates":
        vals = tuple(float(v) for v in values)
        if any(not math.isfinite(v) or v == 0.0 for v in vals):
            raise BadEstimates("explicit remainder estimates must be finite and nonzero")
        return RemainderEstimates(vals, "explicit")

    @staticmethod
    def u_variant(sample: SequenceSample, beta: float = 1.0) -> "RemainderEstimates":
        """``w_n = (beta + n) dS_{n-1}``, defined from offset 1 on."""
        s = sample.values
        vals: list[float | None] = [None]
        vals += [(beta + n) * (s[n] - s[n - 1]) for n in range(1, len(s))]
        return RemainderEstimates(tuple(vals), "u")

    @staticmethod
    def v_variant(sample: SequenceSample) -> "RemainderEstimates":
        """``w_n = -dS_{n-1} dS_n / d2S_{n-1}``, defined on offsets 1 .. N-1.

        The sign is irrelevant: the transformation is homogeneous of degree
        zero in the estimates.
        """
        s = sample.values
        guard = guard_threshold()
        vals: list[float | None] = [None]
        for n in range(1, len(s) - 1):
            dd = s[n + 1] - 2.0 * s[n] + s[n - 1]
            if abs(dd) < guard:
                vals.append(math.nan)  # unusable; entries touching it go unstable
            else:
                vals.append(-(s[n] - s[n - 1]) * (s[n + 1] - s[n]) / dd)
        vals.append(None)
        return RemainderEstimates(tuple(vals), "v")


def _coefficient(beta: float, n: int, j: int, k: int) -> float:
    """Binomial weight with the power of the shift ratio formed first.

    Forming ``(beta+n+j)/(beta+n+k)`` before exponentiation keeps the weights
    of order one even for k around 20, where the raw powers would overflow.
    """
    sign = -1.0 if j % 2 else 1.0
    ratio = (beta + n + j) / (beta + n + k)
    return sign * math.comb(k, j) * ratio ** (k - 1)


def levin_general(
    sample: SequenceSample,
    beta: float = 1.0,
    omega: RemainderEstimates | Sequence[float] | None = None,
) -> TransformTable:
    """General Levin table ``L_k^(n)`` for the given remainder estimates.

    The offsets ``n`` index positions into the sample, whose first element
    must be the sequence's own first element (the weights depend explicitly
    on ``n``).  Entries exist wherever all needed estimates exist;
    sub-guard estimates or denominator sums mark entries unstable.
    """
    if not (beta > 0.0 and math.isfinite(beta)):
        raise BadParameter(f"levin_general needs beta > 0, got {beta!r}")
    if omega is None:
        raise BadEstimates("levin_general needs remainder estimates")
    if not isinstance(omega, RemainderEstimates):
        omega = RemainderEstimates.explicit(omega)
    s = sample.values
    N = sample.last_offset
    guard = guard_threshold()
    w = omega.values
    if len(w) < len(s):
        w = w + (None,) * (len(s) - len(w))

    lookback = 1 if omega.policy in ("u", "v") else 0
    extra = 1 if omega.policy == "v" else 0  # w_n of the v kind reads S_{n+1}

    values: dict[tuple[int, int], float] = {}
    status: dict[tuple[int, int], EntryStatus] = {}
    for n in range(N + 1):
        if w[n] is None:
            continue
        for k in range(0, N - n + 1 - extra):
            window = [w[n + j] for j in range(k + 1)]
            if any(x is None for x in window):
                continue
            key = (k, n)
            if any(not math.isfinite(x) or abs(x) < guard for x in window):
                values[key], status[key] = math.nan, EntryStatus.UNSTABLE
                continue
            if k == 0:
                # empty difference operator: the transform is the identity
                values[key], status[key] = s[n], EntryStatus.VALID
                continue
            num = 0.0
            den = 0.0
            for j in range(k + 1):
                c = _coefficient(beta, n, j, k)
                num += c * s[n + j] / window[j]
                den += c / window[j]
            if abs(den) < guard or not math.isfinite(num) or not math.isfinite(den):
                values[key], status[key] = math.nan, EntryStatus.UNSTABLE
                continue
            v = num / den
            if math.isfinite(v):
                values[key], status[key] = v, EntryStatus.VALID
            else:
                values[key], status[key] = math.nan, EntryStatus.UNSTABLE

    entries = {key: TableEntry(values[key], status[key]) for key in values}
    spec = TransformSpec(f"levin-{omega.policy}" if omega.policy != "explicit" else "levin",
                         beta=beta)
    return TransformTable(
        kind=spec,
        entries=entries,
        width=(lambda k: k + extra),
        sample_length=len(sample),
        approximant_step=1,
        lookback=lookback,
    )


def levin_u(sample: SequenceSample, beta: float = 1.0) -> TransformTable:
    """Levin's u variant: estimates ``(beta + n) dS_{n-1}``."""
    if sample.last_offset < 1:
        raise InsufficientData("levin_u needs at least two elements")
    return levin_general(sample, beta, RemainderEstimates.u_variant(sample, beta))


def levin_v(sample: SequenceSample, beta: float = 1.0) -> TransformTable:
    """Levin's v variant: delta-squared style estimates."""
    if sample.last_offset < 2:
        raise InsufficientData("levin_v needs at least three elements")
    return levin_general(sample, beta, RemainderEstimates.v_variant(sample))


def u2_explicit(sample: SequenceSample, n: int) -> float:
    """Second-order u value in its cancellation-resistant form.

    ``u_2^(n) = S_n - dS_{n-1} dS_n d2S_n / (dS_{n+1} d2S_{n-1} - dS_{n-1} d2S_n)``;
    independent of ``beta``.
    """
    s = sample.values
    if n < 1 or n + 2 > sample.last_offset:
        raise InsufficientData(f"u2_explicit needs offsets {n - 1}..{n + 2}")
    d_1 = s[n] - s[n - 1]
    d0 = s[n + 1] - s[n]
    d1 = s[n + 2] - s[n + 1]
    dd_1 = s[n + 1] - 2.0 * s[n] + s[n - 1]
    dd0 = s[n + 2] - 2.0 * s[n + 1] + s[n]
    den = d1 * dd_1 - d_1 * dd0
    if abs(den) < guard_threshold():
        raise UnstableValue("u2 denominator below guard")
    return s[n] - d_1 * d0 * dd0 / den


def v1_explicit(sample: SequenceSample, n: int) -> float:
    """First-order v value; equals ``u2_explicit`` at the same offset."""
    s = sample.values
    if n < 1 or n + 2 > sample.last_offset:
        raise InsufficientData(f"v1_explicit needs offsets {n - 1}..{n + 2}")
    d_1 = s[n] - s[n - 1]
    d0 = s[n + 1] - s[n]
    d1 = s[n + 2] - s[n + 1]
    dd_1 = s[n + 1] - 2.0 * s[n] + s[n - 1]
    dd0 = s[n + 2] - 2.0 * s[n + 1] + s[n]
    den = d_1 * dd0 - d1 * dd_1
    if abs(den) < guard_threshold():
        raise UnstableValue("v1 denominator below guard")
    return s[n] + d0 * d_1 * dd0 / den
