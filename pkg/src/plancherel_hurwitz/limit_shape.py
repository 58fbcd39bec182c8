"""VKLS curve, profile distances, the hook functional and shape statistics."""
from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import integrate

from .partitions import Partition, Profile, hook_lengths, rescaled_profile


class QuadratureError(RuntimeError):
    pass


def omega(x):
    """The VKLS curve ``(2/pi)(x asin(x/2) + sqrt(4 - x^2))`` on ``|x| <= 2``, ``|x|`` outside."""
    x = np.asarray(x, dtype=float)
    inner = np.clip(x, -2.0, 2.0)
    val = (2 / np.pi) * (inner * np.arcsin(inner / 2) + np.sqrt(np.maximum(4 - inner * inner, 0.0)))
    out = np.where(np.abs(x) <= 2, val, np.abs(x))
    return out if out.ndim else float(out)


def omega_slope(x):
    """Derivative of ``omega``: ``(2/pi) asin(x/2)`` inside, ``sign(x)`` outside."""
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) <= 2, (2 / np.pi) * np.arcsin(np.clip(x, -2, 2) / 2), np.sign(x))


def bulk_profile(lam: Sequence[int]) -> Profile:
    """Profile of ``lam`` without its first part, kept at the ``sqrt(|lam|)`` scale."""
    return rescaled_profile(Partition(lam[1:]), max(sum(lam), 1))


def _polyline_sup(xs: np.ndarray, ys: np.ndarray) -> float:
    # sup |L - omega| for L piecewise linear through (xs, ys) and |x| beyond
    cand = [xs, np.array([-2.0, 2.0])]
    dx = np.diff(xs)
    ok = dx > 0
    slopes = np.diff(ys)[ok] / dx[ok]
    # omega is convex, so omega - (linear piece) is extremal where omega' = slope
    stat = 2 * np.sin(np.pi * np.clip(slopes, -1, 1) / 2)
    inside = (stat > xs[:-1][ok]) & (stat < xs[1:][ok])
    cand.append(stat[inside])
    pts = np.concatenate(cand)
    lin = np.interp(pts, xs, ys)
    lin = np.where((pts < xs[0]) | (pts > xs[-1]), np.abs(pts), lin)
    return float(np.max(np.abs(lin - omega(pts))))


def sup_distance(shape, exclude_first_part: bool = False) -> float:
    """Exact ``sup_x |psi(x) - omega(x)|``.

    ``shape`` is a partition or a :class:`Profile`. With
    ``exclude_first_part`` the partition's first part is dropped and the
    profile of the rest keeps the scaling of the full partition.
    """
    if isinstance(shape, Profile):
        if exclude_first_part:
            raise ValueError("exclude_first_part needs a partition, not a profile")
        prof = shape
    else:
        prof = bulk_profile(shape) if exclude_first_part else rescaled_profile(shape)
    pts = prof.breakpoints
    return _polyline_sup(pts[:, 0], pts[:, 1])


def sup_distance_curve(xs, ys) -> float:
    """Sup distance from ``omega`` to an arbitrary piecewise-linear curve."""
    return _polyline_sup(np.asarray(xs, float), np.asarray(ys, float))


def content_from_profile(lam: Sequence[int]) -> Fraction:
    """Content sum recovered from ``(n^{3/2}/2) * integral x (psi - |x|) dx``.

    The integral is evaluated exactly on the integer breakpoints, where the
    ``n^{3/2}`` factors cancel.
    """
    if not lam:
        raise ValueError("content_from_profile needs a non-empty partition")
    return rescaled_profile(lam).first_moment() / 2


def _box_log_integral(h: int) -> float:
    # integral of log(h + 1 - a - b) over the unit square, via G'' = log
    def G(s):
        return 0.0 if s == 0 else 0.5 * s * s * math.log(s) - 0.75 * s * s

    return G(h - 1) - 2 * G(h) + G(h + 1)


def hook_integral(lam: Sequence[int]) -> float:
    """Hook functional of the rescaled diagram of ``lam``.

    On a Young diagram the rescaled hook length is affine on every box, so
    the log integral over each box has a closed form; boxes are grouped by
    hook length.
    """
    n = sum(lam)
    if n < 1:
        raise ValueError("hook_integral needs a non-empty partition")
    hooks = Counter(hook_lengths(lam))
    total = math.fsum(k * _box_log_integral(h) for h, k in hooks.items())
    return total / n - 0.5 * math.log(n)


def hook_integral_curve(xs, ys, tol: float = 1e-4) -> float:
    """Hook functional of a piecewise-linear Russian-coordinate profile.

    ``(xs, ys)`` are breakpoints of a 1-Lipschitz profile of area 2 (the
    ``|x|`` extension is implied). The diagram is rotated back to French
    coordinates of unit area and the double integral is computed with
    adaptive quadrature, subtracting the ``log(arm)`` singularity along the
    boundary analytically. Raises :class:`QuadratureError` when the
    estimated absolute error exceeds ``tol``.
    """
    xs = np.asarray(xs, float)
    ys = np.asarray(ys, float)
    cols = (ys + xs) / 2  # non-decreasing along the profile
    rows = (ys - xs) / 2  # non-increasing along the profile
    rows_up, cols_dn = rows[::-1], cols[::-1]

    def row_length(u):
        return float(np.interp(u, rows_up, cols_dn))

    def col_height(v):
        return float(np.interp(v, cols, rows))

    top = float(rows[0])
    knots_u = sorted({float(r) for r in rows if 0 < r < top})
    errs = []

    def inner(u):
        arm_max = row_length(u)
        if arm_max <= 0:
            return 0.0

        def rem(w):
            if w <= 0:
                return 0.0
            leg = col_height(arm_max - w) - u
            return math.log1p(max(leg, 0.0) / w)

        knots = sorted({arm_max - float(c) for c in cols if 0 < arm_max - c < arm_max})
        val, err = integrate.quad(rem, 0.0, arm_max, points=knots if 0 < len(knots) <= 50 else None, limit=200, epsabs=tol * 1e-3)
        errs.append(err)
        return val + arm_max * math.log(arm_max) - arm_max

    with warnings.catch_warnings():
        # convergence is judged below from the returned error estimates
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(inner, 0.0, top, points=knots_u if 0 < len(knots_u) <= 50 else None, limit=400, epsabs=tol * 1e-3)
    total_err = err + (float(np.mean(errs)) if errs else 0.0) * top
    if not math.isfinite(val) or total_err > tol:
        raise QuadratureError(f"hook integral did not converge: value={val}, error estimate={total_err}")
    return val


def omega_interpolant(points: int = 2001) -> tuple[np.ndarray, np.ndarray]:
    xs = np.linspace(-2.0, 2.0, points)
    return xs, omega(xs)


def omega_area() -> float:
    """``integral (omega - |x|) dx`` by adaptive quadrature."""
    val, _ = integrate.quad(lambda x: omega(x) - abs(x), -2, 2, epsabs=1e-12, epsrel=1e-12)
    return val


@dataclass(frozen=True)
class ShapeStats:
    lambda1_ratio: float
    lambda2_scaled: float
    length_scaled: float
    sup_dist_bulk: float

    def to_json(self) -> dict:
        return asdict(self)


def shape_stats(lam: Sequence[int], n: int | None = None, ell: int = 0) -> ShapeStats:
    """First-part ratio ``lam_1 log n / (2 ell)``, ``lam_2/sqrt n``, ``len/sqrt n``, bulk sup distance."""
    if not lam:
        raise ValueError("shape_stats needs a non-empty partition")
    size = sum(lam)
    n = size if n is None else n
    if n != size:
        raise ValueError(f"partition has size {size}, expected {n}")
    root = math.sqrt(n)
    ratio = lam[0] * math.log(n) / (2 * ell) if ell > 0 and n > 1 else math.inf
    second = lam[1] if len(lam) > 1 else 0
    return ShapeStats(
        lambda1_ratio=ratio,
        lambda2_scaled=second / root,
        length_scaled=len(lam) / root,
        sup_dist_bulk=sup_distance(lam, exclude_first_part=True),
    )


def profile_mesh(x_max: float = 3.0, points: int = 601) -> np.ndarray:
    return np.linspace(-x_max, x_max, points)
