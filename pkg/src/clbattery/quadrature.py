"""Adaptive quadrature on semi-infinite intervals and principal values.

The core is a globally adaptive 15-point Gauss-Kronrod rule (the G7/K15
pair with QUADPACK-style error estimates). Integrands are evaluated on
whole arrays of nodes at once and may be vector valued: a callable that
maps an ``(n,)`` array of abscissae to a ``(k, n)`` array integrates ``k``
functions over one shared partition, which is how the physics modules
compute several moments of the same response function in a single pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NonConvergence, NonFiniteIntegrand, PoleAtBoundary

# Kronrod abscissae on [0, 1] (positive half, descending), QUADPACK dqk15.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for the odd-indexed Kronrod nodes (the 7-point rule).
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets for the adaptive integrators.

    ``truncation_factor`` sets where the finite part of a semi-infinite
    domain ends: beyond ``truncation_factor * largest_breakpoint`` the
    rational map ``x = b + b t/(1-t)`` takes over.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000
    truncation_factor: float = 50.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be > 0, got {self.rel_tol}")
        if not self.abs_tol >= 0:
            raise ValueError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if not self.truncation_factor >= 10:
            raise ValueError("truncation_factor must be >= 10")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of an adaptive integration.

    ``value`` and ``error_estimate`` are floats for scalar integrands and
    1-D arrays for vector-valued ones.
    """

    value: float | np.ndarray
    error_estimate: float | np.ndarray
    evaluations: int
    converged: bool
    subdivisions: int = 0

    def __float__(self):
        return float(self.value)


def _tolerance(total, config):
    return np.maximum(config.rel_tol * np.abs(total), config.abs_tol)


def _kronrod(g, a, b):
    """Apply the G7/K15 pair to every interval ``[a_i, b_i]``.

    Returns (values, errors, nodes) with shapes (k, m), (k, m), (m, 15).
    """
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = centre[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(g(x.ravel()), dtype=float)
    if fx.ndim == 1:
        fx = fx[None, :]
    fx = fx.reshape(fx.shape[0], len(a), 15)
    if not np.all(np.isfinite(fx)):
        bad = np.argwhere(~np.isfinite(fx))[0]
        node = float(x[bad[1], bad[2]])
        raise NonFiniteIntegrand(f"integrand is not finite at x = {node!r}", node=node)
    resk = fx @ KRONROD_WEIGHTS
    resg = fx @ GAUSS_WEIGHTS
    resabs = np.abs(fx) @ KRONROD_WEIGHTS
    mean = 0.5 * resk
    resasc = np.abs(fx - mean[..., None]) @ KRONROD_WEIGHTS
    err = np.abs((resk - resg) * half)
    resasc = resasc * np.abs(half)
    resabs = resabs * np.abs(half)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    floor = 50.0 * _EPS * resabs
    err = np.where(resabs > _UFLOW / (50.0 * _EPS), np.maximum(floor, err), err)
    return resk * half, err, x


def _adaptive(g, edges, config, raise_on_failure=True, describe=None):
    """Globally adaptive integration of ``g`` over consecutive ``edges``.

    ``describe`` maps an interval in the integration variable back to
    something human readable for diagnostics.
    """
    a = np.asarray(edges[:-1], dtype=float)
    b = np.asarray(edges[1:], dtype=float)
    keep = b > a
    a, b = a[keep], b[keep]
    if a.size == 0:
        return QuadratureResult(0.0, 0.0, 0, True, 0), None
    vals, errs, _ = _kronrod(g, a, b)
    evaluations = 15 * a.size
    frozen = np.zeros(a.size, dtype=bool)
    while True:
        total = vals.sum(axis=1)
        errtot = errs.sum(axis=1)
        tol = _tolerance(total, config)
        if np.all(errtot <= tol):
            converged = True
            break
        if a.size >= config.max_subdivisions:
            converged = False
            break
        share = (errs / tol[:, None]).max(axis=0)
        share[frozen] = -1.0
        order = np.argsort(share)[::-1]
        if share[order[0]] <= 0:
            converged = False
            break
        # Split the worst intervals until what remains is comfortably
        # below tolerance; cap the batch so the refinement stays local.
        cum = np.cumsum(np.where(share[order] > 0, share[order], 0.0))
        excess = share[share > 0].sum() - 0.5
        nsplit = int(np.searchsorted(cum, excess) + 1)
        room = config.max_subdivisions - a.size
        nsplit = max(1, min(nsplit, 32, room, int((share > 0).sum())))
        pick = order[:nsplit]
        lo, hi = a[pick], b[pick]
        mid = 0.5 * (lo + hi)
        tiny = (mid <= lo) | (mid >= hi) | (hi - lo <= 4 * _EPS * np.maximum(np.abs(lo), np.abs(hi)))
        if np.any(tiny):
            frozen[pick[tiny]] = True
            pick, lo, hi, mid = pick[~tiny], lo[~tiny], hi[~tiny], mid[~tiny]
            if pick.size == 0:
                continue
        na = np.concatenate([lo, mid])
        nb = np.concatenate([mid, hi])
        nv, ne, _ = _kronrod(g, na, nb)
        evaluations += 15 * na.size
        keep = np.ones(a.size, dtype=bool)
        keep[pick] = False
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        vals = np.concatenate([vals[:, keep], nv], axis=1)
        errs = np.concatenate([errs[:, keep], ne], axis=1)
        frozen = np.concatenate([frozen[keep], np.zeros(na.size, dtype=bool)])
    total = vals.sum(axis=1)
    errtot = errs.sum(axis=1)
    worst = int(np.argmax((errs / _tolerance(total, config)[:, None]).max(axis=0)))
    interval = (float(a[worst]), float(b[worst]))
    if describe is not None:
        interval = describe(interval)
    result = QuadratureResult(total, errtot, evaluations, converged, int(a.size))
    if not converged and raise_on_failure:
        raise NonConvergence(
            f"adaptive quadrature did not converge after {a.size} subintervals "
            f"(error {np.max(errtot):.3g}); worst subinterval {interval}",
            result=result,
            worst_interval=interval,
        )
    return result, interval


def _squeeze(result, scalar):
    if not scalar:
        return result
    return QuadratureResult(
        float(result.value[0]),
        float(result.error_estimate[0]),
        result.evaluations,
        result.converged,
        result.subdivisions,
    )


def _is_scalar_integrand(f, probe):
    out = np.asarray(f(np.array([probe])), dtype=float)
    return out.ndim == 1


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    breakpoints: Sequence[float] = (),
    config: QuadratureConfig = DEFAULT_CONFIG,
    raise_on_failure: bool = True,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]``; ``b`` may be ``inf``.

    Breakpoints inside ``(a, b)`` split the domain. For an infinite upper
    limit the domain is finite up to ``truncation_factor`` times the
    largest edge and mapped to ``(0, 1)`` beyond it.
    """
    if not b > a:
        if b == a:
            return QuadratureResult(0.0, 0.0, 0, True, 0)
        res = integrate(f, b, a, breakpoints, config, raise_on_failure)
        return QuadratureResult(-res.value, res.error_estimate, res.evaluations,
                                res.converged, res.subdivisions)
    inner = sorted({float(p) for p in breakpoints if a < p < b})
    finite_edges = [float(a)] + inner
    scalar = None
    if math.isinf(b):
        top = max(abs(finite_edges[-1]), 1.0)
        cut = max(config.truncation_factor * top, finite_edges[-1] + top)
        finite_edges.append(cut)
        scale = cut

        def g_finite(x):
            return f(x)

        def g_tail(s):
            # s -> 0 is x -> inf; keeping infinity at the origin of the
            # variable preserves resolution for slowly decaying tails.
            safe = np.maximum(s, _UFLOW)
            x = cut + scale * (1.0 - safe) / safe
            with np.errstate(over="ignore", invalid="ignore"):
                out = np.asarray(f(x), dtype=float) * (scale / safe**2)
            return np.where(s > 0, out, 0.0)

        scalar = _is_scalar_integrand(f, 0.5 * (finite_edges[0] + finite_edges[1]))
        res1, _ = _adaptive(_vectorize(g_finite), finite_edges, config, False)
        res2, _ = _adaptive(_vectorize(g_tail), [0.0, 0.5, 1.0], config, False)
        res = _combine(res1, res2, config)
        interval = None
        if not res.converged:
            # One joint pass with a shared error budget before giving up.
            res, interval = _joint_semi_infinite(f, finite_edges, cut, scale, config)
        if not res.converged and raise_on_failure:
            raise NonConvergence(
                f"semi-infinite quadrature did not converge (error "
                f"{np.max(res.error_estimate):.3g}); worst subinterval {interval}",
                result=_squeeze(res, scalar),
                worst_interval=interval,
            )
        return _squeeze(res, scalar)
    finite_edges.append(float(b))
    scalar = _is_scalar_integrand(f, 0.5 * (finite_edges[0] + finite_edges[1]))
    res, _ = _adaptive(_vectorize(f), finite_edges, config, raise_on_failure)
    return _squeeze(res, scalar)


def _vectorize(f):
    def g(x):
        out = np.asarray(f(x), dtype=float)
        if out.ndim == 0:
            out = np.full(x.shape, float(out))
        return out
    return g


def _combine(r1, r2, config):
    total = r1.value + r2.value
    err = r1.error_estimate + r2.error_estimate
    ok = bool(np.all(err <= _tolerance(total, config)))
    return QuadratureResult(total, err, r1.evaluations + r2.evaluations, ok,
                            r1.subdivisions + r2.subdivisions)


def _joint_semi_infinite(f, finite_edges, cut, scale, config):
    # Map the whole problem to one variable so a single error budget is
    # shared: u in [0, 1) is the tail (u -> 0 at infinity) and u in
    # [1, n + 1) walks the finite edges.
    edges = np.asarray(finite_edges, dtype=float)
    n = len(edges) - 1

    def g(u):
        u = np.asarray(u, dtype=float)
        tail = u < 1.0
        idx = np.clip(np.floor(u).astype(int) - 1, 0, n - 1)
        frac = u - 1.0 - idx
        lo = edges[idx]
        hi = edges[idx + 1]
        safe = np.maximum(u, _UFLOW)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            x = np.where(tail, cut + scale * (1.0 - safe) / safe, lo + frac * (hi - lo))
            jac = np.where(tail, scale / safe**2, hi - lo)
            out = np.asarray(f(x), dtype=float) * jac
        return np.where(u > 0, out, 0.0)

    def to_x(u):
        if u < 1.0:
            return math.inf if u <= 0 else cut + scale * (1.0 - u) / u
        k = min(int(u) - 1, n - 1)
        return float(edges[k] + (u - 1.0 - k) * (edges[k + 1] - edges[k]))

    def describe(iv):
        lo, hi = sorted((to_x(iv[0]), to_x(iv[1])))
        return (lo, hi)

    return _adaptive(g, np.arange(n + 2, dtype=float), config, False, describe=describe)


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float] = (),
    config: QuadratureConfig = DEFAULT_CONFIG,
    raise_on_failure: bool = True,
) -> QuadratureResult:
    """Adaptive estimate of the integral of ``f`` over ``(0, inf)``.

    Args:
        f: vectorized integrand, ``(n,) -> (n,)`` or ``(n,) -> (k, n)``.
            It is never evaluated at 0 itself, so integrable endpoint
            behaviour there is fine.
        breakpoints: positive abscissae where ``f`` has structure
            (resonances, kinks, scale changes).
        config: tolerances.
        raise_on_failure: if False, an unconverged result is returned with
            ``converged=False`` instead of raising NonConvergence.

    Raises:
        NonConvergence: subdivision budget exhausted above tolerance.
        NonFiniteIntegrand: ``f`` returned NaN/inf at a node.
    """
    bps = [float(p) for p in breakpoints]
    if any(p <= 0 or not math.isfinite(p) for p in bps):
        raise ValueError("breakpoints must be positive and finite")
    return integrate(f, 0.0, math.inf, bps, config, raise_on_failure)


def integrate_principal_value(
    f: Callable[[np.ndarray], np.ndarray],
    pole: float | np.ndarray,
    config: QuadratureConfig = DEFAULT_CONFIG,
    upper: float = math.inf,
    raise_on_failure: bool = True,
) -> QuadratureResult:
    """Cauchy principal value of ``f(z) / (z - pole)`` over ``(0, upper)``.

    The symmetric window ``[pole - eps, pole + eps]`` is folded onto
    ``(0, eps)`` where the integrand becomes the finite difference quotient
    ``[f(pole + u) - f(pole - u)] / u``; the rest is integrated directly.
    The identity is exact for any ``eps``, so the window is taken wide
    (half the distance to the origin) to keep both pieces well scaled.

    ``pole`` may be a 1-D array; all poles are then integrated together on
    a shared, rescaled partition and ``value`` is an array.

    Raises:
        PoleAtBoundary: some pole is not strictly inside ``(0, upper)``.
    """
    poles = np.atleast_1d(np.asarray(pole, dtype=float))
    scalar = np.ndim(pole) == 0
    if poles.size == 0:
        return QuadratureResult(np.zeros(0), np.zeros(0), 0, True, 0)
    if np.any(poles <= 0) or np.any(poles >= upper) or not np.all(np.isfinite(poles)):
        raise PoleAtBoundary(f"pole must lie strictly inside (0, {upper}), got {pole!r}")
    if math.isinf(upper):
        eps = 0.5 * poles
    else:
        room = upper - poles
        eps = np.where(room <= poles, room, np.minimum(0.5 * poles, room))
    p = poles[:, None]
    e = eps[:, None]

    def window(s):
        u = e * s[None, :]
        return (f(p + u) - f(p - u)) / u * e

    left_len = (poles - eps)[:, None]

    def left(s):
        z = left_len * s[None, :]
        return f(z) / (z - p) * left_len

    evaluations = 0
    value = np.zeros(poles.size)
    error = np.zeros(poles.size)
    converged = True
    parts = [(window, [0.0, 1.0])]
    if np.any(left_len > 0):
        parts.append((left, [0.0, 0.5, 1.0]))
    for g, edges in parts:
        res, _ = _adaptive(g, edges, config, False)
        value += res.value
        error += res.error_estimate
        evaluations += res.evaluations
        converged &= res.converged
    start = (poles + eps)[:, None]
    if math.isinf(upper):
        scale = np.maximum(poles, 1.0)[:, None]

        def right(s):
            safe = np.maximum(s, _UFLOW)[None, :]
            z = start + scale * (1.0 - safe) / safe
            with np.errstate(over="ignore", invalid="ignore"):
                out = f(z) / (z - p) * (scale / safe**2)
            return np.where(s[None, :] > 0, out, 0.0)

        res, _ = _adaptive(right, [0.0, 0.25, 0.5, 0.75, 1.0], config, False)
    else:
        span = (upper - poles - eps)[:, None]
        if np.all(span <= 0):
            res = None
        else:
            def right(s):
                z = start + span * s[None, :]
                return f(z) / (z - p) * span

            res, _ = _adaptive(right, [0.0, 1.0], config, False)
    if res is not None:
        value += res.value
        error += res.error_estimate
        evaluations += res.evaluations
        converged &= res.converged
    converged = bool(np.all(error <= _tolerance(value, config))) or converged
    result = QuadratureResult(value, error, evaluations, converged)
    if not converged and raise_on_failure:
        raise NonConvergence(
            f"principal value did not converge (error {np.max(error):.3g})", result=result
        )
    if scalar:
        return QuadratureResult(float(value[0]), float(error[0]), evaluations, converged)
    return result
