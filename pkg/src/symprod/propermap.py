"""Induced maps between symmetric products and their boundary behaviour.

A holomorphic self-map f of the source domain induces a map between the
symmetric products, characterized by sending the coefficients of a root
tuple to the coefficients of the image tuple.  Two evaluation routes are
implemented:

* ``roots``    factor through root finding: desymmetrize, apply f to each
               root, symmetrize again;
* ``integral`` boundary integrals of the power sums of f over the kernel
               roots, pushed through Newton's identities.

The boundary-regularity experiment samples coefficient points close to the
edge of the symmetric product (root tuples near the boundary of the source
domain and near the diagonal), evaluates the induced map by the roots route
(no quadrature kernel blow-up there) and fits empirical Holder exponents
per component.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import AnalyticFunction, blaschke_function, identity_function, monomial_function
from .cauchy import BoundarySamples, boundary_samples
from .errors import ConfigError
from .geometry import DomainBoundary, sample_boundary
from .holder import ExponentFit, SampledField, estimate_exponent
from .symmetric import desymmetrize, lojasiewicz_exponent, symmetric_power_map, symmetrize


@dataclass(frozen=True)
class ProperMapSpec:
    """Source/target domains, the inducing map, and the arity."""

    source: DomainBoundary
    target: DomainBoundary
    fun: AnalyticFunction
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be >= 1")


def parse_proper_map(text: str) -> AnalyticFunction:
    """Parse 'monomial 2', 'blaschke 0.5 [0.1 ...]' (real zeros), or 'identity'."""
    tokens = text.split()
    if not tokens:
        raise ConfigError("empty proper-map descriptor")
    kind, args = tokens[0], tokens[1:]
    try:
        if kind == "monomial" and len(args) == 1:
            d = int(args[0])
            if d < 1:
                raise ConfigError("monomial degree must be >= 1")
            return monomial_function(d)
        if kind == "blaschke" and args:
            return blaschke_function([float(a) for a in args])
        if kind == "identity" and not args:
            return identity_function()
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"bad proper-map descriptor {text!r}: {exc}") from exc
    raise ConfigError(f"bad proper-map descriptor {text!r}")


def map_boundary_samples(spec: ProperMapSpec, nodes: int = 256) -> BoundarySamples:
    grid = sample_boundary(spec.source, nodes)
    return boundary_samples(grid, lambda t, theta: spec.fun(t), description=spec.fun.label)


def evaluate_proper_map(spec: ProperMapSpec, z, route: str = "roots",
                        samples: BoundarySamples | None = None, nodes: int = 256) -> np.ndarray:
    """Image of a coefficient tuple under the induced map."""
    z = np.asarray(z, dtype=complex)
    if route == "roots":
        w = desymmetrize(z).roots
        return symmetrize(spec.fun(w))
    if route == "integral":
        if samples is None:
            samples = map_boundary_samples(spec, nodes)
        return symmetric_power_map(samples, z)
    raise ValueError(f"unknown route {route!r}")


def route_agreement(spec: ProperMapSpec, count: int = 100, seed: int = 0, nodes: int = 256,
                    radius_factor: float = 0.8) -> float:
    """Max deviation between the two routes on random interior points."""
    rng = np.random.default_rng(seed)
    samples = map_boundary_samples(spec, nodes)
    worst = 0.0
    for _ in range(count):
        w = _uniform_disc_tuple(rng, spec.arity, radius_factor)
        z = symmetrize(w)
        a = evaluate_proper_map(spec, z, route="integral", samples=samples)
        b = evaluate_proper_map(spec, z, route="roots")
        worst = max(worst, float(np.abs(a - b).max()))
    return worst


def _uniform_disc_tuple(rng, n: int, radius: float) -> np.ndarray:
    pts = []
    while len(pts) < n:
        c = rng.uniform(-radius, radius) + 1j * rng.uniform(-radius, radius)
        if abs(c) < radius:
            pts.append(c)
    return np.asarray(pts)


@dataclass(frozen=True)
class RegularityResult:
    fits: tuple[ExponentFit, ...]
    threshold: float
    passed: bool
    samples_used: int


def sample_near_boundary_tuples(domain: DomainBoundary, n: int, count: int, rng,
                                depth_range=(1e-4, 1e-2), diagonal_fraction: float = 0.5,
                                pair_fraction: float = 0.1) -> np.ndarray:
    """Root tuples hugging the boundary of the source domain.

    A fraction of tuples carries a clustered coordinate pair (probing the
    degenerate diagonal directions) and another fraction is emitted twice
    with a sub-1e-3 offset, so the resulting coefficient cloud contains
    close sample pairs at every scale the exponent estimator bins.
    Coordinates are placed by inward normal offset from the outer contour,
    which keeps them inside for the offsets used here.
    """
    outer = domain.contours[0]

    def place(theta, depth):
        p = np.asarray(outer.point(theta), dtype=complex)
        tp = np.asarray(outer.tangent(theta), dtype=complex)
        return p + depth * (1j * tp / np.abs(tp))

    lo, hi = np.log10(depth_range[0]), np.log10(depth_range[1])
    n_pairs = int(count * pair_fraction / 2)
    n_base = count - n_pairs

    thetas = rng.uniform(0.0, 2.0 * np.pi, (n_base, n))
    depths = 10.0 ** rng.uniform(lo, hi, (n_base, n))
    if n >= 2:
        clustered = rng.random(n_base) < diagonal_fraction
        gaps = 10.0 ** rng.uniform(lo, hi, n_base)
        thetas[clustered, 1] = thetas[clustered, 0] + gaps[clustered]
    base = place(thetas, depths)

    if n_pairs:
        idx = rng.integers(0, n_base, n_pairs)
        shift = 10.0 ** rng.uniform(-4, -3, (n_pairs, 1))
        partners = place(
            thetas[idx] + shift * rng.uniform(-1, 1, (n_pairs, n)),
            depths[idx] * (1.0 + 0.2 * rng.uniform(-1, 1, (n_pairs, n))),
        )
        return np.concatenate([base, partners], axis=0)
    return base


def boundary_regularity_experiment(spec: ProperMapSpec, num_samples: int, seed: int = 0,
                                   theta: float = 0.9) -> RegularityResult:
    """Empirical exponent fits for each component of the induced map near
    the boundary of the symmetric product.

    Pass bar: every component's fitted exponent is at least
    theta / exponent(n) - 0.05.  The bound is expected to be slack for the
    catalog maps; exceeding it is the point, not a discrepancy.
    """
    if num_samples < 1000:
        raise ValueError("need at least 1000 samples")
    rng = np.random.default_rng(seed)
    n = spec.arity
    w = sample_near_boundary_tuples(spec.source, n, num_samples, rng)
    z = symmetrize(w)
    fz = symmetrize(spec.fun(w))   # roots route with the known preimages

    # Pairwise-distinct points are required downstream; drop duplicates.
    _, unique_idx = np.unique(np.round(z, 14), axis=0, return_index=True)
    z, fz = z[np.sort(unique_idx)], fz[np.sort(unique_idx)]
    cap = 4500
    if len(z) > cap:
        z, fz = z[:cap], fz[:cap]

    fits = []
    for comp in range(n):
        fld = SampledField(points=z, values=fz[:, comp],
                           metadata={"component": comp, "map": spec.fun.label, "n": n})
        fits.append(estimate_exponent(fld))
    threshold = theta / lojasiewicz_exponent(n) - 0.05
    passed = all(f.alpha_hat >= threshold for f in fits)
    return RegularityResult(fits=tuple(fits), threshold=threshold, passed=passed,
                            samples_used=len(z))
