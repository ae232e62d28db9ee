"""Parameter spaces and training/test sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from loguru import logger

from morbench.benchmarks.thermal_block import variant_theta
from morbench.config.schema import Variant
from morbench.errors import DimensionError, SamplingError
from morbench.system.types import AffineLTISystem, ParameterPoint

TRAINING_PER_DIM = 3


@dataclass(frozen=True)
class ParameterSpace:
    """
    The effective parameter of a benchmark variant and its map to the system θ.

    fixed has no effective parameter, single a scalar s, multi the full θ. Effective
    coordinates are sampled log-uniformly within their bounds.
    """
    variant: Variant
    bounds: tuple[tuple[float, float], ...]
    n_params: int
    fixed_theta: tuple[float, ...] | None = None
    single_weights: tuple[float, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.bounds)

    def to_theta(self, z: Sequence[float]) -> ParameterPoint:
        z = tuple(float(v) for v in z)
        if len(z) != self.dim:
            raise DimensionError(f"Effective parameter has {len(z)} entries, space has dim={self.dim}")
        if self.variant == "fixed":
            return ParameterPoint(self.fixed_theta or ())
        if self.variant == "single":
            return ParameterPoint(tuple(z[0] * w for w in self.single_weights or ()))
        return ParameterPoint(z)

    def log_midpoint(self) -> tuple[float, ...]:
        return tuple(math.sqrt(lo * hi) for lo, hi in self.bounds)

    @classmethod
    def thermal_block(
        cls, variant: Variant, theta_bounds: tuple[float, float] = (1.0, 10.0), n_regions: int = 4
    ) -> "ParameterSpace":
        if variant == "fixed":
            theta = variant_theta("fixed", n_regions=n_regions)
            return cls(variant, (), n_regions, fixed_theta=theta.values)
        if variant == "single":
            weights = variant_theta("single", 1.0, n_regions=n_regions)
            return cls(variant, (tuple(theta_bounds),), n_regions, single_weights=weights.values)
        return cls(variant, tuple(tuple(theta_bounds) for _ in range(n_regions)), n_regions)

    @classmethod
    def for_system(cls, system: AffineLTISystem, variant: Variant) -> "ParameterSpace":
        """Space over an imported system's declared parameter bounds (fixed uses their log-midpoint)."""
        if variant == "single":
            raise SamplingError("The single variant is defined for the thermal block only")
        bounds = system.param_bounds or ()
        if len(bounds) != system.P:
            raise SamplingError(f"System declares {len(bounds)} parameter bounds for P={system.P}")
        if any(not 0.0 < lo <= hi for lo, hi in bounds):
            raise SamplingError(f"Parameter bounds must be positive for log sampling, got {bounds}")
        if variant == "fixed":
            mid = tuple(math.sqrt(lo * hi) for lo, hi in bounds)
            return cls(variant, (), system.P, fixed_theta=mid)
        return cls(variant, bounds, system.P)


def seed_streams(seed: int, count: int) -> list[np.random.Generator]:
    """Independent generators: stream 0 samples test parameters, stream i+1 drives test point i."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count + 1)]


def sample_training(space: ParameterSpace) -> list[ParameterPoint]:
    """
    One-at-a-time log grid: per effective coordinate, 3 log-spaced values across its
    bounds with the other coordinates at their log-midpoint.
    """
    if space.dim == 0:
        return [space.to_theta(())]
    mid = space.log_midpoint()
    points = []
    for i, (lo, hi) in enumerate(space.bounds):
        for value in np.logspace(math.log10(lo), math.log10(hi), TRAINING_PER_DIM):
            z = list(mid)
            z[i] = float(value)
            points.append(space.to_theta(z))
    return points


def sample_test(
    space: ParameterSpace,
    count: int = 10,
    seed: int = 0,
    rng: np.random.Generator | None = None,
    training: Sequence[ParameterPoint] | None = None,
) -> list[ParameterPoint]:
    """
    Draw `count` log-uniform test parameters (the fixed variant yields its single θ).

    Raises:
        SamplingError: If a test point coincides with a training point.
    """
    if space.dim == 0:
        return [space.to_theta(())]
    if count < 1:
        raise SamplingError(f"Test sample count must be >= 1, got {count}")
    rng = rng or seed_streams(seed, count)[0]
    lo = np.log10([b[0] for b in space.bounds])
    hi = np.log10([b[1] for b in space.bounds])
    draws = 10.0 ** (lo + rng.random((count, space.dim)) * (hi - lo))
    points = [space.to_theta(row) for row in draws]

    if training:
        train = {p.values for p in training}
        clashes = [p.values for p in points if p.values in train]
        if clashes:
            raise SamplingError(f"Test parameters coincide with training parameters: {clashes}")
    logger.debug(f"Sampled {len(points)} test parameters ({space.variant})")
    return points
