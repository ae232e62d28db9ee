"""Exception hierarchy for morbench."""


class MorbenchError(Exception):
    """Base class for all morbench failures."""


class DimensionError(MorbenchError, ValueError):
    """Matrix or parameter dimensions are inconsistent."""


class SimulationError(MorbenchError):
    """Time integration could not be carried out (singular step matrix, non-finite data)."""


class EigenvalueError(MorbenchError):
    """Generalized eigenvalue computation failed."""


class GramianError(MorbenchError):
    """Empirical Gramian assembly failed (divergent trajectories, bad inputs)."""


class DecompositionError(MorbenchError):
    """Truncated SVD did not converge."""


class BalancingError(MorbenchError):
    """Balancing transformation broke down."""

    def __init__(self, message: str, achieved_rank: int = 0):
        super().__init__(message)
        self.achieved_rank = achieved_rank


class ReductionError(MorbenchError, ValueError):
    """Projection or reduced order is invalid."""


class NormError(MorbenchError, ValueError):
    """Error norm cannot be evaluated."""


class ScoreError(MorbenchError, ValueError):
    """Error graph is malformed."""


class BenchmarkError(MorbenchError, ValueError):
    """Benchmark configuration cannot be discretized."""


class SamplingError(MorbenchError):
    """Parameter sampling violated its contract."""
