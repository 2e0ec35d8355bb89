"""Per-target normalization of information flows.

Each target node i has its own normalizer

    Z = |self_influence_i| + sum_{j != i} |T[j -> i]| + noise_rate_i,

the total (absolute) budget of its marginal entropy rate.  The
normalized flow tau[j -> i] = T[j -> i] / Z lies in [-1, 1] and
measures the relative importance of a cause.  tau is reported
alongside T, never instead of it: significance always comes from the
unnormalized estimate and its CI.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateNormalizerError
from .estimator import FlowEstimate, NodeDiagnostics


@dataclass(frozen=True)
class NormalizedFlows:
    """Normalized inflows for one target node.

    ``tau[j]`` is tau[j -> target]; the target's own entry is zero.
    ``self_share`` and ``noise_share`` are the fractions of Z due to
    self-influence and noise, so self_share + noise_share + sum|tau| = 1.
    """

    target: int
    Z: float
    tau: np.ndarray
    self_share: float
    noise_share: float

    def __post_init__(self):
        arr = np.array(self.tau, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "tau", arr)


def normalize_flows(flows, diag: NodeDiagnostics) -> NormalizedFlows:
    """Normalize one target row of flow estimates.

    ``flows`` is a sequence of FlowEstimate for the same target (the
    target's own slot may be None).
    """
    i = diag.node
    d = len(flows)
    T = np.zeros(d)
    for j, est in enumerate(flows):
        if j == i:
            if est is not None:
                raise ValueError("self slot of a flow row must be None")
            continue
        if not isinstance(est, FlowEstimate) or est.target != i:
            raise ValueError(f"flow row entry {j} is not an estimate for target {i}")
        T[j] = est.T
    Z = abs(diag.self_influence) + np.sum(np.abs(T)) + diag.noise_rate
    if Z <= 0.0:
        raise DegenerateNormalizerError(
            f"target {i}: all entropy contributions are zero"
        )
    return NormalizedFlows(
        target=i,
        Z=float(Z),
        tau=T / Z,
        self_share=abs(diag.self_influence) / Z,
        noise_share=diag.noise_rate / Z,
    )
