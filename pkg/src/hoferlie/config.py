"""Numerical tolerances shared by the float layers."""
from dataclasses import dataclass, replace

EPS_MAT = 1e-9
EPS_BRANCH = 1e-6
EPS_CLUSTER = 1e-7
SNAP_DENOMINATOR = 10**9


@dataclass(frozen=True)
class Tolerances:
    eps_mat: float = EPS_MAT
    eps_branch: float = EPS_BRANCH
    eps_cluster: float = EPS_CLUSTER
    snap_den: int = SNAP_DENOMINATOR

    def __post_init__(self):
        for name in ("eps_mat", "eps_branch", "eps_cluster"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.snap_den < 1:
            raise ValueError("snap_den must be a positive integer")

    def with_(self, **kw):
        return replace(self, **kw)


DEFAULT = Tolerances()
