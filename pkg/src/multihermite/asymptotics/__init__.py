"""Large-degree behaviour of H_{n,n,n} for the symmetric triple with scaled shift chat = c / sqrt(n)."""

from .curves import BranchValues, TrackingFailure, s_xi_identity_residual, solve_S_branches, solve_xi_branches
from .densities import SampledDensity, density_nu, density_v, sample_nu, sample_v
from .potential import VariationalReport, discrete_potential, log_potential, variational_report
from .support import SupportModel, critical_c, support_intervals

__all__ = [
    "BranchValues",
    "SampledDensity",
    "SupportModel",
    "TrackingFailure",
    "VariationalReport",
    "critical_c",
    "density_nu",
    "density_v",
    "discrete_potential",
    "log_potential",
    "s_xi_identity_residual",
    "sample_nu",
    "sample_v",
    "solve_S_branches",
    "solve_xi_branches",
    "support_intervals",
    "variational_report",
]
