"""Critical lattices and optimal lattice packings of the planar balls |x|^p + |y|^p <= 1."""

from .critical import (
    Branch,
    CriticalData,
    PZero,
    cached_p_zero,
    critical_determinant,
    delta0,
    delta1,
    p_zero,
    packing_density,
    sigma,
    tau,
)
from .geometry import (
    P_MAX,
    BallClass,
    DyadicDomain,
    Point2,
    boundary_point,
    circumradius,
    classify,
    contains,
    log_gamma,
    p_functional,
    volume,
)
from .lattice import (
    AdmissibilityReport,
    Lattice2,
    admissibility,
    critical_lattice,
    enumerate_points,
    lambda0,
    lambda1,
    scale_lattice,
)
from .oracle import FamilyMember, SearchResult, close_family, min_det_search
from .tower import Direction, TowerLevel, TowerReport, build_tower, check_section

__version__ = "0.1.0"
