"""Partition identities for type-A quivers: lacing diagrams, Durfee rectangles,
orbit codimensions and exact truncated q-series checks."""

from .bijection import CutData, MultiPartition, phi, psi, roundtrip_check
from .identities import IdentityReport, verify
from .lacing import (
    Interval,
    LaceClass,
    PermSeq,
    dim_vector,
    durfee_statistic,
    enumerate_classes,
    leftstrands,
    s_stat,
    t_stat,
)
from .partitions import Partition, Rect, durfee_rect
from .quiver import OrientationWord, codim_condition, codim_oracle, euler_form, hom_dim, wq
from .series import TruncatedSeries

__version__ = "0.1.0"
