"""Front transport reduction of snapshot data with sharp moving fronts.

Snapshots ``q`` are approximated as ``f(phi_n)``: a low-rank level-set field
``phi_n`` passed through a one-dimensional front profile ``f``.
"""

from .contour import SegmentList, crossing_on_edge, extract_zero_level
from .core import (Grid1D, Grid2D, SnapshotSeries, make_grid, matrix_to_series,
                   series_to_matrix)
from .distance import (LevelSetField, point_segment_distance, sdf_series,
                       signed_distance_field)
from .errors import (BadMagic, EmptyContour, FormatError, FTRError, RankError,
                     ThresholdOutOfRange, TruncatedPayload, VersionMismatch)
from .estimators import FrontTransportReducer, PODReducer
from .ftr import (ErrorReport, FTRModel, error_report, ftr_decompose,
                  ftr_reconstruct, pod_reconstruct)
from .lowrank import (LowRankApprox, SVDFactors, spectral_truncation_error,
                      spectrum, thin_svd, truncate)
from .profile import (FrontProfile, SampleSet, collect_front_samples,
                      eval_profile, fit_profile, profile_derivative, tanh_profile)

__version__ = "0.1.0"
