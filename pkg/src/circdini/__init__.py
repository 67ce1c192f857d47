"""Circular tractrices and circular Dini surfaces in E^4."""

from .circular import (
    CircularTractrixParams,
    Regime,
    classify_regime,
    eval_v,
    ode_residual,
    position,
    second_order_residual,
    singular_points,
    stationary_v,
)
from .dini import DiniParams, MetricComponents, analytic_gauss_curvature, analytic_metric, embed, skew_rotation, sweep_check
from .diffgeo import brioschi_curvature, curvature_grid_report, first_fundamental_form, jet
from .exceptions import CircDiniError, ConstraintError, IntegrationError, ParameterError, SingularMetricError
from .frenet import DirectrixSpec, FrenetFrame, circle_directrix_spec, circle_frenet, circle_position
from .tractrix import IntegrationConfig, TractrixSample, integrate, ode_rhs, tangency_residual, tractrix_position

__version__ = "0.1.0"
