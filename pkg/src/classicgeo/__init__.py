"""Coordinate-free kernel for classic projective geometries over R, C and H."""

from .chyperbolic import (BisectorSegment, bisector_angle, goldman_u,
                          meridional_transport, triangle_area)
from .connection import (curvature, curvature_class, nabla_spread,
                         projector_derivative, sectional, sectional_values)
from .errors import (KernelError, PreconditionError, ValidationError)
from .geodesics import (CircleClass, Geodesic, bisector_normal,
                        circle_classify, cone_membership, contains,
                        from_tangent, length, same_geodesic, segment_tangent,
                        sphere_action, tangency_eq, through_points)
from .projective import (LineClass, PointClass, ProjPoint, classify, gram_det,
                         line_classify, orthopoint_in_line, proj_para,
                         proj_perp, same_point, tance)
from .scalars import Scalar, arg, as_scalar, conj, inv, mul, re
from .spaces import (ClassicSpace, LinearMap, Vector, adjoint, complex_trace,
                     form, rank_one, real_trace)
from .tangent import (Tangent, curve_tangent, hmetric, metric, observe,
                      spread, tangent_gap)
from .transport import (TransportResult, field_ct, field_eu, field_tn,
                        hv_decompose, tance_derivative, transport)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
