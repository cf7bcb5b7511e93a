# Copyright 2026 The slipfsi Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""The flow map of a displaced closed surface.

  Phi_w(X) = X + f_Gamma(d(X)) w(Phi^-1(pi(X))) n(pi(X))

with the signed distance d, the projection pi and the outer normal n of the
surface pack, and the cutoff f_Gamma of geometry.cutoff. The map is the
identity outside the support of f_Gamma. Its inverse is taken as

  Phi_w^-1(x) = x - f_Gamma(d(x)) w(Phi^-1(pi(x))) n(pi(x)),

which is exact wherever both x and its preimage lie on the plateau of
f_Gamma, since a displacement along n keeps the projection.

These evaluators are numpy-based and only used to check identities; no
equation is solved on a general geometry.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np

from slipfsi import errors


def _displacement_values(surface, w, x):
  if callable(w):
    u, v = surface.to_parameters(surface.project(x))
    return np.broadcast_to(np.asarray(w(u, v), dtype=np.float64),
                           x.shape[:-1])
  return np.full(x.shape[:-1], float(w))


def _check_band(values, cutoff):
  lower, upper = cutoff.plateau
  if values.size and (np.min(values) <= lower or np.max(values) >= upper):
    raise errors.BandError(
        "Displacement outside the admissible band (" + str(lower) + ", " +
        str(upper) + "): [" + str(float(np.min(values))) + ", " +
        str(float(np.max(values))) + "]")


def _shift(surface, cutoff, w, points, sign):
  """points + sign * f_Gamma(d) w n, the identity outside the support."""
  x = np.array(points, dtype=np.float64).reshape(-1, 3)
  with np.errstate(invalid="ignore", divide="ignore"):
    distance = surface.signed_distance(x)
  lower, upper = cutoff.support
  active = np.isfinite(distance) & (distance > lower) & (distance < upper)
  if not np.any(active):
    return x
  near = x[active]
  surface.check_neighborhood(near)
  values = _displacement_values(surface, w, near)
  _check_band(values, cutoff)
  weight = cutoff(distance[active]) * values
  x[active] = near + sign * weight[:, np.newaxis] * surface.normal(near)
  return x


def general_flow_map(surface, cutoff, w, points):
  """Evaluates Phi_w at points.

  Args:
    surface: a geometry.surfaces.Surface.
    cutoff: a geometry.cutoff.CutoffProfile.
    w: the displacement, a number or a callable of the surface parameters
      (u, v).
    points: array of shape (..., 3).

  Returns:
    numpy array of shape (npoints, 3).

  Raises:
    errors.DomainError: if a point in the support of the cutoff lies outside
      the tubular neighborhood of the surface.
    errors.BandError: if w leaves the plateau of the cutoff.
  """
  return _shift(surface, cutoff, w, points, 1.0)


def general_flow_map_inverse(surface, cutoff, w, points):
  """Evaluates Phi_w^-1 at points; raises like general_flow_map."""
  return _shift(surface, cutoff, w, points, -1.0)


def _gradient(surface, cutoff, w, point, step):
  columns = []
  for axis in range(3):
    offset = np.zeros(3)
    offset[axis] = step
    plus = general_flow_map(surface, cutoff, w, point + offset)[0]
    minus = general_flow_map(surface, cutoff, w, point - offset)[0]
    columns.append((plus - minus) / (2.0 * step))
  return np.stack(columns, axis=1)


def hadamard_margin(surface, cutoff, w, points, step=1e-5):
  """min over points of 3^(3/2) |grad Phi_w|_F^3 - |det grad Phi_w|.

  The gradient is taken by central differences. A negative margin means the
  determinant bound fails somewhere.
  """
  points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
  margins = []
  for point in points:
    gradient = _gradient(surface, cutoff, w, point, step)
    bound = 3.0 ** 1.5 * np.linalg.norm(gradient) ** 3
    margins.append(bound - abs(np.linalg.det(gradient)))
  return float(np.min(margins))
