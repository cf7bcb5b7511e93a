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
"""The smooth cutoff f_Gamma of the tubular neighborhood of a surface.

f_Gamma = f * omega_alpha, where omega_alpha is the normalized bump supported
in (-alpha, alpha) and f is the trapezoid that vanishes below m'' + alpha,
rises linearly to 1 at m' - alpha, stays 1 up to M' + alpha and falls linearly
to 0 at M'' - alpha. The mollified profile is therefore 1 on [m', M'] and 0
outside (m'', M'').
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np

DEFAULT_QUADRATURE_NODES = 256


def bump(t):
  """The unnormalized bump exp(-1 / (1 - t^2)) on (-1, 1), zero outside."""
  t = np.asarray(t, dtype=np.float64)
  inside = np.abs(t) < 1.0
  safe = np.where(inside, t, 0.0)
  return np.where(inside, np.exp(-1.0 / (1.0 - safe * safe)), 0.0)


class CutoffProfile(object):
  """An evaluable cutoff f_Gamma: R -> [0, 1]."""

  def __init__(self, m2, m1, big_m1, big_m2, alpha,
               nodes=DEFAULT_QUADRATURE_NODES):
    self._m2 = float(m2)
    self._m1 = float(m1)
    self._big_m1 = float(big_m1)
    self._big_m2 = float(big_m2)
    self._alpha = float(alpha)
    t, weights = np.polynomial.legendre.leggauss(nodes)
    kernel = bump(t) * weights
    self._offsets = self._alpha * t
    self._weights = kernel / np.sum(kernel)
    self._bump_mass = float(np.sum(bump(t) * weights))

  @property
  def breakpoints(self):
    """(m'', m', M', M'')."""
    return (self._m2, self._m1, self._big_m1, self._big_m2)

  @property
  def alpha(self):
    return self._alpha

  @property
  def plateau(self):
    return (self._m1, self._big_m1)

  @property
  def support(self):
    return (self._m2, self._big_m2)

  def mollifier(self, y):
    """omega_alpha(y), normalized to unit mass."""
    y = np.asarray(y, dtype=np.float64)
    return bump(y / self._alpha) / (self._alpha * self._bump_mass)

  def trapezoid(self, s):
    """The piecewise-linear profile before mollification."""
    s = np.asarray(s, dtype=np.float64)
    a = self._alpha
    rise = (s - (self._m2 + a)) / ((self._m1 - a) - (self._m2 + a))
    fall = ((self._big_m2 - a) - s) / ((self._big_m2 - a) -
                                       (self._big_m1 + a))
    return np.clip(np.minimum(rise, fall), 0.0, 1.0)

  def __call__(self, s):
    """Evaluates f_Gamma at s (scalar or array)."""
    s = np.asarray(s, dtype=np.float64)
    values = self.trapezoid(s[..., np.newaxis] - self._offsets)
    result = values.dot(self._weights)
    return result if result.ndim else float(result)

  def derivative(self, s, step=1e-6):
    """Central-difference derivative of f_Gamma."""
    s = np.asarray(s, dtype=np.float64)
    return (self(s + step) - self(s - step)) / (2.0 * step)

  def __str__(self):
    return ("CutoffProfile(breakpoints=" + str(self.breakpoints) +
            ", alpha=" + str(self._alpha) + ")")


def build_cutoff(m2, m1, big_m1, big_m2, alpha,
                 nodes=DEFAULT_QUADRATURE_NODES):
  """Builds f_Gamma from its breakpoints.

  Args:
    m2: m'', the lower end of the support.
    m1: m', the lower end of the plateau.
    big_m1: M', the upper end of the plateau.
    big_m2: M'', the upper end of the support.
    alpha: the mollifier width.
    nodes: Legendre-Gauss nodes used for the convolution.

  Returns:
    A CutoffProfile.

  Raises:
    ValueError: if m'' < m' < 0 < M' < M'' fails or alpha is out of range.
  """
  if not m2 < m1 < 0.0 < big_m1 < big_m2:
    raise ValueError("Cutoff breakpoints must satisfy m'' < m' < 0 < M' < "
                     "M'': " + str((m2, m1, big_m1, big_m2)))
  limit = 0.5 * min(m1 - m2, big_m2 - big_m1)
  if not 0.0 < alpha < limit:
    raise ValueError("alpha must lie in (0, " + str(limit) + "): " +
                     str(alpha))
  return CutoffProfile(m2, m1, big_m1, big_m2, alpha, nodes=nodes)
