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
"""Well-prepared initial data.

The density is rho_bar + eps rho_1 with ||rho_1||_inf <= D; the velocity and
the plate data do not depend on eps. Every base profile is a named shape
scaled by an amplitude and evaluated with a wavenumber k (in units of the
horizontal period).
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections

import numpy as np
import tensorflow as tf

from slipfsi import boundary
from slipfsi import field
from slipfsi.geometry import flow_map
from slipfsi.ops import quadrature
from slipfsi.ops import spectral
from slipfsi.ops import stencils


def _phase(x, period, k):
  return 2.0 * np.pi * k * x / period


def _zero(x, z, period, k):
  del period, k
  return np.zeros(np.broadcast(x, z).shape)


def _cos(x, z, period, k):
  return np.cos(_phase(x, period, k)) + 0.0 * z


def _sin(x, z, period, k):
  return np.sin(_phase(x, period, k)) + 0.0 * z


def _vortex(x, z, period, k):
  """Stream function sin(k x) sin^2(pi z); vanishes on both walls."""
  return np.sin(_phase(x, period, k)) * np.sin(np.pi * z) ** 2


def _bump(x, z, period, k):
  """A periodic Gaussian of width period / (8 k) centred at period / 2."""
  distance = np.mod(x, period) - 0.5 * period
  width = period / (8.0 * k)
  return np.exp(-(distance / width) ** 2) + 0.0 * z


PROFILES = {
    "zero": _zero,
    "cos": _cos,
    "sin": _sin,
    "vortex": _vortex,
    "bump": _bump,
}


class Profile(collections.namedtuple("Profile", ["name", "amplitude", "k"])):
  """A named base profile with amplitude and wavenumber."""
  __slots__ = ()

  def __new__(cls, name="zero", amplitude=0.0, k=1.0):
    if name not in PROFILES:
      raise ValueError("Unknown profile: " + str(name) + ", expected one of " +
                       str(sorted(PROFILES)))
    if not k > 0:
      raise ValueError("Profile wavenumber must be positive: " + str(k))
    return super(Profile, cls).__new__(cls, name, float(amplitude), float(k))

  def evaluate(self, x, z, period):
    return self.amplitude * PROFILES[self.name](x, z, period, self.k)


ZERO = Profile()


def _field_samples(profile, grid):
  coordinates = grid.coordinates()
  return np.broadcast_to(
      profile.evaluate(coordinates[0], coordinates[-1], grid.period),
      grid.shape)


def _plate_samples(profile, grid):
  x = grid.horizontal_coordinates()[0]
  return np.broadcast_to(profile.evaluate(x, 0.0, grid.period),
                         grid.plate_shape)


def _velocity(profiles, grid):
  """Velocity samples: one profile per component, or a single vortex."""
  if len(profiles) == 1 and profiles[0].name == "vortex":
    psi = tf.constant(_field_samples(profiles[0], grid), tf.float64)
    return stencils.stream_fluxes(psi, grid)
  if len(profiles) != grid.dim:
    raise ValueError("Expected " + str(grid.dim) + " velocity profiles, got " +
                     str(len(profiles)))
  return [tf.constant(_field_samples(p, grid), tf.float64) for p in profiles]


def well_prepared_ic(eps, base_profiles, D, grid, params,  # pylint: disable=invalid-name
                     contact_floor=flow_map.DEFAULT_CONTACT_FLOOR):
  """Builds well-prepared initial data.

  Args:
    eps: the Mach number; 0 gives rho_0 = rho_bar exactly.
    base_profiles: a dict with keys rho1 (Profile), u0 (list of Profile, or a
      single vortex Profile), w0 and w1 (Profile); absent keys are zero.
    D: the bound on ||rho_1||_inf.
    grid: the grid.
    params: the params.Params.
    contact_floor: lower bound for 1 + w0.

  Returns:
    A field.State at t = 0 whose velocity satisfies u . n^{w0} = w1 on the
    top wall and u_3 = 0 on the bottom.

  Raises:
    ValueError: if ||rho_1||_inf exceeds D or eps is negative.
  """
  if eps < 0.0:
    raise ValueError("eps must be non-negative: " + str(eps))
  rho1 = _field_samples(base_profiles.get("rho1", ZERO), grid)
  size = float(np.max(np.abs(rho1)))
  if size > D:
    raise ValueError("||rho_1||_inf = " + str(size) + " exceeds D = " + str(D))
  u0 = base_profiles.get("u0", [ZERO] * grid.dim)
  if isinstance(u0, Profile):
    u0 = [u0]
  w0 = tf.constant(_plate_samples(base_profiles.get("w0", ZERO), grid),
                   tf.float64)
  w1 = tf.constant(_plate_samples(base_profiles.get("w1", ZERO), grid),
                   tf.float64)
  domain_map = flow_map.DomainMap(grid, w0, w1, contact_floor)
  components = boundary.enforce_kinematics(_velocity(u0, grid), domain_map)
  rho0 = params.rho_bar + eps * rho1
  return field.State(0.0, field.ScalarField(grid, rho0),
                     field.VectorField(grid, components), w0, w1)


def well_prepared_data_size(rho1, u0, w0, w1, grid):
  """||rho_1||_inf + ||u_0||_inf + ||lap w_0||_2 + ||w_1||_2."""
  rho1 = np.asarray(rho1)
  u0 = np.asarray(u0)
  w0 = tf.convert_to_tensor(w0, tf.float64)
  w1 = tf.convert_to_tensor(w1, tf.float64)
  lap = spectral.plate_laplacian(w0, grid)
  return (float(np.max(np.abs(rho1))) + float(np.max(np.abs(u0))) +
          quadrature.integrate_plate(lap * lap, grid) ** 0.5 +
          quadrature.integrate_plate(w1 * w1, grid) ** 0.5)


class InitialSpec(object):
  """Initial data given by base profiles; build(grid, params) makes a State.

  eps defaults to params.eps, so one spec serves a whole sweep.
  """

  def __init__(self, profiles=None, D=1.0, eps=None):  # pylint: disable=invalid-name
    self.profiles = dict(profiles or {})
    self.D = D  # pylint: disable=invalid-name
    self.eps = eps

  def build(self, grid, params):
    eps = params.eps if self.eps is None else self.eps
    return well_prepared_ic(eps, self.profiles, self.D, grid, params)

  def data_size(self, grid, params):
    state = self.build(grid, params.replace(eps=1.0) if self.eps is None
                       else params)
    rho1 = _field_samples(self.profiles.get("rho1", ZERO), grid)
    return well_prepared_data_size(rho1, state.u_hat.numpy(), state.w,
                                   state.w_t, grid)
