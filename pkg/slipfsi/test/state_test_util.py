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
"""Canned states and comparison triples shared by the tests."""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import numpy as np
import tensorflow as tf

from slipfsi import checks
from slipfsi import constitutive
from slipfsi import field
from slipfsi import grid as grid_lib
from slipfsi import params as params_lib
from slipfsi.diagnostics import bounds


def small_grid(nx=16, nz=9):
  return grid_lib.Grid(nx, nz)


def rest_state(grid=None, params=None):
  """(rho_bar, 0, 0, 0): the equilibrium every scheme must keep exactly."""
  grid = grid or small_grid()
  params = params or params_lib.Params()
  return field.rest_state(grid, params)


def pressure_pulse_config(coupling=constitutive.STRONG, t_final=0.02,
                          dt=0.002):
  """A short run of the canned density bump on a 16 x 9 grid."""
  return checks.pressure_pulse_config(coupling, t_final=t_final,
                                      grid=small_grid(), dt=dt)


def translating_state(grid=None, params=None, speed=0.5, t=0.0):
  """Uniform horizontal flow under a flat plate at density rho_bar."""
  grid = grid or small_grid()
  params = params or params_lib.Params()
  zeros = tf.zeros(grid.shape, tf.float64)
  components = [zeros + speed] + [zeros] * (grid.dim - 1)
  plate = tf.zeros(grid.plate_shape, tf.float64)
  return field.State(t, field.constant_scalar(grid, params.rho_bar),
                     field.VectorField(grid, components), plate, plate)


def displaced_state(grid=None, params=None, amplitude=0.1):
  """rest_state under the plate w = amplitude cos x, at rest."""
  grid = grid or small_grid()
  params = params or params_lib.Params()
  x = grid.horizontal_coordinates()[0]
  w = tf.constant(amplitude * np.cos(2.0 * np.pi * x / grid.period),
                  tf.float64)
  state = field.rest_state(grid, params)
  return state.replace(w=w)


def smooth_displacement_pairs(grid, seed=0, count=3, amplitude=0.3):
  """Sampled (w, eta) pairs with max-norm at most amplitude."""
  return [(w.sample(grid), eta.sample(grid)) for w, eta in
          checks.random_displacement_pairs(seed, count, amplitude)]


def admissible_triples(state, params=None, count=3, seed=0):
  params = params or params_lib.Params()
  return bounds.random_admissible_triples(state, params, count=count,
                                          seed=seed)
