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
"""The viscoelastic plate d_tt w + lap^2 w - nu_s lap d_t w = F on the torus.

In the Fourier basis every mode k obeys the damped oscillator

  w_k'' + 2 sigma w_k' + b w_k = F_k,   sigma = nu_s |k|^2 / 2, b = |k|^4,

which plate_step solves exactly with F frozen over the step. The mean mode
(k = 0) is a free particle: w += w_t dt + F dt^2 / 2.
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections

import numpy as np
import tensorflow as tf

from slipfsi import boundary
from slipfsi import constitutive
from slipfsi.ops import quadrature
from slipfsi.ops import spectral

_CRITICAL_TOLERANCE = 1e-12


class PlateLoad(collections.namedtuple("PlateLoad", ["F"])):
  """The fluid traction on the plate, samples of plate shape."""
  __slots__ = ()


def compute_plate_load(state, domain_map, params, coupling=constitutive.STRONG,
                       penalty_flux=None, slip=None):
  """Evaluates F = -nu (S n^w) . e_3 + (p_delta(rho) - p_delta(rho_bar))/eps^2.

  Args:
    state: the field.State.
    domain_map: the DomainMap of state.w.
    params: the params.Params.
    coupling: the coupling mode, passed on to the wall evaluation.
    penalty_flux: optional (1/kappa)(u . n^w - w_t)|n^w| added to F.
    slip: a precomputed boundary.SlipBoundary, or None.

  Returns:
    A PlateLoad.
  """
  if slip is None:
    slip = boundary.apply_slip_bc(state, domain_map, params, coupling)
  rho_top = quadrature.top_trace(state.rho_hat.values)
  load = (params.pressure_scale *
          constitutive.pressure_fluctuation(rho_top, params))
  if params.nu > 0.0:
    load = load - params.nu * slip.top_flux[-1]
  if penalty_flux is not None:
    load = load + penalty_flux
  return PlateLoad(F=load)


def _mode_coefficients(k2, nu_s, dt):
  """Real propagator coefficients per mode.

  Returns:
    Six arrays (a_ww, a_wv, a_wf, a_vw, a_vv, a_vf) with
    w' = a_ww w + a_wv v + a_wf F and v' = a_vw w + a_vv v + a_vf F.
  """
  b = k2 * k2
  sigma = 0.5 * nu_s * k2
  disc = sigma * sigma - b
  scale = np.maximum(sigma * sigma, b)
  damped_c = np.zeros_like(k2)
  damped_s = np.zeros_like(k2)

  critical = np.abs(disc) <= _CRITICAL_TOLERANCE * np.maximum(scale, 1.0)
  over = (disc > 0.0) & ~critical
  under = (disc < 0.0) & ~critical

  lam = np.sqrt(np.where(over, disc, 1.0))
  fast = np.exp(-(sigma + lam) * dt)
  slow = np.exp((lam - sigma) * dt)
  damped_c = np.where(over, 0.5 * (slow + fast), damped_c)
  damped_s = np.where(over, 0.5 * (slow - fast) / lam, damped_s)

  omega = np.sqrt(np.where(under, -disc, 1.0))
  decay = np.exp(-sigma * dt)
  damped_c = np.where(under, decay * np.cos(omega * dt), damped_c)
  damped_s = np.where(under, decay * np.sin(omega * dt) / omega, damped_s)

  damped_c = np.where(critical, decay, damped_c)
  damped_s = np.where(critical, decay * dt, damped_s)

  safe_b = np.where(b > 0.0, b, 1.0)
  a_ww = damped_c + sigma * damped_s
  a_wv = damped_s
  a_wf = (1.0 - a_ww) / safe_b
  a_vw = -b * damped_s
  a_vv = damped_c - sigma * damped_s
  a_vf = damped_s

  mean = k2 == 0.0
  a_ww = np.where(mean, 1.0, a_ww)
  a_wv = np.where(mean, dt, a_wv)
  a_wf = np.where(mean, 0.5 * dt * dt, a_wf)
  a_vw = np.where(mean, 0.0, a_vw)
  a_vv = np.where(mean, 1.0, a_vv)
  a_vf = np.where(mean, dt, a_vf)
  return a_ww, a_wv, a_wf, a_vw, a_vv, a_vf


class PlatePropagator(object):
  """The exact per-mode step of the plate for a fixed dt."""

  def __init__(self, grid, params, dt):
    if not dt > 0.0:
      raise ValueError("dt must be positive: " + str(dt))
    self._grid = grid
    self._dt = float(dt)
    k2 = spectral.wavenumber_squared(grid)
    self._coefficients = [
        tf.constant(c.astype(np.complex128)) for c in _mode_coefficients(
            k2, params.nu_s, self._dt)]

  @property
  def dt(self):
    return self._dt

  def step(self, w, w_t, load):
    """Advances (w, w_t) by dt under the frozen load F (plate samples)."""
    grid = self._grid
    w_hat = spectral.plate_fourier(w, grid)
    v_hat = spectral.plate_fourier(w_t, grid)
    f_hat = spectral.plate_fourier(load, grid)
    a_ww, a_wv, a_wf, a_vw, a_vv, a_vf = self._coefficients
    new_w = a_ww * w_hat + a_wv * v_hat + a_wf * f_hat
    new_v = a_vw * w_hat + a_vv * v_hat + a_vf * f_hat
    return (spectral.plate_inverse_fourier(new_w, grid),
            spectral.plate_inverse_fourier(new_v, grid))


def plate_step(w, w_t, load, dt, params, grid):
  """Advances the plate by dt with the load frozen.

  Args:
    w: displacement samples.
    w_t: velocity samples.
    load: a PlateLoad or plate samples of F.
    dt: the step, positive.
    params: the params.Params (nu_s is used).
    grid: the grid.

  Returns:
    The pair (w, w_t) at the end of the step.
  """
  forcing = load.F if isinstance(load, PlateLoad) else load
  forcing = tf.convert_to_tensor(forcing, tf.float64)
  return PlatePropagator(grid, params, dt).step(w, w_t, forcing)


def _parseval(values, grid):
  """Integral of f^2 over Gamma from the modes of f."""
  modes = spectral.plate_fourier(values, grid)
  total = float(tf.reduce_sum(tf.abs(modes) ** 2))
  n = float(np.prod(grid.plate_shape))
  return grid.plate_area * total / (n * n)


def plate_energy(w, w_t, grid):
  """The integral of |w_t|^2 / 2 + |lap w|^2 / 2, by Parseval."""
  return 0.5 * (_parseval(w_t, grid) +
                _parseval(spectral.plate_laplacian(w, grid), grid))


def plate_energy_physical(w, w_t, grid):
  """The same energy by the rectangle rule in physical space."""
  lap = spectral.plate_laplacian(w, grid)
  return 0.5 * quadrature.integrate_plate(w_t * w_t + lap * lap, grid)


def plate_dissipation_rate(w_t, grid, params):
  """nu_s times the integral of |grad w_t|^2, including the Nyquist mode."""
  modes = spectral.plate_fourier(w_t, grid)
  k2 = tf.constant(spectral.wavenumber_squared(grid), tf.float64)
  total = float(tf.reduce_sum(k2 * tf.abs(modes) ** 2))
  n = float(np.prod(grid.plate_shape))
  return params.nu_s * grid.plate_area * total / (n * n)


def solve_static_deflection(load, grid):
  """The zero-mean w with lap^2 w = F - mean(F)."""
  forcing = load.F if isinstance(load, PlateLoad) else load
  k2 = spectral.wavenumber_squared(grid)
  symbol = np.where(k2 > 0.0, 1.0 / np.where(k2 > 0.0, k2 * k2, 1.0), 0.0)
  return spectral.apply_symbol(tf.convert_to_tensor(forcing, tf.float64),
                               grid, symbol)


def mode_decay_rate(k, nu_s):
  """Decay rate of the slowest root of s^2 + nu_s k^2 s + k^4 = 0.

  The roots are -sigma +- sqrt(sigma^2 - k^4) with sigma = nu_s k^2 / 2; an
  underdamped or critically damped mode decays at sigma, an overdamped one at
  sigma - sqrt(sigma^2 - k^4).
  """
  k2 = float(k) ** 2
  sigma = 0.5 * nu_s * k2
  disc = sigma * sigma - k2 * k2
  if disc <= 0.0:
    return sigma
  return sigma - float(np.sqrt(disc))
