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
"""Per-step monitors and pointwise checks used along runs."""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import abc
import collections

from absl import logging

from slipfsi import constitutive
from slipfsi.diagnostics import energy
from slipfsi.diagnostics import relative_energy
from slipfsi.geometry import flow_map
from slipfsi.ops import quadrature


class Monitor(object):
  """Observes a run: begin(state) once, then observe after every step."""

  __metaclass__ = abc.ABCMeta

  @abc.abstractmethod
  def begin(self, state):
    raise NotImplementedError()

  @abc.abstractmethod
  def observe(self, state, dt, record):
    raise NotImplementedError()


class Admissibility(collections.namedtuple("Admissibility",
                                           ["passed", "defect"])):
  __slots__ = ()


def admissibility_check(triple, w, tol, contact_floor=None):
  """Checks U . n^w = W_t on the top wall of the domain of w.

  Args:
    triple: a relative_energy.TestTriple.
    w: plate displacement, or a DomainMap.
    tol: the tolerance on the max defect.
    contact_floor: passed to the DomainMap built from w.

  Returns:
    An Admissibility (passed, max defect).
  """
  if hasattr(w, "normal"):
    domain_map = w
  else:
    floor = (flow_map.DEFAULT_CONTACT_FLOOR if contact_floor is None
             else contact_floor)
    domain_map = flow_map.DomainMap(triple.r.grid, w,
                                    contact_floor=floor)
  defect = relative_energy.admissibility_defect(triple, domain_map)
  return Admissibility(passed=defect <= tol, defect=defect)


def boundary_layer_pressure(state, params, sigma_list, domain_map=None):
  """Integrals of p_delta(rho) over the top layers {z_hat > 1 - sigma}.

  Args:
    state: the field.State.
    params: the params.Params.
    sigma_list: layer thicknesses in (0, 1/2).
    domain_map: the DomainMap of the state, or None.

  Returns:
    A list of (sigma, integral) pairs in the order of sigma_list.
  """
  domain_map = domain_map or energy.state_map(state)
  p = constitutive.pressure_delta(state.rho_hat.values, params)
  curve = []
  for sigma in sigma_list:
    if not 0.0 < sigma < 0.5:
      raise ValueError("sigma must lie in (0, 1/2): " + str(sigma))
    curve.append((sigma, quadrature.integrate_layer(
        p, domain_map.jacobian, state.grid, sigma)))
  return curve


def concentration_ratios(state, params, curve, domain_map=None):
  """(integral / sigma) over the bulk value of one layer of unit thickness.

  The bulk value is mean(p_delta) times int_Gamma J_w, so a uniform density
  gives ratio 1 for every sigma.
  """
  domain_map = domain_map or energy.state_map(state)
  grid = state.grid
  p = constitutive.pressure_delta(state.rho_hat.values, params)
  volume = quadrature.integrate_values(domain_map.jacobian, grid)
  bulk_mean = quadrature.integrate_values(p, grid, domain_map.jacobian) / volume
  top_area = quadrature.integrate_plate(1.0 + state.w, grid)
  ratios = [(sigma, value / (sigma * bulk_mean * top_area))
            for sigma, value in curve]
  worst = max(r for _, r in ratios) if ratios else 0.0
  if worst > 3.0:
    logging.warning("Boundary-layer pressure ratio %g exceeds 3 at t=%g",
                    worst, state.t)
  return ratios


class BoundaryLayerMonitor(Monitor):
  """Records the largest concentration ratio seen along a run."""

  def __init__(self, params, sigma_list):
    self._params = params
    self._sigma_list = list(sigma_list)
    self.max_ratio = 0.0
    self.curves = []

  def _record(self, state):
    curve = boundary_layer_pressure(state, self._params, self._sigma_list)
    ratios = concentration_ratios(state, self._params, curve)
    self.curves.append((state.t, curve))
    self.max_ratio = max([self.max_ratio] + [r for _, r in ratios])

  def begin(self, state):
    self._record(state)

  def observe(self, state, dt, record):
    self._record(state)
