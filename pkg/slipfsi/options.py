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
"""Set numerical options for slipfsi.

This object can be passed to scheme.run, to the diagnostics checks and to the
sweep harness. It holds the tolerances and guards that are not physical
constants (those live in params.Params).

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function


class Options(object):
  """Numerical options for a run.

  Start from get_default_options(), get_strict_options() or
  get_options_with_minimal_checks() and adjust attributes afterwards; call
  validate() once done. Functions taking options=None fall back to
  get_default_options().
  """

  def __init__(self, check_finite, strict_energy, tol_energy=1e-3,
               tol_relative=5e-3, cfl=0.4, contact_floor=0.05,
               monolithic_relaxation=0.7):
    """Create options."""
    self.check_finite = check_finite
    self.strict_energy = strict_energy
    self.tol_energy = tol_energy
    self.tol_relative = tol_relative
    self.cfl = cfl
    self.contact_floor = contact_floor
    self.monolithic_relaxation = monolithic_relaxation

  def validate(self):
    """Raises ValueError if an option is out of range."""
    if not 0.0 < self.cfl <= 1.0:
      raise ValueError("cfl must lie in (0, 1]: " + str(self.cfl))
    if not 0.0 < self.contact_floor < 1.0:
      raise ValueError("contact_floor must lie in (0, 1): " +
                       str(self.contact_floor))
    if not 0.0 < self.monolithic_relaxation <= 1.0:
      raise ValueError("monolithic_relaxation must lie in (0, 1]: " +
                       str(self.monolithic_relaxation))
    if self.tol_energy < 0.0 or self.tol_relative < 0.0:
      raise ValueError("tolerances must be non-negative")
    return self

  def __str__(self):
    return ("{check_finite:" + str(self.check_finite) + ", strict_energy: " +
            str(self.strict_energy) + ", tol_energy: " + str(self.tol_energy) +
            ", tol_relative: " + str(self.tol_relative) + ", cfl: " +
            str(self.cfl) + ", contact_floor: " + str(self.contact_floor) +
            ", monolithic_relaxation: " + str(self.monolithic_relaxation) +
            "}")


def get_default_options():
  """Get the default options."""
  return Options(check_finite=True, strict_energy=False)


def get_strict_options():
  """Options that abort a run on an energy-inequality violation."""
  return Options(check_finite=True, strict_energy=True)


def get_options_with_minimal_checks():
  """Options for runs with minimal per-step checks."""
  return Options(check_finite=False, strict_energy=False)
