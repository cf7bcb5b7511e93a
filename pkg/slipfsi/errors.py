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
"""Error classes raised by the solver and the experiment harness.

Every abort of a run is one of the SimulationError subclasses below. Each class
carries the exit code that the command line reports for it, so that sweeps can
triage failures mechanically.

"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function


class SimulationError(Exception):
  """Base class of every classified abort of a run."""

  exit_code = 1

  def __init__(self, message, t=None):
    if t is not None:
      message = message + " (t=" + repr(float(t)) + ")"
    super(SimulationError, self).__init__(message)
    self._t = t

  @property
  def t(self):
    """The simulation time of the abort, or None."""
    return self._t


class DegeneracyError(SimulationError):
  """The moving boundary came within contact_floor of the bottom wall."""

  exit_code = 2


class PositivityError(SimulationError):
  """A density sample became non-positive."""

  exit_code = 3


class BlowUpError(SimulationError):
  """A tendency or a state sample became non-finite."""

  exit_code = 4


class EnergyInequalityError(BlowUpError):
  """The discrete energy inequality was violated in strict mode."""


class IterationError(BlowUpError):
  """Monolithic subiteration did not reach its tolerance."""

  def __init__(self, message, t=None, mismatch=None):
    super(IterationError, self).__init__(message, t=t)
    self._mismatch = mismatch

  @property
  def mismatch(self):
    return self._mismatch


class SimulationTimeoutError(SimulationError):
  """The wall-clock budget of the run was exceeded."""

  exit_code = 5


class ConfigError(ValueError):
  """A configuration document could not be read or validated."""

  exit_code = 64


class InterpolationError(ValueError):
  """A point falls outside the sampled region of a field."""


class DomainError(ValueError):
  """A point lies outside the evaluable neighborhood of a surface."""


class BandError(ValueError):
  """A displacement lies outside the admissible band of the flow map."""


def exit_code_for(error):
  """Returns the process exit code for an exception instance."""
  return getattr(error, "exit_code", 1)
