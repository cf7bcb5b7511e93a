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
"""The JSON configuration document and its translation into run objects.

The schema is the proto2 message slipfsi.ConfigDocument, built from
descriptor protos in a private pool. JSON is read with json_format, which
rejects unknown keys; every scalar with a declared default is materialized
in the effective config.

  {"params": {"eps": 0.05, "nu": 0.05},
   "grid": {"nx": 64, "nz": 33},
   "initial": {"rho1": {"name": "cos", "amplitude": 0.1}, "D": 1.0},
   "coupling": {"mode": "strong"},
   "run": {"t_final": 1.0, "dt_policy": "cfl"},
   "sweep": {"eps_list": [0.2, 0.1], "nu_list": [0.2, 0.1]},
   "outputs": {"directory": "out"}}
"""

from __future__ import absolute_import
from __future__ import division

from __future__ import print_function

import collections
import contextlib
import json
import math

from google.protobuf import descriptor
from google.protobuf import descriptor_pb2
from google.protobuf import descriptor_pool
from google.protobuf import json_format
from google.protobuf import message_factory

from slipfsi import constitutive
from slipfsi import errors
from slipfsi import grid as grid_lib
from slipfsi import options as options_lib
from slipfsi import params as params_lib
from slipfsi import scheme
from slipfsi.limits import characteristic
from slipfsi.limits import initial_data
from slipfsi.limits import reference as reference_lib
from slipfsi.limits import sweep as sweep_lib

_PACKAGE = "slipfsi"

CFL_POLICY = "cfl"
FIXED_POLICY = "fixed"

_Field = collections.namedtuple("_Field", ["name", "kind", "default",
                                           "repeated"])


def _field(name, kind, default=None, repeated=False):
  return _Field(name, kind, default, repeated)


# Message name -> fields, in field-number order. kind is a scalar type name
# or the name of another message of the schema.
_SCHEMA = collections.OrderedDict([
    ("Params", [
        _field("gamma", "double", "2.0"),
        _field("mu", "double", "1.0"),
        _field("lam", "double", "0.0"),
        _field("nu", "double", "0.1"),
        _field("eps", "double", "0.1"),
        _field("nu_s", "double", "0.1"),
        _field("alpha", "double", "1.0"),
        _field("alpha0", "double", "1.0"),
        _field("delta", "double", "0.0"),
        _field("beta", "double", "4.0"),
        _field("kappa", "double", "0.001"),
        _field("rho_bar", "double", "1.0"),
    ]),
    ("Grid", [
        _field("nx", "int32", "64"),
        _field("nz", "int32", "33"),
        _field("ny", "int32"),
        _field("period", "double", repr(2.0 * math.pi)),
        _field("period_y", "double"),
    ]),
    ("Profile", [
        _field("name", "string", "zero"),
        _field("amplitude", "double", "0.0"),
        _field("k", "double", "1.0"),
    ]),
    ("Initial", [
        _field("rho1", "Profile"),
        _field("u0", "Profile", repeated=True),
        _field("w0", "Profile"),
        _field("w1", "Profile"),
        _field("D", "double", "1.0"),
        _field("eps", "double"),
    ]),
    ("Coupling", [
        _field("mode", "string", constitutive.STRONG),
        _field("tol", "double", "1e-10"),
        _field("max_iter", "int32", "50"),
        _field("relaxation", "double", "0.7"),
    ]),
    ("Reference", [
        _field("provider", "string", reference_lib.PROXY_RUN),
        _field("eps0", "double", "0.00625"),
        _field("nu0", "double", "0.00625"),
        _field("refine", "int32", "2"),
        _field("path", "string", ""),
        _field("amplitude", "double", "0.05"),
        _field("estimate_floor", "bool", "false"),
    ]),
    ("Run", [
        _field("t_final", "double", "1.0"),
        _field("dt_policy", "string", CFL_POLICY),
        _field("dt", "double"),
        _field("output_every", "int32", "1"),
        _field("wall_clock_budget", "double"),
        _field("dump_fields", "bool", "false"),
        _field("check_finite", "bool", "true"),
        _field("strict_energy", "bool", "false"),
        _field("tol_energy", "double", "0.001"),
        _field("tol_relative", "double", "0.005"),
        _field("cfl", "double", "0.4"),
        _field("contact_floor", "double", "0.05"),
        _field("reference", "Reference"),
    ]),
    ("Sweep", [
        _field("eps_list", "double", repeated=True),
        _field("nu_list", "double", repeated=True),
        _field("pairing", "string", sweep_lib.DIAGONAL_AND_COLUMN),
        _field("column_nu", "double"),
        _field("column_gamma", "double"),
        _field("floor", "double"),
        _field("workers", "int32", "1"),
        _field("reference", "Reference"),
    ]),
    ("Outputs", [
        _field("directory", "string", "out"),
        _field("run_csv", "string", "run.csv"),
        _field("energy_csv", "string", "energy.csv"),
        _field("relative_energy_csv", "string", "relative_energy.csv"),
        _field("fields_dir", "string", "fields"),
        _field("effective_config", "string", "effective_config.json"),
        _field("sweep_csv", "string", "sweep.csv"),
        _field("sweep_summary", "string", "sweep_summary.json"),
    ]),
    ("Characteristic", [
        _field("U_f", "double"),
        _field("p_f", "double"),
        _field("rho_f", "double"),
        _field("L", "double"),
        _field("nu_f", "double"),
        _field("rho_s", "double", "1.0"),
        _field("h", "double", "1.0"),
        _field("E", "double", "1.0"),
        _field("W", "double", "1.0"),
        _field("T_s", "double", "1.0"),
        _field("N_s", "double", "1.0"),
    ]),
    ("ConfigDocument", [
        _field("params", "Params"),
        _field("grid", "Grid"),
        _field("initial", "Initial"),
        _field("coupling", "Coupling"),
        _field("run", "Run"),
        _field("sweep", "Sweep"),
        _field("outputs", "Outputs"),
        _field("characteristic", "Characteristic"),
    ]),
])

_SCALAR_TYPES = {
    "double": descriptor_pb2.FieldDescriptorProto.TYPE_DOUBLE,
    "int32": descriptor_pb2.FieldDescriptorProto.TYPE_INT32,
    "string": descriptor_pb2.FieldDescriptorProto.TYPE_STRING,
    "bool": descriptor_pb2.FieldDescriptorProto.TYPE_BOOL,
}


def _file_descriptor_proto():
  """The FileDescriptorProto of the schema."""
  result = descriptor_pb2.FileDescriptorProto(
      name=_PACKAGE + "/config.proto", package=_PACKAGE, syntax="proto2")
  for message_name, fields in _SCHEMA.items():
    message = result.message_type.add(name=message_name)
    for number, spec in enumerate(fields, 1):
      proto = message.field.add(name=spec.name, number=number)
      proto.label = (descriptor_pb2.FieldDescriptorProto.LABEL_REPEATED
                     if spec.repeated else
                     descriptor_pb2.FieldDescriptorProto.LABEL_OPTIONAL)
      if spec.kind in _SCALAR_TYPES:
        proto.type = _SCALAR_TYPES[spec.kind]
      else:
        proto.type = descriptor_pb2.FieldDescriptorProto.TYPE_MESSAGE
        proto.type_name = "." + _PACKAGE + "." + spec.kind
      if spec.default is not None:
        proto.default_value = spec.default
  return result


def _message_class(message_descriptor):
  get_message_class = getattr(message_factory, "GetMessageClass", None)
  if get_message_class is not None:
    return get_message_class(message_descriptor)
  factory = message_factory.MessageFactory(message_descriptor.file.pool)
  return factory.GetPrototype(message_descriptor)


_POOL = descriptor_pool.DescriptorPool()
_POOL.AddSerializedFile(_file_descriptor_proto().SerializeToString())

ConfigDocument = _message_class(
    _POOL.FindMessageTypeByName(_PACKAGE + ".ConfigDocument"))


@contextlib.contextmanager
def _at(path):
  """Re-raises ValueError inside the block as a ConfigError naming path."""
  try:
    yield
  except errors.ConfigError:
    raise
  except ValueError as e:
    raise errors.ConfigError(path + ": " + str(e))


def parse_document(text, source="<string>"):
  """Parses JSON text into a ConfigDocument.

  Raises:
    errors.ConfigError: on malformed JSON or unknown keys, with the path.
  """
  doc = ConfigDocument()
  try:
    json_format.Parse(text, doc)
  except json_format.ParseError as e:
    raise errors.ConfigError(source + ": " + str(e))
  return doc


def load_document(path):
  try:
    with open(path) as f:
      text = f.read()
  except (IOError, OSError) as e:
    raise errors.ConfigError(path + ": " + str(e))
  return parse_document(text, path)


def make_grid(doc):
  section = doc.grid
  with _at("grid"):
    return grid_lib.Grid(
        section.nx, section.nz,
        ny=section.ny if section.HasField("ny") else None,
        period=section.period,
        period_y=section.period_y if section.HasField("period_y") else None)


_FLUID_CHARACTERISTICS = ("U_f", "p_f", "rho_f", "L", "nu_f")


def _scaled(section):
  """eps and nu of a characteristic section; they replace params.eps, nu."""
  with _at("characteristic"):
    for name in _FLUID_CHARACTERISTICS:
      if not section.HasField(name):
        raise ValueError("missing " + name)
    values = {f.name: getattr(section, f.name)
              for f in section.DESCRIPTOR.fields}
    scaled = characteristic.nondimensionalize(
        characteristic.CharacteristicValues(**values))
  return {"eps": scaled.eps, "nu": scaled.nu}


def make_params(doc, grid):
  section = doc.params
  values = {f.name: getattr(section, f.name)
            for f in section.DESCRIPTOR.fields}
  if doc.HasField("characteristic"):
    values.update(_scaled(doc.characteristic))
  with _at("params"):
    return params_lib.Params(dim=grid.dim, **values)


def _profile(message, path):
  with _at(path):
    return initial_data.Profile(message.name, message.amplitude, message.k)


def make_initial(doc):
  """The InitialSpec of the initial section."""
  section = doc.initial
  profiles = {}
  for name in ("rho1", "w0", "w1"):
    profiles[name] = _profile(getattr(section, name), "initial." + name)
  if section.u0:
    profiles["u0"] = [_profile(p, "initial.u0[" + str(i) + "]")
                      for i, p in enumerate(section.u0)]
  with _at("initial.D"):
    if not section.D > 0.0:
      raise ValueError("D must be positive: " + str(section.D))
  return initial_data.InitialSpec(
      profiles, D=section.D,
      eps=section.eps if section.HasField("eps") else None)


def make_options(doc):
  run = doc.run
  return options_lib.Options(
      check_finite=run.check_finite, strict_energy=run.strict_energy,
      tol_energy=run.tol_energy, tol_relative=run.tol_relative, cfl=run.cfl,
      contact_floor=run.contact_floor,
      monolithic_relaxation=doc.coupling.relaxation)


def build_run_config(doc):
  """Translates a ConfigDocument into a scheme.RunConfig.

  Raises:
    errors.ConfigError: if a value is invalid, naming its section.
  """
  grid = make_grid(doc)
  params = make_params(doc, grid)
  initial = make_initial(doc)
  run = doc.run
  with _at("run.dt_policy"):
    if run.dt_policy == FIXED_POLICY:
      if not run.HasField("dt"):
        raise ValueError("dt_policy fixed needs run.dt")
      dt = run.dt
    elif run.dt_policy == CFL_POLICY:
      dt = None
    else:
      raise ValueError("Unknown dt policy: " + str(run.dt_policy))
  with _at("run"):
    options = make_options(doc).validate()
  with _at("coupling"):
    return scheme.RunConfig(
        params, grid, initial=initial, t_final=run.t_final, dt=dt,
        coupling=doc.coupling.mode, tol=doc.coupling.tol,
        max_iter=doc.coupling.max_iter, relaxation=doc.coupling.relaxation,
        output_every=run.output_every,
        wall_clock_budget=(run.wall_clock_budget
                           if run.HasField("wall_clock_budget") else None),
        dump_fields=run.dump_fields, options=options)


def parse_config(text):
  return build_run_config(parse_document(text))


def load_config(path):
  return build_run_config(load_document(path))


def build_reference(section, config, path="reference"):
  """Builds the ReferenceSolution a Reference section describes.

  Args:
    section: a Reference message.
    config: the scheme.RunConfig of the runs it is compared with.
    path: the section path for error messages.

  Returns:
    A limits.reference.ReferenceSolution covering [0, config.t_final].

  Raises:
    errors.ConfigError: on a bad section or a reference that stops short of
      config.t_final.
  """
  with _at(path):
    ref = _reference(section, config)
    if not ref.covers(0.0, config.t_final):
      raise ValueError(
          "reference covers [" + str(ref.times[0]) + ", " +
          str(ref.times[-1]) + "], runs need [0, " + str(config.t_final) +
          "]")
  return ref


def _reference(section, config):
  if section.provider == reference_lib.PROXY_RUN:
    grid = config.grid.refined(section.refine) if section.refine > 1 else (
        config.grid)
    return reference_lib.reference_proxy(config, section.eps0, section.nu0,
                                         grid)
  if section.provider == reference_lib.EXTERNAL_FILE:
    if not section.path:
      raise ValueError("external-file reference needs a path")
    return reference_lib.ReferenceSolution.load(section.path)
  if section.provider == reference_lib.MANUFACTURED:
    return reference_lib.manufactured_reference(
        config.grid, config.params, section.amplitude,
        t_final=config.t_final)
  raise ValueError("Unknown reference provider: " + str(section.provider))


SweepSettings = collections.namedtuple("SweepSettings", [
    "eps_list", "nu_list", "pairing", "column_nu", "column_gamma", "floor",
    "workers"])


def sweep_settings(doc):
  """The sweep section as a SweepSettings; floor is None when not given.

  A proxy-run reference must sit at most at a quarter of the smallest swept
  eps and nu.

  Raises:
    errors.ConfigError: on empty lists, bad pairing or workers, or a proxy
      reference too close to the swept values.
  """
  section = doc.sweep
  with _at("sweep"):
    if not section.eps_list or not section.nu_list:
      raise ValueError("eps_list and nu_list must not be empty")
    if section.pairing not in sweep_lib.PAIRINGS:
      raise ValueError("Unknown pairing: " + str(section.pairing))
    if section.workers < 1:
      raise ValueError("workers must be at least 1: " + str(section.workers))
  reference = section.reference
  if reference.provider == reference_lib.PROXY_RUN:
    nu_values = list(section.nu_list)
    if section.HasField("column_nu"):
      nu_values.append(section.column_nu)
    with _at("sweep.reference"):
      if reference.eps0 > 0.25 * min(section.eps_list):
        raise ValueError("eps0 = " + str(reference.eps0) + " exceeds a quarter "
                         "of the smallest swept eps")
      if reference.nu0 > 0.25 * min(nu_values):
        raise ValueError("nu0 = " + str(reference.nu0) + " exceeds a quarter "
                         "of the smallest swept nu")

  def optional(name):
    return getattr(section, name) if section.HasField(name) else None

  return SweepSettings(
      eps_list=list(section.eps_list), nu_list=list(section.nu_list),
      pairing=section.pairing, column_nu=optional("column_nu"),
      column_gamma=optional("column_gamma"), floor=optional("floor"),
      workers=section.workers)


# Sections whose presence changes behaviour; echoed only when set.
_PRESENCE_SECTIONS = frozenset(["reference", "characteristic"])


def _effective(message):
  result = collections.OrderedDict()
  for f in message.DESCRIPTOR.fields:
    value = getattr(message, f.name)
    if (f.is_repeated if hasattr(f, "is_repeated") else
        f.label == descriptor.FieldDescriptor.LABEL_REPEATED):
      if f.type == descriptor.FieldDescriptor.TYPE_MESSAGE:
        result[f.name] = [_effective(v) for v in value]
      else:
        result[f.name] = list(value)
    elif f.type == descriptor.FieldDescriptor.TYPE_MESSAGE:
      if f.name not in _PRESENCE_SECTIONS or message.HasField(f.name):
        result[f.name] = _effective(value)
    elif message.HasField(f.name) or f.has_default_value:
      result[f.name] = value
  return result


def effective_config(doc):
  """The document as a dict with every declared default filled in."""
  return _effective(doc)


def dump_effective_config(doc, path=None):
  """Serializes effective_config as sorted JSON; writes it to path if given.

  Parsing the result gives a document with the same effective config.
  """
  text = json.dumps(effective_config(doc), indent=2, sort_keys=True) + "\n"
  if path is not None:
    with open(path, "w") as f:
      f.write(text)
  return text
