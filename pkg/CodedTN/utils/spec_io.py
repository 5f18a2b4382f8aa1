"""
the JSON network spec file and the JSON report file
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple
from dataclasses import dataclass
from pathlib import Path
import logging
import json
import math

import numpy as np

from CodedTN.Classes.field import FieldKind, FieldTag, parse_field
from CodedTN.Classes.network import SlicingPlan, TensorNetwork, plan_for
from CodedTN.Classes.simulator import SimulationReport
from CodedTN.Classes.tensor import Tensor, random_tensor
from CodedTN.constants import (
    RANDOM_GENERATOR,
    RANDOM_HIGH,
    RANDOM_LOW,
    REPORT_SCHEMA_VERSION,
    SPEC_SCHEMA_VERSION,
)
from CodedTN.exceptions import CodedTNException, SpecFormatError
from CodedTN.types import Label, PathType

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NetworkSpec:
    """
    a loaded spec file: the network, the sliced labels and where they came from
    """

    network: TensorNetwork
    slice: Tuple[Label, ...]
    seed: int = 0
    path: Optional[str] = None

    @property
    def field(self) -> FieldKind:
        return self.network.field

    def plan(self) -> SlicingPlan:
        return plan_for(self.network, self.slice)


def _require(obj: Dict[str, Any], key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise SpecFormatError(f"{where}: the field {key!r} is missing")
    return obj[key]


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecFormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _decode_entry(value: Any, field: FieldKind, where: str) -> Any:
    if field.tag == FieldTag.COMPLEX128 and isinstance(value, list):
        if len(value) != 2:
            raise SpecFormatError(f"{where}: a complex entry is a [re, im] pair")
        return complex(value[0], value[1])
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecFormatError(f"{where}: {value!r} is not a number")
    return value


def _random_data(cfg: Any, axes: List[Tuple[Label, int]], field: FieldKind, global_seed: int, position: int, where: str) -> Tensor:
    cfg = _require(cfg, "random", where)
    if not isinstance(cfg, dict):
        raise SpecFormatError(f"{where}.random: expected an object")
    distribution = cfg.get("distribution", "uniform")
    if distribution != "uniform":
        raise SpecFormatError(f"{where}.random.distribution: only 'uniform' is supported, got {distribution!r}")
    low = _int(cfg.get("low", RANDOM_LOW), f"{where}.random.low")
    high = _int(cfg.get("high", RANDOM_HIGH), f"{where}.random.high")
    if high < low:
        raise SpecFormatError(f"{where}.random: high {high} is below low {low}")
    if "seed" in cfg:
        rng = np.random.default_rng(_int(cfg["seed"], f"{where}.random.seed"))
    else:
        rng = np.random.default_rng([global_seed, position])
    return random_tensor(axes, field, rng, low, high)


def spec_from_dict(doc: Dict[str, Any], seed: Optional[int] = None, path: Optional[str] = None) -> NetworkSpec:
    """
    it builds the network of a parsed spec document, problems are SpecFormatError
    with the JSON path of the offending field
    :param doc: the parsed JSON
    :param seed: overrides the document seed
    :param path: where the document came from
    :return: NetworkSpec
    """
    if not isinstance(doc, dict):
        raise SpecFormatError("the spec must be a JSON object")
    version = doc.get("schema_version", SPEC_SCHEMA_VERSION)
    if version != SPEC_SCHEMA_VERSION:
        raise SpecFormatError(f"schema_version: expected {SPEC_SCHEMA_VERSION}, got {version!r}")
    try:
        field = parse_field(doc.get("field", "gf"))
    except CodedTNException as e:
        raise SpecFormatError(f"field: {e.message}")
    global_seed = _int(doc.get("seed", 0), "seed") if seed is None else int(seed)

    dims_doc = _require(doc, "dims", "spec")
    if not isinstance(dims_doc, dict):
        raise SpecFormatError("dims: expected an object of label -> dimension")
    dims: Dict[Label, int] = {}
    for label, dim in dims_doc.items():
        dim = _int(dim, f"dims.{label}")
        if dim < 1:
            raise SpecFormatError(f"dims.{label}: the dimension must be positive, got {dim}")
        dims[str(label)] = dim

    tensors_doc = _require(doc, "tensors", "spec")
    if not isinstance(tensors_doc, list):
        raise SpecFormatError("tensors: expected a list")
    tensors: Dict[str, Tensor] = {}
    for position, entry in enumerate(tensors_doc):
        where = f"tensors[{position}]"
        tid = str(_require(entry, "id", where))
        if tid in tensors:
            raise SpecFormatError(f"{where}.id: the id {tid!r} is used twice")
        labels = _require(entry, "axes", where)
        if not isinstance(labels, list):
            raise SpecFormatError(f"{where}.axes: expected a list of labels")
        for label in labels:
            if label not in dims:
                raise SpecFormatError(f"{where}.axes: dangling axis {label!r} has no entry in dims")
        axes = [(str(label), dims[label]) for label in labels]
        data = _require(entry, "data", where)
        try:
            if isinstance(data, dict):
                tensors[tid] = _random_data(data, axes, field, global_seed, position, f"{where}.data")
            else:
                if not isinstance(data, list):
                    raise SpecFormatError(f"{where}.data: expected a flat list or a random block")
                size = math.prod(d for _, d in axes)
                if len(data) != size:
                    raise SpecFormatError(
                        f"{where}.data: shape mismatch, {len(data)} entries for axes "
                        f"{[f'{l}:{d}' for l, d in axes]} which need {size}"
                    )
                values = [_decode_entry(v, field, f"{where}.data[{i}]") for i, v in enumerate(data)]
                if field.tag == FieldTag.PRIME_FIELD:
                    array = values
                else:
                    array = np.array(values, dtype=field.dtype)
                tensors[tid] = Tensor(axes, array, field)
        except SpecFormatError:
            raise
        except CodedTNException as e:
            raise SpecFormatError(f"{where}: {e.message}")

    slice_doc = doc.get("slice", [])
    if not isinstance(slice_doc, list):
        raise SpecFormatError("slice: expected a list of labels")
    network = TensorNetwork(tensors, field, dims)
    log.debug("loaded %d tensors from %s", len(tensors), path or "<dict>")
    return NetworkSpec(network, tuple(str(s) for s in slice_doc), global_seed, path)


def load_spec(path: PathType, seed: Optional[int] = None) -> NetworkSpec:
    """
    it reads a JSON network spec
    :param path: the spec file
    :param seed: overrides the seed of the file
    :return: NetworkSpec
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecFormatError(f"can not read {path}: {e.strerror}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecFormatError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}")
    return spec_from_dict(doc, seed, str(path))


def _encode_entry(value: Any, field: FieldKind) -> Any:
    if field.tag == FieldTag.PRIME_FIELD:
        return int(value)
    if field.tag == FieldTag.COMPLEX128:
        value = complex(value)
        return [value.real, value.imag]
    return float(value)


def dump_spec(net: TensorNetwork, slice_labels: Sequence[Label] = (), seed: int = 0) -> Dict[str, Any]:
    """
    the spec document of a network with explicit data (round trips through spec_from_dict)
    :param net: TensorNetwork
    :param slice_labels: the plan labels
    :param seed: recorded for provenance
    :return: Dict[str, Any]
    """
    dims = {label: e.dim for label, e in net.edges.items()}
    if net.declared_dims is not None:
        dims.update(net.declared_dims)
    return {
        "schema_version": SPEC_SCHEMA_VERSION,
        "field": net.field.selector,
        "seed": seed,
        "dims": dict(sorted(dims.items())),
        "tensors": [
            {
                "id": tid,
                "axes": list(t.labels),
                "data": [_encode_entry(v, net.field) for v in t.flat()],
            }
            for tid, t in net.tensors.items()
        ],
        "slice": list(slice_labels),
    }


def write_spec(net: TensorNetwork, path: PathType, slice_labels: Sequence[Label] = (), seed: int = 0) -> None:
    Path(path).write_text(json.dumps(dump_spec(net, slice_labels, seed), indent=2) + "\n", encoding="utf-8")


def report_document(report: SimulationReport, spec_path: Optional[str] = None) -> Dict[str, Any]:
    """
    the report fields plus provenance
    :param report: SimulationReport
    :param spec_path: the spec the run used
    :return: Dict[str, Any]
    """
    from CodedTN import __version__

    doc = dict(report.to_dict(REPORT_SCHEMA_VERSION))
    doc["provenance"] = {
        "spec": spec_path,
        "seed": report.seed,
        "random_generator": RANDOM_GENERATOR,
        "tool_version": __version__,
    }
    return doc


def write_report(report: SimulationReport, path: PathType, spec_path: Optional[str] = None) -> None:
    """
    it writes the report as one JSON document
    :param report: SimulationReport
    :param path: the output file
    :param spec_path: the spec the run used
    :return: None
    """
    Path(path).write_text(json.dumps(report_document(report, spec_path), indent=2) + "\n", encoding="utf-8")
    log.info("wrote the report to %s", path)


__all__ = [
    "NetworkSpec",
    "spec_from_dict",
    "load_spec",
    "dump_spec",
    "write_spec",
    "report_document",
    "write_report",
]
