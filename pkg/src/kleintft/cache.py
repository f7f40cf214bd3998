"""On-disk cache of structure-algebra tensors keyed by group descriptor."""
from __future__ import annotations

import hashlib
import json
import os
import time
from pathlib import Path

from . import __version__
from .algebra import StructureAlgebra, from_group
from .dihedral import dihedral_classes
from .formats import TENSOR_FORMAT_VERSION, algebra_from_json, algebra_to_json, dumps
from .permgroup import GroupTable


def cache_key(descriptor: dict) -> str:
	blob = json.dumps({"group": descriptor, "version": TENSOR_FORMAT_VERSION}, sort_keys=True)
	return hashlib.sha256(blob.encode()).hexdigest()[:24]


def cache_path(cache_dir: str | os.PathLike, descriptor: dict) -> Path:
	return Path(cache_dir) / f"algebra-{cache_key(descriptor)}.json"


def load_or_build(g: GroupTable, cache_dir: str | os.PathLike | None = None) -> StructureAlgebra:
	"""Structure algebra of ``g``, read from ``cache_dir`` when a current entry exists."""
	d = dihedral_classes(g)
	if cache_dir is None:
		return from_group(g, d)
	descriptor = g.descriptor()
	path = cache_path(cache_dir, descriptor)
	if path.exists():
		try:
			obj = json.loads(path.read_text())
			if obj.get("version") == TENSOR_FORMAT_VERSION and obj.get("group") == descriptor:
				return algebra_from_json(obj["algebra"], group=g, pair_classes=d)
		except (ValueError, KeyError):
			pass  # stale or corrupt: rebuild
	alg = from_group(g, d)
	payload = {
		"version": TENSOR_FORMAT_VERSION,
		"group": descriptor,
		"algebra": algebra_to_json(alg),
		"meta": {"created": time.strftime("%Y-%m-%dT%H:%M:%S"), "tool_version": __version__},
	}
	path.parent.mkdir(parents=True, exist_ok=True)
	tmp = path.with_suffix(".tmp")
	tmp.write_text(dumps(payload))
	tmp.replace(path)
	return alg
