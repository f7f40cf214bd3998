"""Text grammars and JSON/CSV serialization."""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .algebra import TENSOR_NAMES, AlgebraElement, StructureAlgebra
from .dihedral import DihedralDiagram
from .permgroup import Partition

TENSOR_FORMAT_VERSION = 1

_TENSOR_AXES = {"F_A": "AA", "F_B": "BB", "R": "AB", "S": "AAA", "T": "BBB", "R3": "ABB",
	"I_A": "AA", "I_B": "BB", "D": "A", "J_A": "A", "J_B": "B"}


def parse_partition(text: str) -> Partition:
	tokens = [t.strip() for t in text.split(",")]
	if not text.strip() or any(t == "" for t in tokens):
		raise ValueError(f"empty part in partition {text!r}")
	parts = []
	for t in tokens:
		try:
			v = int(t)
		except ValueError:
			raise ValueError(f"non-integer part {t!r}") from None
		if v <= 0:
			raise ValueError(f"partition parts must be positive, got {v}")
		parts.append(v)
	return Partition(parts)


_DIAGRAM_FIELD = re.compile(r"^\s*([1-4])\s*:\s*([0-9,\s]*)$")


def parse_dihedral(text: str, n: int | None = None) -> DihedralDiagram:
	"""Parse ``1:a,b;2:c;3:;4:d`` (orbit sizes per type; empty lists allowed)."""
	fields: dict[int, list[int]] = {}
	for chunk in text.split(";"):
		mt = _DIAGRAM_FIELD.match(chunk)
		if not mt:
			raise ValueError(f"malformed diagram field {chunk!r}")
		kind = int(mt.group(1))
		if kind in fields:
			raise ValueError(f"type {kind} given twice")
		body = mt.group(2).strip()
		vals = [] if not body else [int(x) for x in body.split(",")]
		fields[kind] = vals
	d = DihedralDiagram(*(tuple(fields.get(i, ())) for i in range(1, 5)))
	if n is not None and d.n != n:
		raise ValueError(f"diagram {d} has total {d.n}, expected {n}")
	return d


def format_rational(q, decimal: bool = False) -> str:
	s = exact.fmt(q)
	if decimal:
		s += f" ({float(Fraction(q)):.12g})"
	return s


@dataclass(frozen=True)
class BasisLabels:
	"""Basis label lists, enough to resolve references without tensors."""
	labels_a: tuple[str, ...]
	labels_b: tuple[str, ...]

	@property
	def dim_a(self) -> int:
		return len(self.labels_a)

	@property
	def dim_b(self) -> int:
		return len(self.labels_b)


def resolve_a(alg: StructureAlgebra | BasisLabels, ref: str) -> int:
	"""A-basis index from ``#k``, a label, or partition text."""
	ref = ref.strip()
	if ref.startswith("#"):
		k = int(ref[1:])
		if not 0 <= k < alg.dim_a:
			raise ValueError(f"A-index {k} out of range")
		return k
	if ref in alg.labels_a:
		return alg.labels_a.index(ref)
	try:
		canon = str(parse_partition(ref))
	except ValueError:
		canon = None
	if canon is not None and canon in alg.labels_a:
		return alg.labels_a.index(canon)
	raise ValueError(f"unknown A-basis label {ref!r}")


def resolve_b(alg: StructureAlgebra | BasisLabels, ref: str) -> int:
	"""B-basis index from ``#k``, a label, or diagram text."""
	ref = ref.strip()
	if ref.startswith("#"):
		k = int(ref[1:])
		if not 0 <= k < alg.dim_b:
			raise ValueError(f"B-index {k} out of range")
		return k
	if ref in alg.labels_b:
		return alg.labels_b.index(ref)
	try:
		canon = str(parse_dihedral(ref))
	except ValueError:
		canon = None
	if canon is not None and canon in alg.labels_b:
		return alg.labels_b.index(canon)
	raise ValueError(f"unknown B-basis label {ref!r}")


def parse_interior(text: str) -> list[str]:
	"""``2;2`` or ``#1;#1``: semicolon-separated A references."""
	if not text.strip():
		return []
	refs = [t.strip() for t in text.split(";")]
	if any(not r for r in refs):
		raise ValueError(f"empty interior reference in {text!r}")
	return refs


_BOUNDARY_TOKEN = re.compile(
	r"\s*(1:[0-9,]*;2:[0-9,]*;3:[0-9,]*;4:[0-9,]*|#\d+|\(\)|[;|])")


def parse_boundary(text: str) -> list[list[str]]:
	"""Boundary blocks: diagrams (full four-field text) or ``#k`` references.

	``|`` separates points within a block and ``;`` separates blocks.  A
	block written ``()`` has no special points; it is evaluated as (1_B).
	"""
	text = text.strip()
	if not text:
		return []
	blocks: list[list[str]] = [[]]
	pos = 0
	expect_item = True
	closed = False  # the current block was written ()
	while pos < len(text):
		mt = _BOUNDARY_TOKEN.match(text, pos)
		if not mt:
			raise ValueError(f"cannot parse boundary near {text[pos:]!r}")
		tok = mt.group(1)
		pos = mt.end()
		if tok in (";", "|"):
			if expect_item:
				raise ValueError(f"separator {tok!r} without a preceding point in {text!r}")
			if tok == "|" and closed:
				raise ValueError("() must stand alone as a block")
			if tok == ";":
				blocks.append([])
				closed = False
			expect_item = True
			continue
		if not expect_item:
			raise ValueError(f"missing separator before {tok!r}")
		if tok == "()":
			if blocks[-1]:
				raise ValueError("() must stand alone as a block")
			closed = True
		else:
			blocks[-1].append(tok)
		expect_item = False
	if expect_item:
		raise ValueError(f"boundary ends with a separator: {text!r}")
	return blocks


def element_from_ref(alg: StructureAlgebra, ref, part: str) -> AlgebraElement:
	"""A basis reference string or an inline ``{ref: coefficient}`` map."""
	resolve = resolve_a if part == "A" else resolve_b
	if isinstance(ref, dict):
		coeffs = {resolve(alg, k): Fraction(str(v)) for k, v in ref.items()}
		return AlgebraElement(coeffs) if part == "A" else AlgebraElement({}, coeffs)
	idx = resolve(alg, str(ref))
	return AlgebraElement.basis_a(idx) if part == "A" else AlgebraElement.basis_b(idx)


# structure algebra JSON -----------------------------------------------------

def algebra_to_json(alg: StructureAlgebra, group: dict | None = None) -> dict:
	return {
		"version": TENSOR_FORMAT_VERSION,
		"group": group if group is not None else (alg.group.descriptor() if alg.group else None),
		"basisA": list(alg.labels_a),
		"basisB": list(alg.labels_b),
		"tensors": {name: {"shape": list(getattr(alg, name).shape),
			"entries": exact.sparse_entries(getattr(alg, name))} for name in TENSOR_NAMES},
	}


def algebra_from_json(obj: dict, group=None, pair_classes=None) -> StructureAlgebra:
	if obj.get("version") != TENSOR_FORMAT_VERSION:
		raise ValueError(f"unsupported tensor format version {obj.get('version')}")
	tensors = {name: exact.from_sparse(t["shape"], t["entries"]) for name, t in obj["tensors"].items()}
	desc = (obj.get("group") or {}).get("name") or ""
	return StructureAlgebra(tensors, obj["basisA"], obj["basisB"], group=group, pair_classes=pair_classes,
		description=desc)


def dumps(obj) -> str:
	"""Canonical JSON text (sorted keys, fixed separators, trailing newline)."""
	return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def table_rows(alg: StructureAlgebra, names: Sequence[str] = TENSOR_NAMES) -> list[tuple[str, str, str]]:
	"""Nonzero entries as (row label, column label, value); the last index is the column."""
	labels = {"A": alg.labels_a, "B": alg.labels_b}
	out = []
	for name in names:
		axes = _TENSOR_AXES[name]
		for row in exact.sparse_entries(getattr(alg, name)):
			*idx, v = row
			head = [labels[ax][i] for ax, i in zip(axes[:-1], idx[:-1])]
			out.append((f"{name}[{'|'.join(head)}]" if head else name, labels[axes[-1]][idx[-1]], v))
	return out


def tables_csv(alg: StructureAlgebra, names: Sequence[str] = TENSOR_NAMES) -> str:
	buf = io.StringIO()
	w = csv.writer(buf, lineterminator="\n")
	w.writerow(["row", "column", "value"])
	w.writerows(table_rows(alg, names))
	return buf.getvalue()
