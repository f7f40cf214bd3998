"""Structure algebras H = A + B given by their structure-constant tensors.

An algebra is stored through eleven tensors (all exact rationals):

* ``F_A[a1, a2] = (a1, a2)``, ``F_B[b1, b2] = (b1, b2)``, ``R[a, b] = (a, b)``
* ``S[a1, a2, a3] = (a1 a2, a3)``, ``T[b1, b2, b3] = (b1 b2, b3)``,
  ``R3[a, b1, b2] = (a b1, b2)``
* ``I_A[a1, a2] = (a1*, a2)``, ``I_B[b1, b2] = (b1*, b2)``
* ``D[a] = (U, a)``, ``J_A[a] = (1_A, a)``, ``J_B[b] = (1_B, b)``

Indices are raised with the exact inverse of ``F_A`` or ``F_B``; for
asymmetric tensors the last index is the one raised.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import exact
from .dihedral import DihedralClassTable, dihedral_classes
from .permgroup import GroupTable

TENSOR_NAMES = ("F_A", "F_B", "R", "S", "T", "R3", "I_A", "I_B", "D", "J_A", "J_B")


class CrosscapError(ValueError):
	"""The sum-of-squares crosscap fails the crosscap axioms for this group."""


def _clean(coeffs: Mapping[int, object] | None) -> dict[int, Fraction]:
	out = {}
	for k, v in (coeffs or {}).items():
		v = Fraction(v)
		if v != 0:
			out[int(k)] = v
	return dict(sorted(out.items()))


@dataclass(frozen=True)
class AlgebraElement:
	"""Sparse element of H: A-coefficients and B-coefficients, zeros dropped."""

	a: dict = field(default_factory=dict)
	b: dict = field(default_factory=dict)

	def __post_init__(self):
		object.__setattr__(self, "a", _clean(self.a))
		object.__setattr__(self, "b", _clean(self.b))

	@classmethod
	def basis_a(cls, i: int) -> "AlgebraElement":
		return _basis(int(i), "a")

	@classmethod
	def basis_b(cls, j: int) -> "AlgebraElement":
		return _basis(int(j), "b")

	@classmethod
	def from_vectors(cls, a=None, b=None) -> "AlgebraElement":
		da = {i: v for i, v in enumerate(a)} if a is not None else {}
		db = {i: v for i, v in enumerate(b)} if b is not None else {}
		return cls(da, db)

	def vector_a(self, dim: int) -> np.ndarray:
		v = exact.zeros(dim)
		for i, c in self.a.items():
			v[i] = c
		return v

	def vector_b(self, dim: int) -> np.ndarray:
		v = exact.zeros(dim)
		for i, c in self.b.items():
			v[i] = c
		return v

	def is_zero(self) -> bool:
		return not self.a and not self.b

	def in_a(self) -> bool:
		return not self.b

	def in_b(self) -> bool:
		return not self.a

	def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
		a = dict(self.a)
		for k, v in other.a.items():
			a[k] = a.get(k, 0) + v
		b = dict(self.b)
		for k, v in other.b.items():
			b[k] = b.get(k, 0) + v
		return AlgebraElement(a, b)

	def __neg__(self) -> "AlgebraElement":
		return self.scale(-1)

	def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
		return self + (-other)

	def scale(self, c) -> "AlgebraElement":
		c = Fraction(c)
		return AlgebraElement({k: c * v for k, v in self.a.items()}, {k: c * v for k, v in self.b.items()})

	def __rmul__(self, c) -> "AlgebraElement":
		return self.scale(c)

	def __hash__(self):
		h = self.__dict__.get("_hash")
		if h is None:
			h = hash((tuple(sorted(self.a.items())), tuple(sorted(self.b.items()))))
			object.__setattr__(self, "_hash", h)
		return h

	@classmethod
	def _trusted(cls, a: dict, b: dict) -> "AlgebraElement":
		"""Wrap dicts already free of zeros, skipping normalization."""
		obj = object.__new__(cls)
		object.__setattr__(obj, "a", a)
		object.__setattr__(obj, "b", b)
		return obj


@lru_cache(maxsize=None)
def _basis(i: int, part: str) -> AlgebraElement:
	one = {i: Fraction(1)}
	return AlgebraElement._trusted(one, {}) if part == "a" else AlgebraElement._trusted({}, one)


def _sparse_rows(table: np.ndarray) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
	rows = {}
	for i in range(table.shape[0]):
		for j in range(table.shape[1]):
			rows[i, j] = tuple((k, v) for k, v in enumerate(table[i, j]) if v != 0)
	return rows


def _accumulate(acc: dict, rows: dict, x: dict, y: dict):
	for i, xi in x.items():
		for j, yj in y.items():
			c = xi * yj
			for k, v in rows[i, j]:
				acc[k] = acc.get(k, 0) + c * v


def _nonzero(d: dict) -> dict:
	return {k: v for k, v in d.items() if v != 0}


class StructureAlgebra:
	"""Exact structure-constant presentation of a structure algebra."""

	def __init__(self, tensors: Mapping[str, np.ndarray], labels_a: Sequence[str], labels_b: Sequence[str],
			group: GroupTable | None = None, pair_classes: DihedralClassTable | None = None,
			description: str = ""):
		missing = [k for k in TENSOR_NAMES if k not in tensors]
		if missing:
			raise ValueError(f"missing tensors: {missing}")
		self.labels_a = tuple(labels_a)
		self.labels_b = tuple(labels_b)
		self.dim_a = len(self.labels_a)
		self.dim_b = len(self.labels_b)
		da, db = self.dim_a, self.dim_b
		shapes = {"F_A": (da, da), "F_B": (db, db), "R": (da, db), "S": (da, da, da), "T": (db, db, db),
			"R3": (da, db, db), "I_A": (da, da), "I_B": (db, db), "D": (da,), "J_A": (da,), "J_B": (db,)}
		for name in TENSOR_NAMES:
			arr = exact.fractions(tensors[name])
			if arr.shape != shapes[name]:
				raise ValueError(f"tensor {name} has shape {arr.shape}, expected {shapes[name]}")
			arr.flags.writeable = False
			setattr(self, name, arr)
		self.group = group
		self.pair_classes = pair_classes
		self.description = description

	def tensors(self) -> dict[str, np.ndarray]:
		return {k: getattr(self, k) for k in TENSOR_NAMES}

	def replace(self, **changes) -> "StructureAlgebra":
		"""Copy with some tensors replaced (used to build deliberately broken algebras)."""
		t = self.tensors()
		t.update(changes)
		return StructureAlgebra(t, self.labels_a, self.labels_b, self.group, self.pair_classes, self.description)

	# raised tensors -----------------------------------------------------

	@cached_property
	def FA_inv(self) -> np.ndarray:
		return exact.inverse(self.F_A)

	@cached_property
	def FB_inv(self) -> np.ndarray:
		return exact.inverse(self.F_B) if self.dim_b else exact.zeros((0, 0))

	@cached_property
	def S_up(self) -> np.ndarray:
		"""a1 a2 = S_up[a1, a2, a] a."""
		return exact.contract("ijk,kl->ijl", self.S, self.FA_inv)

	@cached_property
	def T_up(self) -> np.ndarray:
		return exact.contract("ijk,kl->ijl", self.T, self.FB_inv)

	@cached_property
	def R3_up(self) -> np.ndarray:
		"""a b = b a = R3_up[a, b, b'] b'."""
		return exact.contract("ijk,kl->ijl", self.R3, self.FB_inv)

	@cached_property
	def star_a_matrix(self) -> np.ndarray:
		"""Row i holds the coefficients of (e_i)*."""
		return exact.contract("ij,jk->ik", self.I_A, self.FA_inv)

	@cached_property
	def star_b_matrix(self) -> np.ndarray:
		return exact.contract("ij,jk->ik", self.I_B, self.FB_inv)

	@cached_property
	def phi_matrix(self) -> np.ndarray:
		"""Row a holds the B-coefficients of phi(e_a)."""
		return exact.contract("ij,jk->ik", self.R, self.FB_inv)

	@cached_property
	def unit_a(self) -> AlgebraElement:
		return AlgebraElement.from_vectors(a=exact.contract("i,ij->j", self.J_A, self.FA_inv))

	@cached_property
	def unit_b(self) -> AlgebraElement:
		return AlgebraElement.from_vectors(b=exact.contract("i,ij->j", self.J_B, self.FB_inv))

	@cached_property
	def crosscap_element(self) -> AlgebraElement:
		"""U, read off from the D tensor."""
		return AlgebraElement.from_vectors(a=exact.contract("i,ij->j", self.D, self.FA_inv))

	# products and pairings ------------------------------------------------

	@cached_property
	def _rows(self):
		return _sparse_rows(self.S_up), _sparse_rows(self.T_up), _sparse_rows(self.R3_up)

	def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
		s_rows, t_rows, r_rows = self._rows
		va: dict = {}
		vb: dict = {}
		if x.a and y.a:
			_accumulate(va, s_rows, x.a, y.a)
		if x.b and y.b:
			_accumulate(vb, t_rows, x.b, y.b)
		if x.a and y.b:
			_accumulate(vb, r_rows, x.a, y.b)
		if y.a and x.b:
			_accumulate(vb, r_rows, y.a, x.b)
		return AlgebraElement._trusted(_nonzero(va), _nonzero(vb))

	def product(self, factors: Sequence[AlgebraElement]) -> AlgebraElement:
		"""Ordered product; the empty product is 1_A."""
		if not factors:
			return self.unit_a
		acc = factors[0]
		for f in factors[1:]:
			acc = self.multiply(acc, f)
		return acc

	def power(self, x: AlgebraElement, k: int) -> AlgebraElement:
		if k < 0:
			raise ValueError("negative power")
		acc = self.unit_a
		for _ in range(k):
			acc = self.multiply(acc, x)
		return acc

	def pair(self, x: AlgebraElement, y: AlgebraElement) -> Fraction:
		total = Fraction(0)
		for i, xi in x.a.items():
			for j, yj in y.a.items():
				total += xi * yj * self.F_A[i, j]
			for j, yj in y.b.items():
				total += xi * yj * self.R[i, j]
		for i, xi in x.b.items():
			for j, yj in y.a.items():
				total += xi * yj * self.R[j, i]
			for j, yj in y.b.items():
				total += xi * yj * self.F_B[i, j]
		return total

	@cached_property
	def _linear_rows(self):
		def rows(mat):
			return [tuple((k, v) for k, v in enumerate(mat[i]) if v != 0) for i in range(mat.shape[0])]
		return rows(self.star_a_matrix), rows(self.star_b_matrix), rows(self.phi_matrix)

	@staticmethod
	def _apply(rows, x: dict) -> dict:
		acc: dict = {}
		for i, c in x.items():
			for k, v in rows[i]:
				acc[k] = acc.get(k, 0) + c * v
		return _nonzero(acc)

	def star(self, x: AlgebraElement) -> AlgebraElement:
		sa, sb, _ = self._linear_rows
		return AlgebraElement._trusted(self._apply(sa, x.a), self._apply(sb, x.b))

	def phi(self, a: AlgebraElement) -> AlgebraElement:
		if a.b:
			raise ValueError("phi takes an element of A")
		return AlgebraElement._trusted({}, self._apply(self._linear_rows[2], a.a))

	def casimir(self, part: str, twisted: bool = False) -> AlgebraElement:
		"""K_X = F^{x'x''} x' x'' (or x' (x'')* when twisted) for X = "A" or "B"."""
		key = (part, twisted)
		cache = self.__dict__.setdefault("_casimir_cache", {})
		if key in cache:
			return cache[key]
		if part == "A":
			inv, basis = self.FA_inv, AlgebraElement.basis_a
		elif part == "B":
			inv, basis = self.FB_inv, AlgebraElement.basis_b
		else:
			raise ValueError("part must be 'A' or 'B'")
		acc = AlgebraElement()
		for i in range(inv.shape[0]):
			for j in range(inv.shape[1]):
				if inv[i, j] != 0:
					right = basis(j)
					if twisted:
						right = self.star(right)
					acc = acc + inv[i, j] * self.multiply(basis(i), right)
		cache[key] = acc
		return acc

	@cached_property
	def V_KB_matrix(self) -> np.ndarray:
		"""Row b holds the coefficients of V_{K_B}(e_b) = F^{b'b''} b' e_b b''."""
		if self.dim_b == 0:
			return exact.zeros((0, 0))
		left = exact.contract("ij,ibd->jbd", self.FB_inv, self.T_up)
		return exact.contract("jbd,djg->bg", left, self.T_up)

	@cached_property
	def _vkb_rows(self):
		m = self.V_KB_matrix
		return [tuple((k, v) for k, v in enumerate(m[i]) if v != 0) for i in range(m.shape[0])]

	def apply_V_KB(self, b: AlgebraElement) -> AlgebraElement:
		if b.a:
			raise ValueError("V_KB acts on elements of B")
		return AlgebraElement._trusted({}, self._apply(self._vkb_rows, b.b))

	def __repr__(self) -> str:
		return f"StructureAlgebra(dimA={self.dim_a}, dimB={self.dim_b}, {self.description!r})"


def from_constants(mult_aa, mult_ab, mult_bb, trace_a, trace_b, star_a, star_b, unit_a, unit_b, crosscap,
		labels_a, labels_b, **kwargs) -> StructureAlgebra:
	"""Build the tensors from products, a trace form and the distinguished elements.

	``mult_aa[i, j, k]`` is the coefficient of e_k in e_i e_j (similarly
	``mult_ab`` for A times B into B and ``mult_bb``); the form is
	``(x, y) = trace(x y)``; ``star_a[i, j]`` is the coefficient of e_j in
	(e_i)*; ``unit_a``, ``unit_b`` and ``crosscap`` are coefficient vectors.
	"""
	c = exact.fractions(mult_aa)
	m = exact.fractions(mult_ab)
	t = exact.fractions(mult_bb)
	fa = exact.fractions(trace_a)
	fb = exact.fractions(trace_b)
	F_A = exact.contract("ijk,k->ij", c, fa)
	F_B = exact.contract("ijk,k->ij", t, fb)
	tensors = {
		"F_A": F_A,
		"F_B": F_B,
		"R": exact.contract("ijk,k->ij", m, fb),
		"S": exact.contract("ijk,kl->ijl", c, F_A),
		"T": exact.contract("ijk,kl->ijl", t, F_B),
		"R3": exact.contract("ijk,kl->ijl", m, F_B),
		"I_A": exact.contract("ij,jk->ik", exact.fractions(star_a), F_A),
		"I_B": exact.contract("ij,jk->ik", exact.fractions(star_b), F_B),
		"D": exact.contract("i,ij->j", exact.fractions(crosscap), F_A),
		"J_A": exact.contract("i,ij->j", exact.fractions(unit_a), F_A),
		"J_B": exact.contract("i,ij->j", exact.fractions(unit_b), F_B),
	}
	return StructureAlgebra(tensors, labels_a, labels_b, **kwargs)


# finite groups ------------------------------------------------------------

def class_products(g: GroupTable) -> np.ndarray:
	"""c[a1, a2, a] = #{x in a1 : x^-1 z in a2} for z the representative of a."""
	k = len(g.classes)
	c = np.zeros((k, k, k), dtype=np.int64)
	allg = np.arange(g.order)
	for a, cls in enumerate(g.classes):
		y = g.mul[g.inv[allg], cls.representative]
		np.add.at(c[:, :, a], (g.class_of[allg], g.class_of[y]), 1)
	return c


def mixed_products(g: GroupTable, d: DihedralClassTable) -> np.ndarray:
	"""m[a, b, b'] = coefficient of E_b' in E_a E_b (via V(x) E_{s1,s2} = E_{x s1 x^-1, s2})."""
	ka, kb = len(g.classes), len(d)
	m = np.zeros((ka, kb, kb), dtype=np.int64)
	allg = np.arange(g.order)
	lookup = np.full(g.order, -1, dtype=np.int64)
	lookup[list(d.involutions)] = np.arange(len(d.involutions))
	for target, pc in enumerate(d.classes):
		r1, r2 = pc.representative
		# s1 = x^-1 r1 x must land on r1 under conjugation by x
		s1 = g.mul[g.mul[g.inv[allg], r1], allg]
		beta = d.pair_class[lookup[s1], d.position[r2]]
		np.add.at(m[:, :, target], (g.class_of[allg], beta), 1)
	return m


def pair_products(g: GroupTable, d: DihedralClassTable) -> np.ndarray:
	"""t[b1, b2, b] = #{s : (r1, s) in b1, (s, r2) in b2} for (r1, r2) the representative of b."""
	kb = len(d)
	t = np.zeros((kb, kb, kb), dtype=np.int64)
	for target, pc in enumerate(d.classes):
		p1, p2 = d.position[pc.representative[0]], d.position[pc.representative[1]]
		np.add.at(t[:, :, target], (d.pair_class[p1, :], d.pair_class[:, p2]), 1)
	return t


def pair_products_double_loop(g: GroupTable, d: DihedralClassTable) -> np.ndarray:
	"""Independent B-product constants by expanding E_b1 E_b2 over all matrix units."""
	kb = len(d)
	members: list[list[tuple[int, int]]] = [[] for _ in range(kb)]
	for i, s in enumerate(d.involutions):
		for j, u in enumerate(d.involutions):
			members[int(d.pair_class[i, j])].append((i, j))
	t = np.zeros((kb, kb, kb), dtype=np.int64)
	for b1 in range(kb):
		for b2 in range(kb):
			acc: dict[tuple[int, int], int] = {}
			for (s1, s2) in members[b1]:
				for (s3, s4) in members[b2]:
					if s2 == s3:
						acc[(s1, s4)] = acc.get((s1, s4), 0) + 1
			for b in range(kb):
				r1, r2 = d.classes[b].representative
				t[b1, b2, b] = acc.get((d.position[r1], d.position[r2]), 0)
	return t


def crosscap(g: GroupTable) -> AlgebraElement:
	"""U = sum over c in G of c^2, in the class basis."""
	allg = np.arange(g.order)
	squares = np.asarray(g.mul[allg, allg], dtype=np.int64)
	counts = np.bincount(squares, minlength=g.order)
	return AlgebraElement({a: int(counts[cls.representative]) for a, cls in enumerate(g.classes)})


def from_group(g: GroupTable, d: DihedralClassTable | None = None, check_crosscap: bool = True) -> StructureAlgebra:
	"""The structure algebra of a finite permutation group."""
	if d is None:
		d = dihedral_classes(g)
	if d.group is not g:
		raise ValueError("pair-class table was built for a different group")
	ka, kb = len(g.classes), len(d)
	order = g.order
	trace_a = [Fraction(1, order) if a == 0 else Fraction(0) for a in range(ka)]
	trace_b = [Fraction(d.diagonal_count(b), order) for b in range(kb)]
	star_a = np.zeros((ka, ka), dtype=np.int64)
	for a, cls in enumerate(g.classes):
		star_a[a, g.class_of[g.inv[cls.representative]]] = 1
	star_b = np.zeros((kb, kb), dtype=np.int64)
	for b, s in enumerate(d.star_index):
		star_b[b, s] = 1
	unit_b = np.zeros(kb, dtype=np.int64)
	unit_b[d.trivial_classes()] = 1
	unit_a = np.zeros(ka, dtype=np.int64)
	unit_a[0] = 1
	u = crosscap(g).vector_a(ka)
	alg = from_constants(class_products(g), mixed_products(g, d), pair_products(g, d), trace_a, trace_b,
		star_a, star_b, unit_a, unit_b, u, g.class_labels(), d.labels(),
		group=g, pair_classes=d, description=g.name or f"group of order {order}")
	if check_crosscap:
		from .relations import crosscap_axioms
		report = crosscap_axioms(alg)
		if not report.passed:
			raise CrosscapError(f"sum-of-squares crosscap fails: {report.failures()}")
	return alg
