"""Classes of ordered pairs of involutions and their dihedral Young diagrams.

A pair (s1, s2) of involutions generates a dihedral group acting on the
points.  Each orbit is classified by how many fixed points s1 and s2 have
in it:

=====  ====  ====
type   s1    s2
=====  ====  ====
1      0     0
2      1     1
3      2     0
4      0     2
=====  ====  ====
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .permgroup import GroupTable, Partition, Permutation


def _canon(xs: Iterable[int]) -> tuple[int, ...]:
	return tuple(sorted((int(x) for x in xs), reverse=True))


@dataclass(frozen=True, order=True)
class DihedralDiagram:
	type1: tuple[int, ...] = ()
	type2: tuple[int, ...] = ()
	type3: tuple[int, ...] = ()
	type4: tuple[int, ...] = ()

	def __post_init__(self):
		for name, odd in (("type1", False), ("type2", True), ("type3", False), ("type4", False)):
			vals = _canon(getattr(self, name))
			for v in vals:
				if v < 1 or (v % 2 == 1) != odd:
					want = "odd" if odd else "even"
					raise ValueError(f"{name} entries must be {want} and positive, got {v}")
			object.__setattr__(self, name, vals)

	@property
	def n(self) -> int:
		return sum(self.type1) + sum(self.type2) + sum(self.type3) + sum(self.type4)

	def star(self) -> "DihedralDiagram":
		return DihedralDiagram(self.type1, self.type2, self.type4, self.type3)

	def boundary_types(self) -> tuple[Partition, Partition]:
		k1 = len(self.type2) + 2 * len(self.type3)
		k2 = len(self.type2) + 2 * len(self.type4)
		n = self.n
		return (Partition([2] * ((n - k1) // 2) + [1] * k1),
			Partition([2] * ((n - k2) // 2) + [1] * k2))

	def __str__(self) -> str:
		return ";".join(f"{i}:" + ",".join(map(str, t))
			for i, t in enumerate((self.type1, self.type2, self.type3, self.type4), 1))

	def to_json(self) -> dict:
		return {"type1": list(self.type1), "type2": list(self.type2),
			"type3": list(self.type3), "type4": list(self.type4)}

	@classmethod
	def from_json(cls, obj: dict) -> "DihedralDiagram":
		return cls(*(tuple(obj.get(f"type{i}", ())) for i in range(1, 5)))


def star(d: DihedralDiagram) -> DihedralDiagram:
	return d.star()


def boundary_types(d: DihedralDiagram) -> tuple[Partition, Partition]:
	return d.boundary_types()


def dihedral_diagram(s1: Permutation, s2: Permutation) -> DihedralDiagram:
	if s1.degree != s2.degree:
		raise ValueError("involutions must have the same degree")
	if not (s1.is_involution() and s2.is_involution()):
		raise ValueError("dihedral diagrams need a pair of involutions")
	types: list[list[int]] = [[], [], [], []]
	seen = [False] * s1.degree
	for start in range(s1.degree):
		if seen[start]:
			continue
		orbit = []
		queue = deque([start])
		seen[start] = True
		while queue:
			x = queue.popleft()
			orbit.append(x)
			for y in (s1(x), s2(x)):
				if not seen[y]:
					seen[y] = True
					queue.append(y)
		f1 = sum(1 for x in orbit if s1(x) == x)
		f2 = sum(1 for x in orbit if s2(x) == x)
		slot = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (0, 2): 3}[(f1, f2)]
		types[slot].append(len(orbit))
	return DihedralDiagram(*types)


@dataclass(frozen=True)
class PairClass:
	diagram: DihedralDiagram
	representative: tuple[int, int]  # group element indices
	size: int
	nu: int  # stabilizer order under simultaneous conjugation


class DihedralClassTable:
	"""Orbits of ordered involution pairs under simultaneous conjugation.

	Classes are ordered by their lexicographically least pair of element
	indices.  ``pair_class[i, j]`` is the class of
	``(involutions[i], involutions[j])`` where ``involutions`` are positions
	in the group's involution list.
	"""

	def __init__(self, group: GroupTable):
		self.group = group
		self.involutions = group.involutions
		self.position = {s: i for i, s in enumerate(self.involutions)}
		k = len(self.involutions)
		inv_arr = np.asarray(self.involutions, dtype=np.int64)
		# conjugation action of each generator on involution positions
		lookup = np.full(group.order, -1, dtype=np.int64)
		lookup[inv_arr] = np.arange(k)
		actions = []
		for g in group.generators:
			img = group.mul[group.mul[g, inv_arr], group.inv[g]]
			actions.append(lookup[np.asarray(img, dtype=np.int64)])
		pair_class = np.full((k, k), -1, dtype=np.int64)
		classes = []
		for a in range(k):
			for b in range(k):
				if pair_class[a, b] >= 0:
					continue
				cid = len(classes)
				pair_class[a, b] = cid
				size = 1
				queue = deque([(a, b)])
				while queue:
					x, y = queue.popleft()
					for act in actions:
						u, v = int(act[x]), int(act[y])
						if pair_class[u, v] < 0:
							pair_class[u, v] = cid
							size += 1
							queue.append((u, v))
				rep = (self.involutions[a], self.involutions[b])
				diagram = dihedral_diagram(group.elements[rep[0]], group.elements[rep[1]])
				classes.append(PairClass(diagram, rep, size, self._stabilizer_order(rep)))
		pair_class.flags.writeable = False
		self.pair_class = pair_class
		self.classes: tuple[PairClass, ...] = tuple(classes)
		self.star_index = tuple(int(pair_class[self.position[c.representative[1]],
			self.position[c.representative[0]]]) for c in classes)
		by_diagram: dict[DihedralDiagram, list[int]] = {}
		for i, c in enumerate(classes):
			by_diagram.setdefault(c.diagram, []).append(i)
		self._by_diagram = by_diagram
		self.lookup = {d: ids[0] for d, ids in by_diagram.items() if len(ids) == 1}

	def _stabilizer_order(self, rep: tuple[int, int]) -> int:
		g = self.group
		allg = np.arange(g.order)
		ok = np.ones(g.order, dtype=bool)
		for s in rep:
			ok &= g.mul[g.mul[allg, s], g.inv] == s
		return int(ok.sum())

	def __len__(self) -> int:
		return len(self.classes)

	def class_of_pair(self, s1: int, s2: int) -> int:
		"""Class index of a pair given as group element indices."""
		return int(self.pair_class[self.position[s1], self.position[s2]])

	def classes_with_diagram(self, d: DihedralDiagram) -> list[int]:
		return list(self._by_diagram.get(d, []))

	def labels(self) -> list[str]:
		"""Diagram text per class; shared diagrams get a ``#k`` suffix."""
		out = []
		for i, c in enumerate(self.classes):
			text = str(c.diagram)
			out.append(text if c.diagram in self.lookup else f"{text}#{i}")
		return out

	def trivial_classes(self) -> list[int]:
		"""Classes containing the diagonal pairs (s, s)."""
		return sorted({self.class_of_pair(s, s) for s in self.involutions})

	def diagonal_count(self, cls: int) -> int:
		"""Number of pairs (s, s) in a class."""
		return sum(1 for s in self.involutions if self.class_of_pair(s, s) == cls)


def dihedral_classes(g: GroupTable) -> DihedralClassTable:
	return DihedralClassTable(g)
