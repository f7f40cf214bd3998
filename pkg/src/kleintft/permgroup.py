"""Permutations and fully enumerated finite permutation groups.

Points are 0-based internally; text forms are 1-based.  Composition is
right-to-left: ``(p * q)(x) == p(q(x))``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 10080


class GroupTooLargeError(ValueError):
	"""The group order exceeds the configured enumeration cap."""


@dataclass(frozen=True, order=True)
class Permutation:
	images: tuple[int, ...]

	def __post_init__(self):
		imgs = tuple(int(x) for x in self.images)
		if sorted(imgs) != list(range(len(imgs))):
			raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {imgs}")
		object.__setattr__(self, "images", imgs)

	@classmethod
	def identity(cls, degree: int) -> "Permutation":
		return cls(tuple(range(degree)))

	@classmethod
	def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
		"""Build from 0-based cycles."""
		imgs = list(range(degree))
		seen: set[int] = set()
		for cyc in cycles:
			for x in cyc:
				if not 0 <= x < degree:
					raise ValueError(f"point {x + 1} outside 1..{degree}")
				if x in seen:
					raise ValueError(f"point {x + 1} appears twice")
				seen.add(x)
			for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
				imgs[a] = b
		return cls(tuple(imgs))

	@property
	def degree(self) -> int:
		return len(self.images)

	def __call__(self, x: int) -> int:
		return self.images[x]

	def __mul__(self, other: "Permutation") -> "Permutation":
		return compose(self, other)

	def inverse(self) -> "Permutation":
		inv = [0] * self.degree
		for i, x in enumerate(self.images):
			inv[x] = i
		return Permutation(tuple(inv))

	def cycles(self) -> list[tuple[int, ...]]:
		"""All cycles (fixed points included), each starting at its least point."""
		seen = [False] * self.degree
		out = []
		for start in range(self.degree):
			if seen[start]:
				continue
			cyc = []
			x = start
			while not seen[x]:
				seen[x] = True
				cyc.append(x)
				x = self.images[x]
			out.append(tuple(cyc))
		return out

	def cycle_type(self) -> "Partition":
		return Partition([len(c) for c in self.cycles()])

	def is_involution(self) -> bool:
		return all(self.images[x] == i for i, x in enumerate(self.images))

	def __str__(self) -> str:
		cyc = [c for c in self.cycles() if len(c) > 1]
		if not cyc:
			return "()"
		return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
	if p.degree != q.degree:
		raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
	return Permutation(tuple(p.images[x] for x in q.images))


def parse_permutation(text: str, degree: int) -> Permutation:
	"""Parse cycle notation ``(1 2)(3 4)`` or an image list ``2,1,3`` (1-based)."""
	t = text.strip()
	if t.startswith("("):
		cycles = []
		for chunk in t.replace(")", ")\n").split("\n"):
			chunk = chunk.strip()
			if not chunk:
				continue
			if not (chunk.startswith("(") and chunk.endswith(")")):
				raise ValueError(f"malformed cycle {chunk!r}")
			body = chunk[1:-1].replace(",", " ").split()
			if body:
				cycles.append([int(x) - 1 for x in body])
		return Permutation.from_cycles(cycles, degree)
	imgs = [int(x) - 1 for x in t.replace(",", " ").split()]
	if len(imgs) != degree:
		raise ValueError(f"image list has {len(imgs)} entries, expected {degree}")
	return Permutation(tuple(imgs))


@dataclass(frozen=True, order=True)
class Partition:
	parts: tuple[int, ...]

	def __init__(self, parts: Iterable[int]):
		ps = tuple(sorted((int(p) for p in parts), reverse=True))
		if any(p <= 0 for p in ps):
			raise ValueError(f"partition parts must be positive: {ps}")
		object.__setattr__(self, "parts", ps)

	@property
	def n(self) -> int:
		return sum(self.parts)

	def __len__(self) -> int:
		return len(self.parts)

	def __iter__(self):
		return iter(self.parts)

	def __str__(self) -> str:
		return ",".join(map(str, self.parts))

	def __repr__(self) -> str:
		return f"Partition({list(self.parts)})"


def partitions(n: int) -> list[Partition]:
	"""All partitions of n in reverse lexicographic order."""
	out: list[Partition] = []

	def rec(rest: int, cap: int, acc: list[int]):
		if rest == 0:
			out.append(Partition(acc))
			return
		for p in range(min(rest, cap), 0, -1):
			rec(rest - p, p, acc + [p])

	rec(n, n, [])
	return out


@dataclass(frozen=True)
class ConjugacyClass:
	representative: int
	size: int
	members: tuple[int, ...]
	cycle_type: Partition


class GroupTable:
	"""A finite permutation group with every element enumerated.

	Elements are sorted lexicographically by image tuple, so the identity is
	index 0.  ``mul[i, j]`` is the index of ``elements[i] * elements[j]``.
	"""

	def __init__(self, degree: int, generators: Sequence[Permutation], cap: int = DEFAULT_ORDER_CAP,
			name: str | None = None):
		self.degree = degree
		gens = tuple(generators)
		for g in gens:
			if g.degree != degree:
				raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
		self.generator_perms = gens
		self.name = name
		self.cap = cap
		elems = self._closure(gens)
		elems.sort()
		self.elements: tuple[Permutation, ...] = tuple(elems)
		self._index = {p: i for i, p in enumerate(self.elements)}
		self.generators = tuple(self._index[g] for g in gens)
		self._build_tables()
		self._build_classes()

	def _closure(self, gens) -> list[Permutation]:
		ident = Permutation.identity(self.degree)
		seen = {ident}
		queue = deque([ident])
		while queue:
			x = queue.popleft()
			for g in gens:
				y = g * x
				if y not in seen:
					seen.add(y)
					if len(seen) > self.cap:
						raise GroupTooLargeError(
							f"group order exceeds cap {self.cap}; raise the cap explicitly if intended")
					queue.append(y)
		return list(seen)

	def _build_tables(self):
		n, deg = len(self.elements), self.degree
		dtype = np.int32 if n > 60000 else np.uint16
		E = np.array([p.images for p in self.elements], dtype=np.int64).reshape(n, deg)
		weights = deg ** np.arange(deg, dtype=np.int64)
		keys = E @ weights
		order = np.argsort(keys)
		sorted_keys = keys[order]
		mul = np.empty((n, n), dtype=dtype)
		for i in range(n):
			# row i: elements[i] o elements[j], i.e. images E[i][E[j]]
			k = E[i][E] @ weights
			mul[i] = order[np.searchsorted(sorted_keys, k)]
		inv = np.argmax(mul == 0, axis=1).astype(dtype)
		mul.flags.writeable = False
		inv.flags.writeable = False
		self.mul = mul
		self.inv = inv

	def _build_classes(self):
		n = self.order
		conj = [np.asarray(self.mul[self.mul[g], self.inv[g]], dtype=np.int64) for g in self.generators]
		class_of = np.full(n, -1, dtype=np.int64)
		classes = []
		for start in range(n):
			if class_of[start] >= 0:
				continue
			cid = len(classes)
			class_of[start] = cid
			members = [start]
			queue = deque([start])
			while queue:
				x = queue.popleft()
				for c in conj:
					y = int(c[x])
					if class_of[y] < 0:
						class_of[y] = cid
						members.append(y)
						queue.append(y)
			members.sort()
			classes.append(ConjugacyClass(start, len(members), tuple(members),
				self.elements[start].cycle_type()))
		class_of.flags.writeable = False
		self.class_of = class_of
		self.classes: tuple[ConjugacyClass, ...] = tuple(classes)
		self.involutions: tuple[int, ...] = tuple(i for i in range(n) if self.mul[i, i] == 0)

	@property
	def order(self) -> int:
		return len(self.elements)

	def index(self, p: Permutation) -> int:
		try:
			return self._index[p]
		except KeyError:
			raise ValueError(f"{p} is not in the group") from None

	def conjugate(self, g: int, x: int) -> int:
		"""Index of g x g^-1."""
		return int(self.mul[self.mul[g, x], self.inv[g]])

	def class_index(self, x: int) -> int:
		return int(self.class_of[x])

	def centralizer_order(self, cls: int) -> int:
		return self.order // self.classes[cls].size

	def class_labels(self) -> list[str]:
		"""Cycle-type labels; duplicated cycle types get a ``#k`` suffix."""
		types = [str(c.cycle_type) for c in self.classes]
		return [t if types.count(t) == 1 else f"{t}#{k}" for k, t in enumerate(types)]

	def descriptor(self) -> dict:
		return {
			"name": self.name,
			"degree": self.degree,
			"generators": [str(g) for g in self.generator_perms],
			"order": self.order,
		}

	def __repr__(self) -> str:
		return f"GroupTable(degree={self.degree}, order={self.order}, name={self.name!r})"


def symmetric_group(n: int, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
	"""S_n generated by (1 2) and (1 2 ... n)."""
	if n < 1:
		raise ValueError("n must be positive")
	if factorial(n) > cap:
		raise GroupTooLargeError(f"|S_{n}| = {factorial(n)} exceeds cap {cap}")
	gens = []
	if n >= 2:
		gens.append(Permutation.from_cycles([(0, 1)], n))
	if n >= 3:
		gens.append(Permutation.from_cycles([tuple(range(n))], n))
	return GroupTable(n, gens, cap=cap, name=f"S{n}")


def group_from_generators(degree: int, generators: Sequence[Permutation],
		cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
	return GroupTable(degree, generators, cap=cap)
