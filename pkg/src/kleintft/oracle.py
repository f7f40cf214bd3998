"""Brute-force covering counts from monodromy tuples.

Every count is a number of homomorphism tuples divided by |G|, which equals
the sum of 1/|Aut| over isomorphism classes of coverings.

Closed surfaces are counted two ways: ``method="naive"`` walks every tuple
with nested loops; ``method="fast"`` fixes the first branch element to its
class representative (weighted by the class size) and convolves the
remaining factors as distributions over the group.  Polygons use
the corner convention: corner i of a b-gon carries the class of
(s_{i-1}, s_i), arcs indexed mod b.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .dihedral import DihedralClassTable
from .permgroup import GroupTable

DEFAULT_LOOP_CAP = 5 * 10 ** 7


class InfeasibleError(ValueError):
	"""The enumeration would exceed the loop cap."""


@dataclass(frozen=True)
class OracleCount:
	count: Fraction
	homomorphisms: int


def _check_closed(doubled_genus: int, orientable: bool):
	if doubled_genus < 0:
		raise ValueError("doubled genus must be nonnegative")
	if orientable and doubled_genus % 2:
		raise ValueError("orientable surfaces have even doubled genus")


def _estimate(g: GroupTable, doubled_genus: int, orientable: bool, classes: Sequence[int]) -> int:
	work = 1
	for c in classes:
		work *= g.classes[c].size
	return work * g.order ** doubled_genus


def closed_naive(g: GroupTable, doubled_genus: int, orientable: bool, classes: Sequence[int],
		cap: int = DEFAULT_LOOP_CAP) -> OracleCount:
	"""Count (a_1..a_m, handles) with a_1..a_m prod(handles) = 1 by nested loops."""
	_check_closed(doubled_genus, orientable)
	if _estimate(g, doubled_genus, orientable, classes) > cap:
		raise InfeasibleError("naive enumeration exceeds the loop cap")
	mul, inv = g.mul, g.inv
	members = [g.classes[c].members for c in classes]
	n_free = doubled_genus
	total = 0
	for branch in itertools.product(*members):
		prefix = 0
		for a in branch:
			prefix = int(mul[prefix, a])
		for free in itertools.product(range(g.order), repeat=n_free):
			acc = prefix
			if orientable:
				for x, y in zip(free[0::2], free[1::2]):
					comm = mul[mul[mul[x, y], inv[x]], inv[y]]
					acc = int(mul[acc, comm])
			else:
				for z in free:
					acc = int(mul[acc, mul[z, z]])
			total += acc == 0
	return OracleCount(Fraction(total, g.order), total)


def _convolve(dist: np.ndarray, weights: np.ndarray, g: GroupTable) -> np.ndarray:
	"""new[x y] += dist[x] * weights[y]."""
	out = np.zeros(g.order, dtype=object)
	xs = np.nonzero(dist)[0]
	ys = np.nonzero(weights)[0]
	if len(xs) == 0 or len(ys) == 0:
		return out
	prod = np.asarray(g.mul[np.ix_(xs, ys)], dtype=np.int64)
	w = np.outer(dist[xs].astype(object), weights[ys].astype(object))
	for idx, val in zip(prod.reshape(-1), w.reshape(-1)):
		out[idx] += val
	return out


def commutator_distribution(g: GroupTable) -> np.ndarray:
	"""d[z] = #{(x, y) : x y x^-1 y^-1 = z}."""
	allg = np.arange(g.order)
	counts = np.zeros(g.order, dtype=np.int64)
	for x in range(g.order):
		comm = g.mul[g.mul[g.mul[x, allg], g.inv[x]], g.inv[allg]]
		counts += np.bincount(np.asarray(comm, dtype=np.int64), minlength=g.order)
	return counts


def square_distribution(g: GroupTable) -> np.ndarray:
	"""d[z] = #{x : x^2 = z}."""
	allg = np.arange(g.order)
	return np.bincount(np.asarray(g.mul[allg, allg], dtype=np.int64), minlength=g.order)


def closed_fast(g: GroupTable, doubled_genus: int, orientable: bool, classes: Sequence[int]) -> OracleCount:
	_check_closed(doubled_genus, orientable)
	dist = np.zeros(g.order, dtype=object)
	dist[:] = 0
	classes = list(classes)
	if classes:
		first = g.classes[classes[0]]
		dist[first.representative] = first.size
		rest = classes[1:]
	else:
		dist[0] = 1
		rest = []
	for c in rest:
		ind = np.zeros(g.order, dtype=np.int64)
		ind[list(g.classes[c].members)] = 1
		dist = _convolve(dist, ind, g)
	if orientable:
		step, reps = commutator_distribution(g), doubled_genus // 2
	else:
		step, reps = square_distribution(g), doubled_genus
	for _ in range(reps):
		dist = _convolve(dist, step, g)
	total = int(dist[0])
	return OracleCount(Fraction(total, g.order), total)


def count_closed(g: GroupTable, doubled_genus: int, orientable: bool, classes: Sequence[int],
		method: str = "fast", cap: int = DEFAULT_LOOP_CAP) -> Fraction:
	"""Weighted count of coverings of a closed surface branched over the given classes."""
	return closed_result(g, doubled_genus, orientable, classes, method, cap).count


def closed_result(g: GroupTable, doubled_genus: int, orientable: bool, classes: Sequence[int],
		method: str = "fast", cap: int = DEFAULT_LOOP_CAP) -> OracleCount:
	for c in classes:
		if not 0 <= c < len(g.classes):
			raise ValueError(f"class index {c} out of range")
	if method == "naive":
		return closed_naive(g, doubled_genus, orientable, classes, cap)
	if method == "fast":
		if g.order ** 2 > cap:
			raise InfeasibleError("group too large for the convolution path")
		return closed_fast(g, doubled_genus, orientable, classes)
	raise ValueError(f"unknown method {method!r}")


def _corner_matrices(d: DihedralClassTable) -> list[np.ndarray]:
	return [(d.pair_class == b).astype(np.int64) for b in range(len(d))]


def polygon_naive(g: GroupTable, d: DihedralClassTable, boundary: Sequence[int],
		cap: int = DEFAULT_LOOP_CAP) -> OracleCount:
	b = len(boundary)
	if b < 1:
		raise ValueError("a polygon needs at least one corner")
	k = len(d.involutions)
	if k ** b > cap:
		raise InfeasibleError("polygon enumeration exceeds the loop cap")
	pc = d.pair_class
	total = 0
	for arcs in itertools.product(range(k), repeat=b):
		if all(pc[arcs[i - 1], arcs[i]] == boundary[i] for i in range(b)):
			total += 1
	return OracleCount(Fraction(total, g.order), total)


def polygon_transfer(g: GroupTable, d: DihedralClassTable, boundary: Sequence[int]) -> OracleCount:
	if len(boundary) < 1:
		raise ValueError("a polygon needs at least one corner")
	mats = _corner_matrices(d)
	# corner i joins arc i-1 to arc i, so the cyclic product starts at corner 1
	acc = np.eye(len(d.involutions), dtype=object)
	order = list(boundary[1:]) + [boundary[0]]
	for c in order:
		acc = acc.dot(mats[c].astype(object))
	total = int(np.trace(acc))
	return OracleCount(Fraction(total, g.order), total)


def count_polygon(g: GroupTable, d: DihedralClassTable, boundary: Sequence[int], method: str = "fast",
		cap: int = DEFAULT_LOOP_CAP) -> Fraction:
	"""Weighted count of coverings of a disc with b boundary corners."""
	return polygon_result(g, d, boundary, method, cap).count


def polygon_result(g, d, boundary, method="fast", cap=DEFAULT_LOOP_CAP) -> OracleCount:
	for c in boundary:
		if not 0 <= c < len(d):
			raise ValueError(f"pair-class index {c} out of range")
	if method == "naive":
		return polygon_naive(g, d, boundary, cap)
	if method == "fast":
		return polygon_transfer(g, d, boundary)
	raise ValueError(f"unknown method {method!r}")


def count_disc_mixed(g: GroupTable, d: DihedralClassTable, alpha: int, beta: int) -> Fraction:
	"""Weighted count of coverings of a disc with one interior and one boundary point."""
	return disc_mixed_result(g, d, alpha, beta).count


def disc_mixed_result(g: GroupTable, d: DihedralClassTable, alpha: int, beta: int) -> OracleCount:
	total = 0
	for a in g.classes[alpha].members:
		for s in d.involutions:
			if d.class_of_pair(s, g.conjugate(a, s)) == beta:
				total += 1
	return OracleCount(Fraction(total, g.order), total)
