"""Surface types, correlators and the cutting relations between them.

A correlator on a surface of (doubled) genus 2g, orientable or not, with
interior arguments x_1..x_m in A and boundary blocks Y^1..Y^s in B is

    (x_1...x_m * prod(Y^1) * V_KB(prod(Y^2)) ... V_KB(prod(Y^s)), W)

with W = K_A^g for orientable surfaces and W = U^(2g) otherwise.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import AlgebraElement, StructureAlgebra


@dataclass(frozen=True)
class SurfaceType:
	doubled_genus: int
	orientable: bool
	m: int = 0
	boundary: tuple[int, ...] = ()

	def __post_init__(self):
		object.__setattr__(self, "boundary", tuple(sorted(int(b) for b in self.boundary)))
		if self.doubled_genus < 0 or self.m < 0:
			raise ValueError("genus and point counts must be nonnegative")
		if self.orientable and self.doubled_genus % 2:
			raise ValueError("an orientable surface has even doubled genus")
		if not self.orientable and self.doubled_genus < 1:
			raise ValueError("a nonorientable surface has doubled genus at least 1")
		if any(b < 1 for b in self.boundary):
			raise ValueError("every boundary contour needs at least one special point")

	def mu(self) -> Fraction:
		return (self.doubled_genus + self.m + len(self.boundary) + Fraction(sum(self.boundary), 2) - 2)

	def __str__(self) -> str:
		kind = "orientable" if self.orientable else "nonorientable"
		return f"g2={self.doubled_genus} {kind} m={self.m} boundary={list(self.boundary)}"


def surface_mu(surfaces: Sequence[SurfaceType]) -> Fraction:
	"""The invariant mu of a disjoint union (additive over components)."""
	return sum((s.mu() for s in surfaces), Fraction(0))


@dataclass(frozen=True)
class CorrelatorQuery:
	surface: SurfaceType
	interior: tuple[AlgebraElement, ...] = ()
	blocks: tuple[tuple[AlgebraElement, ...], ...] = ()

	def __post_init__(self):
		object.__setattr__(self, "interior", tuple(self.interior))
		object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
		if len(self.interior) != self.surface.m:
			raise ValueError(f"{len(self.interior)} interior arguments for m={self.surface.m}")
		if sorted(len(b) for b in self.blocks) != list(self.surface.boundary):
			raise ValueError("boundary blocks do not match the surface type")
		if any(x.b for x in self.interior):
			raise ValueError("interior arguments must lie in A")
		if any(y.a for blk in self.blocks for y in blk):
			raise ValueError("boundary arguments must lie in B")


def make_query(doubled_genus: int, orientable: bool, interior: Sequence[AlgebraElement] = (),
		blocks: Sequence[Sequence[AlgebraElement]] = ()) -> CorrelatorQuery:
	surface = SurfaceType(doubled_genus, orientable, len(interior), tuple(len(b) for b in blocks))
	return CorrelatorQuery(surface, tuple(interior), tuple(tuple(b) for b in blocks))


def _genus_weight(alg: StructureAlgebra, doubled_genus: int, orientable: bool) -> AlgebraElement:
	cache = alg.__dict__.setdefault("_genus_weights", {})
	key = (doubled_genus, orientable)
	if key not in cache:
		if orientable:
			cache[key] = alg.power(alg.casimir("A"), doubled_genus // 2)
		else:
			cache[key] = alg.power(alg.crosscap_element, doubled_genus)
	return cache[key]


def correlator(alg: StructureAlgebra, q: CorrelatorQuery) -> Fraction:
	return evaluate(alg, q.surface.doubled_genus, q.surface.orientable, q.interior, q.blocks)


def evaluate(alg: StructureAlgebra, doubled_genus: int, orientable: bool,
		interior: Sequence[AlgebraElement] = (), blocks: Sequence[Sequence[AlgebraElement]] = ()) -> Fraction:
	"""Correlator without building a query; an empty block stands for (1_B)."""
	cache = alg.__dict__.setdefault("_correlator_cache", {})
	key = (doubled_genus, orientable, tuple(interior), tuple(tuple(b) for b in blocks))
	if key in cache:
		return cache[key]
	value = _evaluate(alg, doubled_genus, orientable, interior, blocks)
	if len(cache) < 200000:
		cache[key] = value
	return value


def _evaluate(alg, doubled_genus, orientable, interior, blocks) -> Fraction:
	if orientable and doubled_genus % 2:
		raise ValueError("an orientable surface has even doubled genus")
	h = alg.product(list(interior))
	for k, blk in enumerate(blocks):
		y = alg.product(list(blk)) if blk else alg.unit_b
		if y.a:
			raise ValueError("boundary arguments must lie in B")
		if k > 0:
			y = alg.apply_V_KB(y)
		h = alg.multiply(h, y)
	return alg.pair(h, _genus_weight(alg, doubled_genus, orientable))


# trivial surfaces -----------------------------------------------------------

class TrivialSurface(Enum):
	SPHERE = 1
	PROJECTIVE_PLANE = 2
	DISC = 3
	SPHERE_ONE_POINT = 4
	DISC_ONE_BOUNDARY_POINT = 5
	SPHERE_TWO_POINTS = 6
	PROJECTIVE_PLANE_ONE_POINT = 7
	TORUS = 8
	KLEIN_BOTTLE = 9
	DISC_ONE_INTERIOR_POINT = 10
	DISC_TWO_BOUNDARY_POINTS = 11
	MOBIUS_BAND = 12
	CYLINDER = 13


# (doubled genus, orientable, interior arity, boundary arity per block)
TRIVIAL_SHAPES = {
	TrivialSurface.SPHERE: (0, True, 0, ()),
	TrivialSurface.PROJECTIVE_PLANE: (1, False, 0, ()),
	TrivialSurface.DISC: (0, True, 0, (0,)),
	TrivialSurface.SPHERE_ONE_POINT: (0, True, 1, ()),
	TrivialSurface.DISC_ONE_BOUNDARY_POINT: (0, True, 0, (1,)),
	TrivialSurface.SPHERE_TWO_POINTS: (0, True, 2, ()),
	TrivialSurface.PROJECTIVE_PLANE_ONE_POINT: (1, False, 1, ()),
	TrivialSurface.TORUS: (2, True, 0, ()),
	TrivialSurface.KLEIN_BOTTLE: (2, False, 0, ()),
	TrivialSurface.DISC_ONE_INTERIOR_POINT: (0, True, 1, (0,)),
	TrivialSurface.DISC_TWO_BOUNDARY_POINTS: (0, True, 0, (2,)),
	TrivialSurface.MOBIUS_BAND: (1, False, 0, (0,)),
	TrivialSurface.CYLINDER: (0, True, 0, (0, 0)),
}


def trivial_arity(kind: TrivialSurface) -> tuple[int, int]:
	"""(number of A arguments, number of B arguments)."""
	_, _, m, blocks = TRIVIAL_SHAPES[kind]
	return m, sum(blocks)


def trivial_surface_value(alg: StructureAlgebra, kind: TrivialSurface, args: Sequence[int] = ()) -> Fraction:
	"""Closed-form value of a trivial surface read directly from the tensors.

	``args`` are basis indices: A indices first, then B indices.
	"""
	na, nb = trivial_arity(kind)
	if len(args) != na + nb:
		raise ValueError(f"{kind.name} takes {na + nb} basis arguments, got {len(args)}")
	ja = alg.unit_a.vector_a(alg.dim_a)
	jb = alg.unit_b.vector_b(alg.dim_b)
	u = alg.crosscap_element.vector_a(alg.dim_a)
	FA, FB = alg.F_A, alg.F_B
	A, B = range(alg.dim_a), range(alg.dim_b)
	K = TrivialSurface
	if kind is K.SPHERE:
		return sum((ja[i] * alg.J_A[i] for i in A), Fraction(0))
	if kind is K.PROJECTIVE_PLANE:
		return sum((alg.J_A[i] * u[i] for i in A), Fraction(0))
	if kind is K.DISC:
		return sum((jb[i] * alg.J_B[i] for i in B), Fraction(0))
	if kind is K.SPHERE_ONE_POINT:
		return alg.J_A[args[0]]
	if kind is K.DISC_ONE_BOUNDARY_POINT:
		return alg.J_B[args[0]]
	if kind is K.SPHERE_TWO_POINTS:
		return FA[args[0], args[1]]
	if kind is K.PROJECTIVE_PLANE_ONE_POINT:
		return alg.D[args[0]]
	if kind is K.TORUS:
		return sum((FA[i, j] * alg.FA_inv[i, j] for i in A for j in A), Fraction(0))
	if kind is K.KLEIN_BOTTLE:
		return sum((alg.I_A[i, j] * alg.FA_inv[i, j] for i in A for j in A), Fraction(0))
	if kind is K.DISC_ONE_INTERIOR_POINT:
		return sum((jb[j] * alg.R[args[0], j] for j in B), Fraction(0))
	if kind is K.DISC_TWO_BOUNDARY_POINTS:
		return FB[args[0], args[1]]
	if kind is K.MOBIUS_BAND:
		return sum((jb[j] * u[i] * alg.R[i, j] for i in A for j in B), Fraction(0))
	if kind is K.CYLINDER:
		r = [sum((jb[j] * alg.R[i, j] for j in B), Fraction(0)) for i in A]
		return sum((r[i] * alg.FA_inv[i, k] * r[k] for i in A for k in A), Fraction(0))
	raise ValueError(kind)


def trivial_via_correlator(alg: StructureAlgebra, kind: TrivialSurface, args: Sequence[int] = ()) -> Fraction:
	"""The same trivial surface evaluated through the general correlator."""
	g2, orientable, m, blocks = TRIVIAL_SHAPES[kind]
	na, nb = trivial_arity(kind)
	if len(args) != na + nb:
		raise ValueError(f"{kind.name} takes {na + nb} basis arguments, got {len(args)}")
	xs = [AlgebraElement.basis_a(i) for i in args[:m]]
	bargs = [AlgebraElement.basis_b(j) for j in args[m:]]
	blks, pos = [], 0
	for size in blocks:
		blks.append(bargs[pos:pos + size])
		pos += size
	return evaluate(alg, g2, orientable, xs, blks)


# cutting relations ----------------------------------------------------------

def _reverse_star(alg: StructureAlgebra, ys: Sequence[AlgebraElement]) -> list[AlgebraElement]:
	return [alg.star(y) for y in reversed(ys)]


@dataclass(frozen=True)
class Side:
	"""One side of an interior/boundary argument split: X = (xs, blocks)."""
	na: int = 0
	blocks: tuple[int, ...] = ()

	@property
	def slots(self) -> list[str]:
		return ["A"] * self.na + ["B"] * sum(self.blocks)

	def build(self, args: Sequence[int]) -> tuple[list[AlgebraElement], list[list[AlgebraElement]]]:
		xs = [AlgebraElement.basis_a(i) for i in args[:self.na]]
		rest = list(args[self.na:])
		blks = []
		for size in self.blocks:
			blks.append([AlgebraElement.basis_b(j) for j in rest[:size]])
			rest = rest[size:]
		return xs, blks

	@property
	def empty(self) -> bool:
		return self.na == 0 and not self.blocks


@dataclass(frozen=True)
class Template:
	"""A relation instance shape: sides, B-lists and genera; basis indices fill the slots."""
	relation: str
	sides: tuple[Side, ...]
	ylens: tuple[int, ...]
	genera: tuple[tuple[int, bool], ...]

	@property
	def slots(self) -> list[str]:
		out = []
		for s in self.sides:
			out += s.slots
		return out + ["B"] * sum(self.ylens)

	def split(self, args: Sequence[int]):
		parts, pos = [], 0
		for s in self.sides:
			k = len(s.slots)
			parts.append(s.build(args[pos:pos + k]))
			pos += k
		ys = []
		for n in self.ylens:
			ys.append([AlgebraElement.basis_b(j) for j in args[pos:pos + n]])
			pos += n
		return parts, ys

	@property
	def degenerate(self) -> bool:
		return any(s.empty for s in self.sides)


def _dual_pairs(inv) -> list[tuple[int, int, Fraction]]:
	return [(i, j, inv[i, j]) for i in range(inv.shape[0]) for j in range(inv.shape[1]) if inv[i, j] != 0]


def _join(*parts):
	xs, blks = [], []
	for px, pb in parts:
		xs += px
		blks += pb
	return xs, blks


def relation_sides(alg: StructureAlgebra, t: Template, args: Sequence[int]) -> tuple[Fraction, Fraction]:
	"""Left and right side of relation ``t.relation`` on basis arguments."""
	parts, ys = t.split(args)
	E = lambda g2, o, xs, blks: evaluate(alg, g2, o, xs, blks)
	ea, eb = AlgebraElement.basis_a, AlgebraElement.basis_b
	dA, dB = _dual_pairs(alg.FA_inv), _dual_pairs(alg.FB_inv)
	r = t.relation
	if r == "1":
		(x1, b1), (x2, b2) = parts
		(g1, o1), (g2, o2) = t.genera
		lhs = E(g1 + g2, o1 and o2, x1 + x2, b1 + b2)
		rhs = sum((c * E(g1, o1, x1 + [ea(i)], b1) * E(g2, o2, [ea(j)] + x2, b2) for i, j, c in dA), Fraction(0))
		return lhs, rhs
	if r == "2":
		(x, b), = parts
		(g, o), = t.genera
		lhs = E(g + 2, o, x, b)
		rhs = sum((c * E(g, o, x + [ea(i), ea(j)], b) for i, j, c in dA), Fraction(0))
		return lhs, rhs
	if r == "3":
		(x, b), = parts
		(g, _), = t.genera
		lhs = E(g + 2, False, x, b)
		rhs = sum((c * E(g, True, x + [ea(i), alg.star(ea(j))], b) for i, j, c in dA), Fraction(0))
		return lhs, rhs
	if r == "4":
		(x, b), = parts
		(g, o), = t.genera
		u = alg.crosscap_element.vector_a(alg.dim_a)
		lhs = E(g + 1, False, x, b)
		rhs = sum((u[i] * E(g, o, x + [ea(i)], b) for i in range(alg.dim_a) if u[i] != 0), Fraction(0))
		return lhs, rhs
	if r == "5":
		(x, b), = parts
		(g, o), = t.genera
		y1, y2 = ys
		lhs = E(g, o, x, b + [y1, y2])
		rhs = sum((c * E(g, o, x, b + [y1 + [eb(i)] + y2 + [eb(j)]]) for i, j, c in dB), Fraction(0))
		return lhs, rhs
	if r == "6":
		(x1, b1), (x2, b2) = parts
		(g1, o1), (g2, o2) = t.genera
		y1, y2 = ys
		lhs = E(g1 + g2, o1 and o2, x1 + x2, b1 + b2 + [y1 + y2])
		rhs = sum((c * E(g1, o1, x1, b1 + [y1 + [eb(i)]]) * E(g2, o2, x2, b2 + [y2 + [eb(j)]])
			for i, j, c in dB), Fraction(0))
		return lhs, rhs
	if r == "7":
		(x, b), = parts
		(g, o), = t.genera
		y1, y2 = ys
		lhs = E(g + 2, o, x, b + [y1 + y2])
		rhs = sum((c * E(g, o, x, b + [y1 + [eb(i)], y2 + [eb(j)]]) for i, j, c in dB), Fraction(0))
		return lhs, rhs
	if r == "8":
		(x, b), = parts
		(g, _), = t.genera
		y1, y2 = ys
		lhs = E(g + 2, False, x, b + [y1 + y2])
		y2s = _reverse_star(alg, y2)
		rhs = sum((c * E(g, True, x, b + [y1 + [eb(i)], y2s + [alg.star(eb(j))]]) for i, j, c in dB), Fraction(0))
		return lhs, rhs
	if r == "9":
		(x, b), = parts
		(g, o), = t.genera
		y1, y2 = ys
		lhs = E(g + 1, False, x, b + [y1 + y2])
		y2s = _reverse_star(alg, y2)
		rhs = sum((c * E(g, o, x, b + [y1 + [eb(i)] + y2s + [alg.star(eb(j))]]) for i, j, c in dB), Fraction(0))
		return lhs, rhs
	if r == "L1":
		(x, b), = parts
		(g, o), = t.genera
		return E(g, o, [alg.unit_a] + x, b), E(g, o, x, b)
	if r == "L2":
		(x, b), = parts
		(g, o), = t.genera
		y, = ys
		return E(g, o, x, b + [[alg.unit_b] + y]), E(g, o, x, b + [y])
	if r == "L3":
		(x, b), = parts
		(g, o), = t.genera
		return E(g, o, [alg.crosscap_element] + x, b), E(g + 1, False, x, b)
	raise ValueError(f"unknown relation {r!r}")


ORIENTABLE_GENERA = ((0, True), (2, True))
ALL_GENERA = ((0, True), (2, True), (1, False), (2, False))
SIDES = (Side(), Side(1), Side(0, (1,)), Side(1, (1,)), Side(2), Side(0, (2,)))
SMALL_SIDES = (Side(), Side(1), Side(0, (1,)))
GENUS_PAIRS = (((0, True), (0, True)), ((2, True), (0, True)), ((1, False), (0, True)),
	((1, False), (1, False)), ((0, True), (2, False)))


def relation_templates() -> list[Template]:
	out: list[Template] = []
	for s1, s2 in itertools.product(SMALL_SIDES, repeat=2):
		for gp in GENUS_PAIRS:
			out.append(Template("1", (s1, s2), (), gp))
	for s in SIDES:
		for g in ALL_GENERA:
			out.append(Template("2", (s,), (), (g,)))
			out.append(Template("4", (s,), (), (g,)))
			out.append(Template("L1", (s,), (), (g,)))
			out.append(Template("L3", (s,), (), (g,)))
		for g in ORIENTABLE_GENERA:
			out.append(Template("3", (s,), (), (g,)))
	for s in SMALL_SIDES:
		for yl in ((1, 1), (1, 2), (2, 1)):
			for g in ALL_GENERA:
				out.append(Template("5", (s,), yl, (g,)))
				out.append(Template("7", (s,), yl, (g,)))
				out.append(Template("9", (s,), yl, (g,)))
			for g in ORIENTABLE_GENERA:
				out.append(Template("8", (s,), yl, (g,)))
		for yl in ((1,), (2,)):
			for g in ALL_GENERA:
				out.append(Template("L2", (s,), yl, (g,)))
	for s1, s2 in itertools.product(SMALL_SIDES, repeat=2):
		for gp in GENUS_PAIRS:
			out.append(Template("6", (s1, s2), (1, 1), gp))
	return out


RELATION_NAMES = ("1", "2", "3", "4", "5", "6", "7", "8", "9", "L1", "L2", "L3")


@dataclass
class CutResult:
	relation: str
	instances: int = 0
	degenerate_instances: int = 0
	exhaustive: bool = True
	failures: list = field(default_factory=list)

	@property
	def passed(self) -> bool:
		return not self.failures

	def __str__(self) -> str:
		status = "PASS" if self.passed else "FAIL"
		mode = "exhaustive" if self.exhaustive else "sampled"
		line = (f"[{status}] relation {self.relation}: {self.instances} instances ({mode}),"
			f" {self.degenerate_instances} degenerate instance(s)")
		if self.failures:
			line += f"  first failure: {self.failures[0]}"
		return line


@dataclass
class CutReport:
	results: dict[str, CutResult]

	@property
	def passed(self) -> bool:
		return all(r.passed for r in self.results.values())

	def __str__(self) -> str:
		return "\n".join(str(r) for r in self.results.values())


def verify_cut_relations(alg: StructureAlgebra, n_exhaustive_dim: int = 4000, samples: int = 500,
		seed: int = 0, relations: Sequence[str] = RELATION_NAMES, threads: int = 1) -> CutReport:
	"""Check the cutting relations and unit/crosscap insertions on basis arguments.

	A template whose index space has at most ``n_exhaustive_dim`` points is
	checked exhaustively; otherwise each relation spreads ``samples`` random
	tuples over its large templates.
	"""
	rng = random.Random(seed)
	templates = [t for t in relation_templates() if t.relation in relations]
	results = {r: CutResult(r) for r in relations}
	dims = {"A": alg.dim_a, "B": alg.dim_b}
	jobs: list[tuple[Template, tuple[int, ...]]] = []
	large: dict[str, list[Template]] = {r: [] for r in relations}
	for t in templates:
		size = 1
		for s in t.slots:
			size *= dims[s]
		if size <= n_exhaustive_dim:
			jobs += [(t, args) for args in itertools.product(*(range(dims[s]) for s in t.slots))]
		else:
			large[t.relation].append(t)
	for r, ts in large.items():
		if not ts:
			continue
		results[r].exhaustive = False
		for k in range(samples):
			t = ts[k % len(ts)]
			jobs.append((t, tuple(rng.randrange(dims[s]) for s in t.slots)))

	def run(job):
		t, args = job
		lhs, rhs = relation_sides(alg, t, args)
		return t, args, lhs, rhs

	if threads > 1:
		from concurrent.futures import ThreadPoolExecutor
		with ThreadPoolExecutor(max_workers=threads) as pool:
			outcomes = list(pool.map(run, jobs))
	else:
		outcomes = [run(j) for j in jobs]
	for t, args, lhs, rhs in outcomes:
		res = results[t.relation]
		res.instances += 1
		res.degenerate_instances += t.degenerate
		if lhs != rhs:
			res.failures.append({"template": t, "args": args, "lhs": lhs, "rhs": rhs})
	return CutReport(results)
