"""Semisimple structure algebras from block data.

A model is A = C e_1 + ... + C e_m and B = M_{n_1} + ... + M_{n_k}
(k <= m) with e_i acting as the unit of block i for i < k and as zero on B
for i >= k.  The form is (X, Y) = mu_s tr(XY) on block s and
(e_i, e_i) = lambda_i, where lambda_i = mu_i^2 for i < k.  The star is
given by an involution sigma of the A-idempotents preserving the block
indices, and for each block fixed by sigma a sign nu: +1 is the transpose,
-1 the symplectic twist (even block size only).

Indices are 0-based throughout (including the JSON form).
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence

import numpy as np

from . import exact
from .algebra import StructureAlgebra, from_constants


class FieldObstructionError(ValueError):
	"""A crosscap coordinate needs a square root that is not rational."""


class InvalidModelError(ValueError):
	pass


@dataclass(frozen=True)
class SemisimpleModel:
	m: int
	k: int
	block_dims: tuple[int, ...]
	mu: tuple[Fraction, ...]
	lambda_: tuple[Fraction, ...]  # lambda_i for i >= k
	sigma: tuple[int, ...]
	nu: Mapping[int, int] = field(default_factory=dict)
	crosscap_signs: Mapping[int, int] = field(default_factory=dict)

	def __post_init__(self):
		object.__setattr__(self, "block_dims", tuple(int(x) for x in self.block_dims))
		object.__setattr__(self, "mu", tuple(Fraction(x) for x in self.mu))
		lam = tuple(Fraction(x) for x in self.lambda_)
		object.__setattr__(self, "lambda_", lam)
		object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))
		object.__setattr__(self, "nu", {int(a): int(b) for a, b in dict(self.nu).items()})
		object.__setattr__(self, "crosscap_signs", {int(a): int(b) for a, b in dict(self.crosscap_signs).items()})

	def lam(self, i: int) -> Fraction:
		"""lambda_i for every idempotent (mu_i^2 on block indices)."""
		return self.mu[i] ** 2 if i < self.k else self.lambda_[i - self.k]

	@property
	def fixed(self) -> list[int]:
		return [i for i in range(self.m) if self.sigma[i] == i]

	@property
	def fixed_blocks(self) -> list[int]:
		return [i for i in self.fixed if i < self.k]

	@property
	def fixed_free(self) -> list[int]:
		return [i for i in self.fixed if i >= self.k]

	@property
	def p(self) -> int:
		return len(self.fixed_free)

	def to_json(self) -> dict:
		return {
			"m": self.m, "k": self.k, "block_dims": list(self.block_dims),
			"mu": [str(x) for x in self.mu], "lambda": [str(x) for x in self.lambda_],
			"sigma": list(self.sigma),
			"nu": {str(a): b for a, b in sorted(self.nu.items())},
			"crosscap_signs": {str(a): b for a, b in sorted(self.crosscap_signs.items())},
		}

	@classmethod
	def from_json(cls, obj: dict) -> "SemisimpleModel":
		m, k = int(obj["m"]), int(obj["k"])
		lam = [Fraction(str(x)) for x in obj.get("lambda", [])]
		mu = [Fraction(str(x)) for x in obj["mu"]]
		if len(lam) == m:
			# full-length lambda: the block entries must equal mu^2, the rest are kept
			for i in range(k):
				if i < len(mu) and lam[i] != mu[i] ** 2:
					raise InvalidModelError(f"Cardy condition violated: lambda_{i} != mu_{i}^2")
			lam = lam[k:]
		return cls(m, k, obj["block_dims"], mu, lam, obj.get("sigma", list(range(m))),
			obj.get("nu", {}), obj.get("crosscap_signs", {}))

	def dumps(self) -> str:
		return json.dumps(self.to_json(), sort_keys=True)


def validate_model(model: SemisimpleModel, require_star: bool = True) -> list[str]:
	"""Violated conditions as readable strings (empty when the model is valid)."""
	issues: list[str] = []
	m, k = model.m, model.k
	if m < 1 or not 0 <= k <= m:
		return [f"need 0 <= k <= m and m >= 1 (m={m}, k={k})"]
	if len(model.block_dims) != k:
		issues.append(f"block_dims has {len(model.block_dims)} entries, expected k={k}")
	if any(n < 1 for n in model.block_dims):
		issues.append("block sizes must be positive")
	if len(model.mu) != k:
		issues.append(f"mu has {len(model.mu)} entries, expected k={k}")
	if any(x == 0 for x in model.mu):
		issues.append("mu entries must be nonzero")
	if len(model.lambda_) != m - k:
		issues.append(f"lambda has {len(model.lambda_)} entries, expected m-k={m - k}")
	if any(x == 0 for x in model.lambda_):
		issues.append("lambda entries must be nonzero")
	if issues or not require_star:
		return issues
	sigma = model.sigma
	if sorted(sigma) != list(range(m)) or any(sigma[sigma[i]] != i for i in range(m)):
		return issues + ["sigma must be an involution of the idempotent indices"]
	for i in range(m):
		j = sigma[i]
		if (i < k) != (j < k):
			issues.append(f"sigma must preserve the block indices (sigma({i}) = {j})")
		elif i < j < k:
			if model.block_dims[i] != model.block_dims[j]:
				issues.append(f"swapped blocks {i},{j} have different sizes")
			if model.mu[i] != model.mu[j]:
				issues.append(f"swapped blocks {i},{j} have different mu")
		elif k <= i < j:
			if model.lam(i) != model.lam(j):
				issues.append(f"swapped idempotents {i},{j} have different lambda")
	if set(model.nu) != set(model.fixed_blocks):
		issues.append(f"nu must be given exactly on the fixed blocks {model.fixed_blocks}")
	for s, v in model.nu.items():
		if v not in (1, -1):
			issues.append(f"nu({s}) must be +1 or -1")
		elif v == -1 and s < k and model.block_dims[s] % 2:
			issues.append(f"nu({s}) = -1 needs an even block size")
	if model.crosscap_signs:
		if set(model.crosscap_signs) != set(model.fixed_free):
			issues.append(f"crosscap_signs must be given exactly on {model.fixed_free}")
		if any(v not in (1, -1) for v in model.crosscap_signs.values()):
			issues.append("crosscap signs must be +1 or -1")
	return issues


def rational_sqrt(q: Fraction) -> Fraction | None:
	q = Fraction(q)
	if q < 0:
		return None
	a, b = isqrt(q.numerator), isqrt(q.denominator)
	if a * a == q.numerator and b * b == q.denominator:
		return Fraction(a, b)
	return None


@dataclass(frozen=True)
class Crosscap:
	signs: tuple[tuple[int, int], ...]
	vector: tuple[Fraction, ...]


def enumerate_crosscaps(model: SemisimpleModel) -> list[Crosscap]:
	"""All 2^p crosscap elements, sign choices in lexicographic (+ first) order."""
	issues = validate_model(model)
	if issues:
		raise InvalidModelError("; ".join(issues))
	roots = {}
	for j in model.fixed_free:
		r = rational_sqrt(1 / model.lam(j))
		if r is None:
			raise FieldObstructionError(
				f"1/lambda_{j} = {1 / model.lam(j)} has no rational square root; the crosscap needs a field extension")
		roots[j] = r
	out = []
	free = model.fixed_free
	for signs in itertools.product((1, -1), repeat=len(free)):
		vec = [Fraction(0)] * model.m
		for s in model.fixed_blocks:
			vec[s] = model.nu[s] / model.mu[s]
		for j, sg in zip(free, signs):
			vec[j] = sg * roots[j]
		out.append(Crosscap(tuple(zip(free, signs)), tuple(vec)))
	return out


def block_basis(model: SemisimpleModel) -> list[tuple[int, int, int]]:
	return [(s, i, j) for s in range(model.k) for i in range(model.block_dims[s]) for j in range(model.block_dims[s])]


def _star_on_block(model: SemisimpleModel, s: int, i: int, j: int) -> tuple[int, int, int, int]:
	"""Image of E_{s,i,j} under the star as (sign, block, row, col)."""
	t = model.sigma[s]
	if t != s or model.nu.get(s, 1) == 1:
		return 1, t, j, i
	r = model.block_dims[s] // 2
	eps_i, eps_j = i // r, j // r
	flip = lambda x: (x + r) % (2 * r)
	return (-1) ** (eps_i + eps_j), s, flip(j), flip(i)


def realize_tensors(model: SemisimpleModel, crosscap: Crosscap | Mapping[int, int] | None = None) -> StructureAlgebra:
	"""Structure constants of the model in the basis e_i, then E_{s,i,j} (row-major per block)."""
	issues = validate_model(model)
	if issues:
		raise InvalidModelError("; ".join(issues))
	choices = enumerate_crosscaps(model)
	if crosscap is None:
		signs = model.crosscap_signs or {j: 1 for j in model.fixed_free}
		crosscap = next(c for c in choices if dict(c.signs) == dict(signs))
	elif not isinstance(crosscap, Crosscap):
		crosscap = next(c for c in choices if dict(c.signs) == dict(crosscap))
	m = model.m
	basis = block_basis(model)
	index = {b: n for n, b in enumerate(basis)}
	db = len(basis)
	c = np.zeros((m, m, m), dtype=object)
	for i in range(m):
		c[i, i, i] = 1
	mab = np.zeros((m, db, db), dtype=object)
	t = np.zeros((db, db, db), dtype=object)
	for (s, i, j), n in index.items():
		mab[s, n, n] = 1
		for jj in range(model.block_dims[s]):
			t[n, index[(s, j, jj)], index[(s, i, jj)]] = 1
	trace_a = [model.lam(i) for i in range(m)]
	trace_b = [model.mu[s] if i == j else Fraction(0) for (s, i, j) in basis]
	star_a = np.zeros((m, m), dtype=object)
	for i in range(m):
		star_a[i, model.sigma[i]] = 1
	star_b = np.zeros((db, db), dtype=object)
	for (s, i, j), n in index.items():
		sign, t_s, r, col = _star_on_block(model, s, i, j)
		star_b[n, index[(t_s, r, col)]] = sign
	unit_b = [1 if i == j else 0 for (s, i, j) in basis]
	labels_a = [f"e{i}" for i in range(m)]
	labels_b = [f"E{s}:{i},{j}" for (s, i, j) in basis]
	return from_constants(c, mab, t, trace_a, trace_b, star_a, star_b, [1] * m, unit_b, list(crosscap.vector),
		labels_a, labels_b, description="semisimple model")


def twisted_casimir_expected(model: SemisimpleModel) -> list[Fraction]:
	"""Coefficients of sum over fixed i of e_i / lambda_i."""
	return [1 / model.lam(i) if model.sigma[i] == i else Fraction(0) for i in range(model.m)]


@dataclass(frozen=True)
class ExtensionCount:
	total: int
	by_sigma: tuple[tuple[tuple[int, ...], int, int], ...]  # (sigma, star choices, crosscaps)


def _involutions(m: int, k: int):
	"""Involutions of range(m) preserving range(k)."""
	def rec(rest: list[int], acc: dict):
		if not rest:
			yield tuple(acc[i] for i in range(m))
			return
		x, others = rest[0], rest[1:]
		yield from rec(others, {**acc, x: x})
		for y in others:
			if (x < k) == (y < k):
				remaining = [z for z in others if z != y]
				yield from rec(remaining, {**acc, x: y, y: x})
	yield from rec(list(range(m)), {})


def count_extensions(model: SemisimpleModel) -> ExtensionCount:
	"""Number of (star, crosscap) choices extending the unstarred model, counted over C."""
	issues = validate_model(model, require_star=False)
	if issues:
		raise InvalidModelError("; ".join(issues))
	rows = []
	total = 0
	for sigma in _involutions(model.m, model.k):
		trial = SemisimpleModel(model.m, model.k, model.block_dims, model.mu, model.lambda_, sigma,
			{s: 1 for s in range(model.k) if sigma[s] == s})
		if validate_model(trial):
			continue
		stars = 1
		for s in trial.fixed_blocks:
			stars *= 2 if model.block_dims[s] % 2 == 0 else 1
		caps = 2 ** trial.p
		rows.append((sigma, stars, caps))
		total += stars * caps
	return ExtensionCount(total, tuple(rows))


def random_model(rng: random.Random, max_m: int = 4, max_block: int = 2) -> SemisimpleModel:
	"""A random valid model whose crosscaps are all rational."""
	def nonzero_rational():
		return Fraction(rng.choice([-3, -2, -1, 1, 2, 3, 5]), rng.choice([1, 2, 3]))

	def square_rational():
		return Fraction(rng.randint(1, 4), rng.randint(1, 3)) ** 2

	m = rng.randint(1, max_m)
	k = rng.randint(0, m)
	# pair up indices within blocks and within the rest
	sigma = list(range(m))
	for lo, hi in ((0, k), (k, m)):
		idx = list(range(lo, hi))
		rng.shuffle(idx)
		while len(idx) >= 2 and rng.random() < 0.5:
			a, b = idx.pop(), idx.pop()
			sigma[a], sigma[b] = b, a
	dims = [0] * k
	mu = [Fraction(0)] * k
	for s in range(k):
		t = sigma[s]
		if t < s:
			dims[s], mu[s] = dims[t], mu[t]
		else:
			dims[s], mu[s] = rng.randint(1, max_block), nonzero_rational()
	lam = [Fraction(0)] * m
	for i in range(k, m):
		j = sigma[i]
		if j < i:
			lam[i] = lam[j]
		elif j == i:
			lam[i] = square_rational()
		else:
			lam[i] = nonzero_rational()
	nu = {}
	for s in range(k):
		if sigma[s] == s:
			nu[s] = rng.choice([1, -1]) if dims[s] % 2 == 0 else 1
	return SemisimpleModel(m, k, dims, mu, lam[k:], sigma, nu)
