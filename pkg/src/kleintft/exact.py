"""Exact rational tensor helpers built on numpy object arrays.

Tensors are kept as object arrays of ``Fraction``.  Heavy contractions are
done on an integer-scaled copy (Python ints stay exact and are far cheaper
than ``Fraction`` arithmetic), then rescaled.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable

import numpy as np


class SingularMatrixError(ValueError):
	"""Raised when an exact inverse is requested for a singular matrix."""


def fractions(arr) -> np.ndarray:
	"""Return a copy of ``arr`` as an object array of ``Fraction``."""
	a = np.asarray(arr, dtype=object)
	out = np.empty(a.shape, dtype=object)
	flat_in = a.reshape(-1)
	flat_out = out.reshape(-1)
	for i, v in enumerate(flat_in):
		flat_out[i] = Fraction(v)
	return out


def zeros(shape) -> np.ndarray:
	out = np.empty(shape, dtype=object)
	out.fill(Fraction(0))
	return out


def scaled(arr: np.ndarray) -> tuple[np.ndarray, int]:
	"""Split a Fraction array into (integer numerators, common denominator)."""
	flat = arr.reshape(-1)
	den = reduce(lcm, {Fraction(v).denominator for v in flat}, 1)
	nums = np.empty(arr.shape, dtype=object)
	nflat = nums.reshape(-1)
	for i, v in enumerate(flat):
		v = Fraction(v)
		nflat[i] = v.numerator * (den // v.denominator)
	return nums, den


def unscale(nums: np.ndarray, den: int) -> np.ndarray:
	out = np.empty(np.shape(nums), dtype=object)
	oflat = out.reshape(-1)
	for i, v in enumerate(np.asarray(nums, dtype=object).reshape(-1)):
		oflat[i] = Fraction(int(v), den)
	return out


def contract(subscripts: str, *arrays: np.ndarray) -> np.ndarray:
	"""Exact ``einsum`` over Fraction arrays."""
	parts = [scaled(a) for a in arrays]
	nums = np.einsum(subscripts, *[p[0] for p in parts], optimize=len(arrays) > 2)
	den = 1
	for _, d in parts:
		den *= d
	if np.ndim(nums) == 0:
		return Fraction(int(nums), den)
	return unscale(nums, den)


def inverse(matrix: np.ndarray) -> np.ndarray:
	"""Gauss-Jordan inverse over the rationals."""
	m = fractions(matrix)
	n = m.shape[0]
	if m.shape != (n, n):
		raise ValueError("inverse needs a square matrix")
	a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
	for col in range(n):
		piv = next((r for r in range(col, n) if a[r][col] != 0), None)
		if piv is None:
			raise SingularMatrixError(f"matrix is singular (column {col})")
		a[col], a[piv] = a[piv], a[col]
		p = a[col][col]
		a[col] = [v / p for v in a[col]]
		for r in range(n):
			if r != col and a[r][col] != 0:
				f = a[r][col]
				a[r] = [x - f * y for x, y in zip(a[r], a[col])]
	return fractions([row[n:] for row in a])


def first_mismatch(lhs: np.ndarray, rhs: np.ndarray) -> tuple[int, ...] | None:
	"""Index of the first entry where two arrays differ, or None."""
	if np.shape(lhs) != np.shape(rhs):
		raise ValueError(f"shape mismatch {np.shape(lhs)} vs {np.shape(rhs)}")
	diff = np.argwhere(np.asarray(lhs != rhs, dtype=bool))
	if len(diff) == 0:
		return None
	return tuple(int(i) for i in diff[0])


def fmt(q) -> str:
	"""Render a rational as ``p/q`` (or ``p`` when integral)."""
	return str(Fraction(q))


def parse(text: str) -> Fraction:
	return Fraction(text.strip())


def sparse_entries(arr: np.ndarray) -> list[list]:
	"""Nonzero entries as ``[i, j, ..., "p/q"]`` rows in lexicographic order."""
	out = []
	for idx in np.ndindex(*arr.shape):
		v = arr[idx]
		if v != 0:
			out.append([*map(int, idx), fmt(v)])
	return out


def from_sparse(shape: Iterable[int], entries: list[list]) -> np.ndarray:
	out = zeros(tuple(shape))
	for row in entries:
		*idx, v = row
		out[tuple(idx)] = parse(v)
	return out
