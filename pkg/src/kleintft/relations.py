"""Exact tensor identities characterizing structure algebras.

``verify_relations`` checks the tensor relations numbered (1)-(12) and
(14)-(16) (there is no relation 13); ``axiom_checks`` checks the Cardy and
crosscap axioms directly on algebra elements.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

import numpy as np

from . import exact
from .algebra import AlgebraElement, StructureAlgebra


@dataclass(frozen=True)
class RelationResult:
	name: str
	description: str
	passed: bool
	witness: tuple | None = None
	detail: str = ""

	def __str__(self) -> str:
		status = "PASS" if self.passed else "FAIL"
		line = f"[{status}] ({self.name}) {self.description}"
		if not self.passed:
			line += f"  witness={self.witness} {self.detail}".rstrip()
		return line


@dataclass
class RelationReport:
	results: list[RelationResult] = field(default_factory=list)

	@property
	def passed(self) -> bool:
		return all(r.passed for r in self.results)

	def failures(self) -> list[RelationResult]:
		return [r for r in self.results if not r.passed]

	def names(self) -> list[str]:
		return [r.name for r in self.results]

	def __getitem__(self, name: str) -> RelationResult:
		for r in self.results:
			if r.name == name:
				return r
		raise KeyError(name)

	def __str__(self) -> str:
		return "\n".join(str(r) for r in self.results)


def compare(name: str, description: str, lhs, rhs) -> RelationResult:
	lhs = np.asarray(lhs, dtype=object)
	rhs = np.asarray(rhs, dtype=object)
	if lhs.shape != rhs.shape:
		return RelationResult(name, description, False, None, f"shape {lhs.shape} vs {rhs.shape}")
	w = exact.first_mismatch(lhs, rhs)
	if w is None:
		return RelationResult(name, description, True)
	return RelationResult(name, description, False, w, f"lhs={lhs[w]} rhs={rhs[w]}")


def _nondegenerate(name: str, description: str, matrix: np.ndarray) -> RelationResult:
	try:
		exact.inverse(matrix)
	except exact.SingularMatrixError as e:
		return RelationResult(name, description, False, None, str(e))
	return RelationResult(name, description, True)


def _fully_symmetric(name: str, description: str, arr: np.ndarray) -> RelationResult:
	for perm in permutations(range(arr.ndim)):
		r = compare(name, description, arr, np.transpose(arr, perm))
		if not r.passed:
			return RelationResult(name, description, False, r.witness, f"axes {perm}: {r.detail}")
	return RelationResult(name, description, True)


def _cyclic(name: str, description: str, arr: np.ndarray) -> RelationResult:
	k = arr.ndim
	r = compare(name, description, arr, np.transpose(arr, list(range(1, k)) + [0]))
	return r


def _raised_both(alg: StructureAlgebra, part: str) -> np.ndarray:
	inv = alg.FA_inv if part == "A" else alg.FB_inv
	I = alg.I_A if part == "A" else alg.I_B
	return exact.contract("ix,xy,yj->ij", inv, I, inv)


def _checks(alg: StructureAlgebra) -> list[Callable[[], list[RelationResult]]]:
	u = exact.contract("i,ij->j", alg.D, alg.FA_inv)
	j_a = exact.contract("i,ij->j", alg.J_A, alg.FA_inv)
	j_b = exact.contract("i,ij->j", alg.J_B, alg.FB_inv)
	sa, sb = alg.star_a_matrix, alg.star_b_matrix
	phi = alg.phi_matrix  # R with the B index raised
	r_up_a = exact.contract("xb,xa->ba", alg.R, alg.FA_inv)  # R with the A index raised

	def r1():
		return [
			compare("1a", "F_A symmetric", alg.F_A, alg.F_A.T),
			_nondegenerate("1b", "F_A nondegenerate", alg.F_A),
			compare("1c", "F_B symmetric", alg.F_B, alg.F_B.T),
			_nondegenerate("1d", "F_B nondegenerate", alg.F_B),
		]

	def r2():
		s4 = exact.contract("ijx,xkl->ijkl", alg.S_up, alg.S)
		return [_fully_symmetric("2a", "S symmetric", alg.S),
			_fully_symmetric("2b", "four-point S contraction symmetric", s4)]

	def r3():
		t4 = exact.contract("ijx,xkl->ijkl", alg.T_up, alg.T)
		return [_cyclic("3a", "T cyclically invariant", alg.T),
			_cyclic("3b", "four-point T contraction cyclically invariant", t4)]

	def r4():
		return [compare("4", "R3 = R (B raised) . T", alg.R3, exact.contract("ax,xij->aij", phi, alg.T))]

	def r5():
		lhs = exact.contract("bx,xij->bij", r_up_a, alg.S)
		rhs = exact.contract("ix,jy,xyb->bij", phi, phi, alg.T)
		return [compare("5", "A-products map to B-products through R", lhs, rhs)]

	def r6():
		return [compare("6", "R3 symmetric in its B indices", alg.R3, np.transpose(alg.R3, (0, 2, 1)))]

	def r7():
		lhs = exact.contract("xi,xy,yj->ij", alg.R, alg.FA_inv, alg.R)
		rhs = exact.contract("ixy,yjx->ij", alg.T_up, alg.T_up)
		return [compare("7", "Cardy identity R F^-1 R = trace of T T", lhs, rhs)]

	def r8():
		return [compare("8a", "star involutive on A", exact.contract("ix,xj->ij", sa, alg.I_A), alg.F_A),
			compare("8b", "star involutive on B", exact.contract("ix,xj->ij", sb, alg.I_B), alg.F_B)]

	def r9():
		return [compare("9a", "I_A symmetric", alg.I_A, alg.I_A.T),
			compare("9b", "I_B symmetric", alg.I_B, alg.I_B.T),
			compare("9c", "(a*, b) = (a, b*)", exact.contract("ax,xb->ab", sa, alg.R),
				exact.contract("by,ay->ab", sb, alg.R))]

	def r10():
		lhs_s = exact.contract("kz,zyx->kyx", sa, alg.S)
		lhs_s = exact.contract("jy,kyx->jkx", sa, lhs_s)
		lhs_s = exact.contract("ix,jkx->ijk", sa, lhs_s)
		lhs_t = exact.contract("kz,zyx->kyx", sb, alg.T)
		lhs_t = exact.contract("jy,kyx->jkx", sb, lhs_t)
		lhs_t = exact.contract("ix,jkx->ijk", sb, lhs_t)
		return [compare("10a", "star antiautomorphism on S", lhs_s, alg.S),
			compare("10b", "star antiautomorphism on T", lhs_t, alg.T)]

	def r11():
		lhs = exact.contract("ijk,j,k->i", alg.S, u, u)
		rhs = exact.contract("ijk,jk->i", alg.S, _raised_both(alg, "A"))
		return [compare("11", "U^2 = twisted A-Casimir", lhs, rhs)]

	def r12():
		lhs = exact.contract("x,xb->b", u, alg.R)
		rhs = exact.contract("xy,xyb->b", _raised_both(alg, "B"), alg.T)
		return [compare("12", "(U, b) = (twisted B-Casimir, b)", lhs, rhs)]

	def r14():
		lhs = exact.contract("x,xij->ij", u, alg.S)
		rhs = exact.contract("ix,y,xyj->ij", sa, u, alg.S)
		return [compare("14", "(a U)* = a U", lhs, rhs)]

	def r15():
		return [compare("15a", "1_A is a unit on A", exact.contract("x,xij->ij", j_a, alg.S), alg.F_A),
			compare("15b", "1_A is a unit on B", exact.contract("x,xij->ij", j_a, alg.R3), alg.F_B)]

	def r16():
		return [compare("16", "1_B is a unit on B", exact.contract("x,xij->ij", j_b, alg.T), alg.F_B)]

	return [r1, r2, r3, r4, r5, r6, r7, r8, r9, r10, r11, r12, r14, r15, r16]


def verify_relations(alg: StructureAlgebra, threads: int = 1) -> RelationReport:
	"""Evaluate every tensor relation exactly; failures carry a witness index."""
	try:
		alg.FA_inv
		alg.FB_inv
	except exact.SingularMatrixError as e:
		return RelationReport([RelationResult("1", "forms nondegenerate", False, None, str(e))])
	checks = _checks(alg)
	if threads > 1:
		with ThreadPoolExecutor(max_workers=threads) as pool:
			groups = list(pool.map(lambda f: f(), checks))
	else:
		groups = [f() for f in checks]
	return RelationReport([r for g in groups for r in g])


def _elt_equal(name: str, description: str, x: AlgebraElement, y: AlgebraElement, witness=None) -> RelationResult:
	if x == y:
		return RelationResult(name, description, True)
	return RelationResult(name, description, False, witness, f"{x} != {y}")


def crosscap_axioms(alg: StructureAlgebra) -> RelationReport:
	"""U^2 = K_{A,*}; (U, b) = (K_{B,*}, b) for basis b; (a U)* = a U for basis a."""
	U = alg.crosscap_element
	out = [_elt_equal("U2", "U^2 = K_{A,*}", alg.multiply(U, U), alg.casimir("A", twisted=True))]
	kbs = alg.casimir("B", twisted=True)
	bad = next((j for j in range(alg.dim_b)
		if alg.pair(U, AlgebraElement.basis_b(j)) != alg.pair(kbs, AlgebraElement.basis_b(j))), None)
	out.append(RelationResult("U-B", "(U, b) = (K_{B,*}, b)", bad is None, None if bad is None else (bad,)))
	bad = None
	for i in range(alg.dim_a):
		au = alg.multiply(AlgebraElement.basis_a(i), U)
		if alg.star(au) != au:
			bad = (i,)
			break
	out.append(RelationResult("aU*", "(a U)* = a U", bad is None, bad))
	return RelationReport(out)


def cardy_axiom(alg: StructureAlgebra) -> RelationResult:
	"""(V_{K_B}(b1), b2) against the A-dual sum over R, on all basis pairs."""
	lhs = exact.contract("ix,xj->ij", alg.V_KB_matrix, alg.F_B)
	rhs = exact.contract("xi,xy,yj->ij", alg.R, alg.FA_inv, alg.R)
	return compare("cardy", "(V_KB(b1), b2) = (K^_A, b1 (x) b2)", lhs, rhs)
