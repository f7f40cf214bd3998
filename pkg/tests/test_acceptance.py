"""One test per acceptance criterion; all comparisons are exact."""
import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import factorial

import brute
from kleintft.algebra import AlgebraElement, from_group
from kleintft.correlator import RELATION_NAMES, evaluate, verify_cut_relations
from kleintft.dihedral import dihedral_classes, dihedral_diagram
from kleintft.oracle import count_closed, count_disc_mixed, count_polygon
from kleintft.permgroup import Permutation, symmetric_group
from kleintft.relations import cardy_axiom, crosscap_axioms, verify_relations
from kleintft.semisimple import SemisimpleModel, enumerate_crosscaps, random_model, realize_tensors

from conftest import alg_of, sym

ea = AlgebraElement.basis_a


def test_criterion1_relation_suite():
	start = time.perf_counter()
	for n in range(1, 6):
		alg = from_group(symmetric_group(n))
		report = verify_relations(alg)
		assert report.passed, f"n={n}\n{report}"
	assert time.perf_counter() - start < 300


def test_criterion2_crosscap_axioms():
	for n in range(1, 6):
		alg = alg_of(n)
		g = alg.group
		squares = brute.sum_of_squares(n)["a"]
		want = {i: squares.get(g.elements[c.representative].images, 0) for i, c in enumerate(g.classes)}
		assert alg.crosscap_element == AlgebraElement(want)
		report = crosscap_axioms(alg)
		assert report.passed, f"n={n}\n{report}"


def test_criterion3_oracle_equivalence():
	for n in (2, 3, 4):
		alg = alg_of(n)
		g, d = alg.group, alg.pair_classes
		A, B = range(alg.dim_a), range(alg.dim_b)
		for i, j, k in itertools.product(A, A, A):
			assert alg.S[i, j, k] == count_closed(g, 0, True, [i, j, k]), (n, i, j, k)
		for i, j, k in itertools.product(B, B, B):
			assert alg.T[i, j, k] == count_polygon(g, d, [i, j, k]), (n, i, j, k)
		for i, j in itertools.product(A, B):
			assert alg.R[i, j] == count_disc_mixed(g, d, i, j), (n, i, j)


def test_criterion4_closed_hurwitz_numbers():
	genera = [(0, True), (2, True), (4, True), (1, False), (2, False), (3, False)]
	for n in (2, 3):
		alg = alg_of(n)
		k = alg.dim_a
		choices = [()] + [(i,) for i in range(k)] + list(itertools.product(range(k), repeat=2))
		for (g2, o), cls in itertools.product(genera, choices):
			value = evaluate(alg, g2, o, [ea(c) for c in cls])
			assert value == count_closed(alg.group, g2, o, cls), (n, g2, o, cls)


def test_criterion5_landmarks():
	a2 = alg_of(2)
	t = a2.labels_a.index("2")
	assert brute.closed_count(2, 0, True, [(2,), (2,)]) == Fraction(1, 2)
	assert evaluate(a2, 0, True, [ea(t), ea(t)]) == Fraction(1, 2)
	for n in range(1, 6):
		assert brute.closed_count(n, 0, True, []) == Fraction(1, factorial(n))
		assert evaluate(alg_of(n), 0, True) == Fraction(1, factorial(n))
	for n in range(1, 7):
		p = brute.partition_count(n)
		if n <= 4:
			assert brute.closed_count(n, 2, True, []) == p
			assert brute.closed_count(n, 2, False, []) == p
		alg = alg_of(n)
		assert evaluate(alg, 2, True) == p
		assert evaluate(alg, 2, False) == p


def test_criterion6_cut_relations():
	for n in (1, 2, 3):
		report = verify_cut_relations(alg_of(n))
		assert report.passed, f"n={n}\n{report}"
		assert all(r.exhaustive for r in report.results.values())
	report = verify_cut_relations(alg_of(4), n_exhaustive_dim=250, samples=600, seed=2024)
	assert report.passed, str(report)
	assert set(report.results) == set(RELATION_NAMES)
	assert all(r.instances >= 500 for r in report.results.values())


def test_criterion7_dihedral_classification():
	for n in range(1, 6):
		g = sym(n)
		d = dihedral_classes(g)
		orbits = brute.pair_orbits(n)
		diagrams = [dihedral_diagram(Permutation(a), Permutation(b)) for a, b in (next(iter(o)) for o in orbits)]
		assert len(set(diagrams)) == len(orbits) == len(d)
		for orb, diag in zip(orbits, diagrams):
			assert {dihedral_diagram(Permutation(a), Permutation(b)) for a, b in orb} == {diag}
			cls = d.classes[d.lookup[diag]]
			assert cls.size == len(orb)
		assert sum(c.size for c in d.classes) == len(brute.involutions(n)) ** 2
		for i, c in enumerate(d.classes):
			s = d.classes[d.star_index[i]]
			assert s.diagram == c.diagram.star() and s.nu == c.nu
			i1, i2 = c.diagram.boundary_types()
			assert c.diagram.star().boundary_types() == (i2, i1)
			r1, r2 = c.representative
			assert (g.elements[r1].cycle_type(), g.elements[r2].cycle_type()) == (i1, i2)


def test_criterion8_semisimple_round_trip():
	for seed in range(100):
		model = random_model(random.Random(seed), max_m=4, max_block=2)
		caps = enumerate_crosscaps(model)
		assert len(caps) == 2 ** model.p
		for cap in caps:
			alg = realize_tensors(model, cap)
			assert verify_relations(alg).passed, (seed, cap)
			assert crosscap_axioms(alg).passed, (seed, cap)
			assert cardy_axiom(alg).passed, (seed, cap)
	s1 = realize_tensors(SemisimpleModel(1, 1, [1], [1], [], [0], {0: 1}))
	ref = from_group(symmetric_group(1))
	for name, t in ref.tensors().items():
		assert t.shape == s1.tensors()[name].shape
		assert (t == s1.tensors()[name]).all(), name


def test_criterion9_deterministic_tables(tmp_path):
	outs = []
	for k in range(2):
		cmd = [sys.executable, "-m", "kleintft", "tables", "--n", "4", "--cache-dir", str(tmp_path / f"cold{k}")]
		r = subprocess.run(cmd, capture_output=True, check=True)
		outs.append(r.stdout)
	assert outs[0] == outs[1]
	assert len(outs[0]) > 1000
