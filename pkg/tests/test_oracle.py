import itertools
from fractions import Fraction

import pytest

import brute
from kleintft.dihedral import dihedral_classes
from kleintft.oracle import (InfeasibleError, closed_result, commutator_distribution, count_closed,
	count_disc_mixed, count_polygon, polygon_result, square_distribution)

from conftest import alg_of, sym


def _types(g, classes):
	return [g.classes[c].cycle_type.parts for c in classes]


def _orbit(g, pc):
	rep = tuple(g.elements[i].images for i in pc.representative)
	return next(o for o in brute.pair_orbits(len(rep[0])) if rep in o)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("g2,orientable", [(0, True), (2, True), (1, False), (2, False)])
def test_closed_count_against_raw_tuples(n, g2, orientable):
	g = sym(n)
	k = len(g.classes)
	cases = [()] + [(i,) for i in range(k)] + list(itertools.combinations_with_replacement(range(k), 2))
	if n == 2:
		cases += list(itertools.product(range(k), repeat=3))
	for cls in cases:
		if g2 + len(cls) > 4:
			continue
		want = brute.closed_count(n, g2, orientable, _types(g, cls))
		assert count_closed(g, g2, orientable, cls) == want


@pytest.mark.parametrize("g2,orientable,cls", [(0, True, (1, 1)), (2, True, (2,)), (3, False, ()),
	(4, True, ()), (1, False, (1, 2)), (2, False, (0, 2))])
def test_naive_and_fast_paths_agree(g2, orientable, cls):
	g = sym(3)
	a = closed_result(g, g2, orientable, cls, method="naive")
	b = closed_result(g, g2, orientable, cls, method="fast")
	assert a == b


def test_distributions():
	g = sym(3)
	comm = commutator_distribution(g)
	assert sum(comm) == 36
	# commutators of S_3 land in A_3: identity 18 times (|G| * #classes)
	assert comm[0] == 18
	sq = square_distribution(g)
	assert sum(sq) == 6 and sq[0] == 4


def test_polygon_paths_and_raw_tuples():
	for n in (2, 3):
		g = sym(n)
		d = dihedral_classes(g)
		orbits = [_orbit(g, pc) for pc in d.classes]
		for b in (1, 2, 3):
			for corners in itertools.product(range(len(d)), repeat=b):
				want = brute.polygon_count(n, [orbits[c] for c in corners])
				assert count_polygon(g, d, corners, method="naive") == want
				assert count_polygon(g, d, corners) == want


def test_disc_mixed_raw_tuples():
	for n in (2, 3):
		g = sym(n)
		d = dihedral_classes(g)
		for a, c in enumerate(g.classes):
			cls = [g.elements[i].images for i in c.members]
			for b, pc in enumerate(d.classes):
				assert count_disc_mixed(g, d, a, b) == brute.disc_mixed_count(n, cls, _orbit(g, pc))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tensor_equivalence(n):
	alg = alg_of(n)
	g, d = alg.group, alg.pair_classes
	A, B = range(alg.dim_a), range(alg.dim_b)
	for i, j, k in itertools.product(A, A, A):
		assert alg.S[i, j, k] == count_closed(g, 0, True, [i, j, k])
	for i, j, k in itertools.product(B, B, B):
		assert alg.T[i, j, k] == count_polygon(g, d, [i, j, k])
	for i, j in itertools.product(A, B):
		assert alg.R[i, j] == count_disc_mixed(g, d, i, j)
	for i in A:
		assert alg.D[i] == count_closed(g, 1, False, [i])


def test_infeasible_and_bad_inputs():
	g = sym(4)
	with pytest.raises(InfeasibleError):
		closed_result(g, 4, True, (), method="naive", cap=1000)
	with pytest.raises(InfeasibleError):
		polygon_result(g, dihedral_classes(g), [0] * 6, method="naive", cap=100)
	with pytest.raises(ValueError):
		count_closed(g, 1, True, ())
	with pytest.raises(ValueError):
		count_closed(g, 0, True, [99])
	with pytest.raises(ValueError):
		count_closed(g, 0, True, [], method="bogus")
	with pytest.raises(ValueError):
		count_polygon(g, dihedral_classes(g), [])


def test_counts_are_homomorphisms_over_order():
	g = sym(3)
	r = closed_result(g, 2, True, ())
	assert r.count == Fraction(r.homomorphisms, 6)
	assert r.count == 3
