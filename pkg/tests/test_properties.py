"""Property-based checks over random permutations, elements and models."""
import random
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from kleintft import exact
from kleintft.algebra import AlgebraElement
from kleintft.correlator import SurfaceType, evaluate, surface_mu
from kleintft.dihedral import DihedralDiagram, dihedral_diagram
from kleintft.formats import parse_boundary, parse_dihedral, parse_partition
from kleintft.permgroup import Permutation
from kleintft.relations import crosscap_axioms, verify_relations
from kleintft.semisimple import enumerate_crosscaps, random_model, realize_tensors

from conftest import alg_of

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
perm5 = st.permutations(range(5)).map(lambda p: Permutation(tuple(p)))


def elements(n):
	alg = alg_of(n)
	return st.builds(lambda a, b: AlgebraElement(dict(enumerate(a)), dict(enumerate(b))),
		st.lists(fractions, min_size=alg.dim_a, max_size=alg.dim_a),
		st.lists(fractions, min_size=alg.dim_b, max_size=alg.dim_b))


@given(perm5, perm5, perm5)
def test_permutation_group_laws(p, q, r):
	assert (p * q) * r == p * (q * r)
	assert p * p.inverse() == Permutation.identity(5)
	assert (p * q).cycle_type() == (q * p).cycle_type()


@given(st.lists(st.integers(1, 9), min_size=1, max_size=6))
def test_partition_text_round_trip(parts):
	p = parse_partition(",".join(map(str, parts)))
	assert parse_partition(str(p)) == p
	assert sum(p.parts) == sum(parts)


@given(st.permutations(range(6)), st.permutations(range(6)))
def test_diagram_text_and_star(a, b):
	ident = Permutation(tuple(range(6)))
	def involution(p):
		img = list(range(6))
		for x, y in zip(p[0::2], p[1::2]):
			if x % 2:
				img[x], img[y] = y, x
		return Permutation(tuple(img))
	s1, s2 = involution(a), involution(b)
	assert s1 * s1 == ident
	d = dihedral_diagram(s1, s2)
	assert d.n == 6
	assert parse_dihedral(str(d)) == d
	assert DihedralDiagram.from_json(d.to_json()) == d
	assert d.star().star() == d
	assert dihedral_diagram(s2, s1) == d.star()


@settings(max_examples=40, deadline=None)
@given(elements(3), elements(3), elements(3))
def test_algebra_axioms_on_random_elements(x, y, z):
	alg = alg_of(3)
	m = alg.multiply
	assert m(m(x, y), z) == m(x, m(y, z))
	assert alg.pair(m(x, y), z) == alg.pair(x, m(y, z))
	assert alg.star(m(x, y)) == m(alg.star(y), alg.star(x))
	assert alg.pair(alg.star(x), alg.star(y)) == alg.pair(x, y)
	assert m(alg.unit_a, x) == x


@settings(max_examples=40, deadline=None)
@given(elements(3), elements(3))
def test_phi_is_a_homomorphism(x, y):
	alg = alg_of(3)
	xa, ya = AlgebraElement(x.a), AlgebraElement(y.a)
	assert alg.phi(alg.multiply(xa, ya)) == alg.multiply(alg.phi(xa), alg.phi(ya))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=3), st.sampled_from([(0, True), (2, True), (1, False), (3, False)]))
def test_interior_order_irrelevant(idx, genus):
	alg = alg_of(3)
	xs = [AlgebraElement.basis_a(i) for i in idx]
	v = evaluate(alg, genus[0], genus[1], xs)
	assert evaluate(alg, genus[0], genus[1], xs[::-1]) == v
	assert v >= 0


surfaces = st.builds(lambda g, o, m, b: SurfaceType(2 * g if o else g + 1, o, m, tuple(b)),
	st.integers(0, 3), st.booleans(), st.integers(0, 4), st.lists(st.integers(1, 4), max_size=3))


@given(st.lists(surfaces, max_size=4))
def test_mu_is_additive(parts):
	assert surface_mu(parts) == sum((p.mu() for p in parts), Fraction(0))
	for p in parts:
		assert 2 * p.mu() == 2 * p.doubled_genus + 2 * p.m + 2 * len(p.boundary) + sum(p.boundary) - 4


@given(st.lists(st.lists(st.integers(0, 9), min_size=1, max_size=3), max_size=3))
def test_boundary_text_round_trip(blocks):
	text = ";".join("|".join(f"#{i}" for i in b) for b in blocks)
	assert parse_boundary(text) == [[f"#{i}" for i in b] for b in blocks]


@given(st.lists(fractions, min_size=12, max_size=12))
def test_sparse_round_trip(vals):
	arr = np.array(vals, dtype=object).reshape(2, 3, 2)
	back = exact.from_sparse(arr.shape, exact.sparse_entries(arr))
	assert (back == arr).all()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_semisimple_models(seed):
	m = random_model(random.Random(seed), max_m=3)
	caps = enumerate_crosscaps(m)
	assert len(caps) == 2 ** m.p
	alg = realize_tensors(m, caps[-1])
	assert verify_relations(alg).passed
	assert crosscap_axioms(alg).passed
