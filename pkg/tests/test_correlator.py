import itertools
import random
from fractions import Fraction
from math import factorial

import pytest

import brute
from kleintft import exact
from kleintft.algebra import AlgebraElement
from kleintft.correlator import (RELATION_NAMES, SurfaceType, TrivialSurface, correlator, evaluate,
	make_query, relation_templates, surface_mu, trivial_arity, trivial_surface_value, trivial_via_correlator,
	verify_cut_relations)

from conftest import alg_of

ea, eb = AlgebraElement.basis_a, AlgebraElement.basis_b


def test_mu_examples():
	assert SurfaceType(0, True).mu() == -2
	assert SurfaceType(0, True, 3).mu() == 1
	assert SurfaceType(2, True).mu() == 0
	assert SurfaceType(2, False).mu() == 0
	assert SurfaceType(1, False, 1).mu() == 0
	assert SurfaceType(0, True, 0, (2,)).mu() == 0
	assert SurfaceType(0, True, 1, (1,)).mu() == Fraction(1, 2)


def test_mu_additive():
	parts = [SurfaceType(0, True, 2), SurfaceType(1, False, 0, (1, 3)), SurfaceType(4, True)]
	assert surface_mu(parts) == sum(p.mu() for p in parts)
	assert surface_mu([]) == 0


def test_surface_validation():
	for bad in [(1, True), (0, False), (-2, True)]:
		with pytest.raises(ValueError):
			SurfaceType(*bad)
	with pytest.raises(ValueError):
		SurfaceType(0, True, 0, (0,))
	assert SurfaceType(0, True, 0, (3, 1)).boundary == (1, 3)


def test_query_validation():
	with pytest.raises(ValueError):
		make_query(0, True, [eb(0)])
	with pytest.raises(ValueError):
		make_query(0, True, [], [[ea(0)]])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trivial_surfaces_two_routes(n):
	alg = alg_of(n)
	for kind in TrivialSurface:
		na, nb = trivial_arity(kind)
		for args in itertools.product(*([range(alg.dim_a)] * na + [range(alg.dim_b)] * nb)):
			assert trivial_surface_value(alg, kind, args) == trivial_via_correlator(alg, kind, args)


@pytest.mark.parametrize("n", range(1, 6))
def test_landmarks(n):
	alg = alg_of(n)
	assert trivial_surface_value(alg, TrivialSurface.SPHERE) == Fraction(1, factorial(n))
	assert trivial_surface_value(alg, TrivialSurface.TORUS) == brute.partition_count(n)
	assert trivial_surface_value(alg, TrivialSurface.KLEIN_BOTTLE) == brute.partition_count(n)


def test_trivial_arity_errors():
	with pytest.raises(ValueError):
		trivial_surface_value(alg_of(2), TrivialSurface.SPHERE_TWO_POINTS, [0])


def _random_query(alg, rng, m, blocks):
	xs = [ea(rng.randrange(alg.dim_a)) for _ in range(m)]
	blks = [[eb(rng.randrange(alg.dim_b)) for _ in range(k)] for k in blocks]
	return xs, blks


@pytest.mark.parametrize("n", [2, 3])
def test_symmetries(n):
	alg = alg_of(n)
	rng = random.Random(n)
	for _ in range(60):
		g2, o = rng.choice([(0, True), (2, True), (1, False), (2, False)])
		xs, blks = _random_query(alg, rng, rng.randrange(3), [rng.randrange(1, 4) for _ in range(rng.randrange(3))])
		v = evaluate(alg, g2, o, xs, blks)
		assert evaluate(alg, g2, o, xs[::-1], blks) == v
		assert evaluate(alg, g2, o, xs, blks[::-1]) == v
		rotated = [b[1:] + b[:1] for b in blks]
		assert evaluate(alg, g2, o, xs, rotated) == v
		# reversing a contour's orientation stars its points
		flipped = [[alg.star(y) for y in reversed(b)] for b in blks]
		if o:
			assert evaluate(alg, g2, o, [alg.star(x) for x in xs], flipped) == v
		if blks:
			one = [flipped[0]] + blks[1:]
			if not o:
				assert evaluate(alg, g2, o, xs, one) == v


def test_orientable_values_ignore_crosscap():
	alg = alg_of(3)
	poisoned = alg.replace(D=exact.zeros(alg.dim_a))
	rng = random.Random(7)
	for _ in range(40):
		g2 = rng.choice([0, 2, 4])
		xs, blks = _random_query(alg, rng, rng.randrange(3), [rng.randrange(1, 3) for _ in range(rng.randrange(3))])
		assert evaluate(poisoned, g2, True, xs, blks) == evaluate(alg, g2, True, xs, blks)
	assert evaluate(poisoned, 1, False) == 0 != evaluate(alg, 1, False)


def test_zeroed_crosscap_breaks_cut_relation():
	alg = alg_of(2)
	poisoned = alg.replace(D=exact.zeros(alg.dim_a))
	report = verify_cut_relations(poisoned, relations=("3",))
	assert not report.passed
	assert verify_cut_relations(alg, relations=("3",)).passed


def test_query_matches_direct_evaluation():
	alg = alg_of(3)
	rng = random.Random(3)
	for _ in range(20):
		xs, blks = _random_query(alg, rng, rng.randrange(3), [rng.randrange(1, 3) for _ in range(rng.randrange(3))])
		q = make_query(1, False, xs, blks)
		assert q.surface.m == len(xs)
		assert correlator(alg, q) == evaluate(alg, 1, False, xs, blks)


def test_linearity():
	alg = alg_of(3)
	x = AlgebraElement({0: 2, 1: Fraction(-1, 3)})
	y = AlgebraElement({}, {0: 1, 3: 5})
	lhs = evaluate(alg, 2, True, [x], [[y]])
	rhs = sum(c * d * evaluate(alg, 2, True, [ea(i)], [[eb(j)]]) for i, c in x.a.items() for j, d in y.b.items())
	assert lhs == rhs


def test_closed_values_match_raw_counts():
	alg = alg_of(3)
	g = alg.group
	for g2, o in [(0, True), (2, True), (1, False), (3, False)]:
		for cls in itertools.combinations_with_replacement(range(alg.dim_a), 2):
			want = brute.closed_count(3, g2, o, [g.classes[c].cycle_type.parts for c in cls])
			assert evaluate(alg, g2, o, [ea(c) for c in cls]) == want


def test_templates_cover_relations():
	names = {t.relation for t in relation_templates()}
	assert names == set(RELATION_NAMES)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cut_relations_exhaustive(n):
	report = verify_cut_relations(alg_of(n))
	assert report.passed, str(report)
	assert all(r.exhaustive for r in report.results.values())
	assert report.results["1"].degenerate_instances > 0


def test_cut_relations_sampled_n4():
	report = verify_cut_relations(alg_of(4), n_exhaustive_dim=250, samples=100, seed=5)
	assert report.passed, str(report)
	assert any(not r.exhaustive for r in report.results.values())
