import random
from fractions import Fraction

import pytest

from kleintft.algebra import AlgebraElement
from kleintft.correlator import verify_cut_relations
from kleintft.relations import cardy_axiom, crosscap_axioms, verify_relations
from kleintft.semisimple import (FieldObstructionError, InvalidModelError, SemisimpleModel, count_extensions,
	enumerate_crosscaps, random_model, rational_sqrt, realize_tensors, twisted_casimir_expected, validate_model)

from conftest import alg_of


def model(m, k, dims, mu, lam, sigma=None, nu=None, signs=None):
	sigma = list(range(m)) if sigma is None else sigma
	if nu is None:
		nu = {s: 1 for s in range(k) if sigma[s] == s}
	return SemisimpleModel(m, k, dims, mu, lam, sigma, nu, signs or {})


def test_rational_sqrt():
	assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
	assert rational_sqrt(Fraction(2)) is None
	assert rational_sqrt(Fraction(-1)) is None
	assert rational_sqrt(Fraction(0)) == 0


def test_trivial_group_model_matches_group_algebra():
	alg = realize_tensors(model(1, 1, [1], [1], []))
	ref = alg_of(1)
	for name, t in alg.tensors().items():
		assert (t == ref.tensors()[name]).all(), name


def test_crosscap_enumeration():
	m = model(3, 1, [2], [Fraction(1, 2)], [Fraction(4), Fraction(1, 9)])
	caps = enumerate_crosscaps(m)
	assert len(caps) == 2 ** m.p == 4
	assert len({c.vector for c in caps}) == 4
	assert caps[0].vector == (Fraction(2), Fraction(1, 2), Fraction(3))
	assert caps[-1].vector == (Fraction(2), Fraction(-1, 2), Fraction(-3))


def test_symplectic_crosscap_sign():
	m = model(1, 1, [2], [3], [], nu={0: -1})
	assert enumerate_crosscaps(m)[0].vector == (Fraction(-1, 3),)


def test_field_obstruction():
	with pytest.raises(FieldObstructionError):
		enumerate_crosscaps(model(1, 0, [], [], [2]))
	with pytest.raises(FieldObstructionError):
		enumerate_crosscaps(model(1, 0, [], [], [-1]))
	# swapped pairs need no square root
	assert len(enumerate_crosscaps(model(2, 0, [], [], [2, 2], sigma=[1, 0]))) == 1


@pytest.mark.parametrize("bad,needle", [
	(model(2, 0, [], [], [1, 1], sigma=[0, 0]), "involution"),
	(model(2, 1, [1], [1], [1], sigma=[1, 0], nu={}), "preserve"),
	(model(1, 1, [3], [1], [], nu={0: -1}), "even"),
	(model(2, 2, [1, 2], [1, 1], [], sigma=[1, 0], nu={}), "sizes"),
	(model(2, 2, [1, 1], [1, 2], [], sigma=[1, 0], nu={}), "mu"),
	(model(2, 0, [], [], [1, 4], sigma=[1, 0]), "lambda"),
	(model(1, 1, [1], [1], [], nu={}), "fixed blocks"),
	(model(1, 1, [1], [0], []), "nonzero"),
	(model(1, 0, [], [], [1], signs={0: 2}), "+1 or -1"),
])
def test_validation_messages(bad, needle):
	issues = validate_model(bad)
	assert any(needle in s for s in issues), issues
	with pytest.raises(InvalidModelError):
		realize_tensors(bad)


def test_json_round_trip():
	m = model(3, 1, [2], [Fraction(-2, 3)], [Fraction(4), Fraction(4)], sigma=[0, 2, 1], nu={0: -1})
	assert SemisimpleModel.from_json(m.to_json()) == m
	obj = m.to_json()
	obj["lambda"] = ["4/9", "4", "4"]
	assert SemisimpleModel.from_json(obj) == m
	obj["lambda"] = ["1", "4", "4"]
	with pytest.raises(InvalidModelError):
		SemisimpleModel.from_json(obj)


@pytest.mark.parametrize("m,expected", [
	(model(1, 0, [], [], [1]), 2),
	(model(1, 1, [2], [1], []), 2),
	(model(1, 1, [3], [1], []), 1),
	(model(2, 0, [], [], [1, 1]), 5),
	(model(2, 0, [], [], [1, 4]), 4),
	(model(2, 2, [1, 1], [1, 1], []), 2),
	(model(2, 2, [2, 2], [1, 1], []), 5),
	(model(2, 1, [1], [1], [2]), 2),
])
def test_extension_counts(m, expected):
	assert count_extensions(m).total == expected


def test_extension_count_rows():
	rows = count_extensions(model(2, 0, [], [], [1, 1])).by_sigma
	assert sorted(rows) == [((0, 1), 1, 4), ((1, 0), 1, 1)]


def test_twisted_casimir():
	m = model(4, 2, [1, 2], [2, Fraction(1, 2)], [1, 1], sigma=[0, 1, 3, 2], nu={0: 1, 1: -1})
	alg = realize_tensors(m)
	want = twisted_casimir_expected(m)
	assert alg.casimir("A", twisted=True) == AlgebraElement(dict(enumerate(want)))
	assert want == [Fraction(1, 4), Fraction(4), 0, 0]


@pytest.mark.parametrize("seed", range(25))
def test_random_models_realize(seed):
	rng = random.Random(seed)
	m = random_model(rng)
	assert not validate_model(m)
	for cap in enumerate_crosscaps(m):
		alg = realize_tensors(m, cap)
		assert verify_relations(alg).passed
		assert crosscap_axioms(alg).passed
		assert cardy_axiom(alg).passed


def test_model_cut_relations():
	m = model(3, 1, [2], [Fraction(1, 2)], [Fraction(4), Fraction(1, 9)], nu={0: -1})
	report = verify_cut_relations(realize_tensors(m, {1: -1, 2: 1}), n_exhaustive_dim=200, samples=60)
	assert report.passed, str(report)


def test_crosscap_choice_by_signs():
	m = model(1, 0, [], [], [Fraction(1, 4)], signs={0: -1})
	assert realize_tensors(m).crosscap_element == AlgebraElement({0: -2})
	assert realize_tensors(m, {0: 1}).crosscap_element == AlgebraElement({0: 2})
