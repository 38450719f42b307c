import logging
import math
import pytest
import numpy as np
from somlogic.concepts import Top, Bot, Atom, Not, And, Or
from somlogic.exceptions import (
    ProbabilityGuardError, UndefinedConditionalError, ValidationError,
    NameResolutionError, DataFormatError, EmptyDomainError)
from somlogic.fuzzy import FuzzyModel
from somlogic.probability import (
    ProbModel, CrispSingleton, parse_distribution, load_distribution,
    build_prob)
from somlogic.utils.plugin_api import get_connective_family
from .utils import toy_domain, toy_categories, random_concept

A, B, C = Atom("A"), Atom("B"), Atom("C")


def _fuzzy(logic="zadeh"):
    return FuzzyModel(toy_domain(), toy_categories(),
                      get_connective_family(logic))


@pytest.fixture(params=["zadeh", "lukasiewicz"])
def prob_model(request):
    return ProbModel(_fuzzy(request.param))


def test_uniform_by_default(prob_model):
    assert prob_model.uniform
    assert prob_model.mass("e3") == pytest.approx(1.0 / 7.0)


def test_probability_laws(prob_model):
    assert prob_model.prob(Top()) == pytest.approx(1.0, abs=1e-9)
    assert prob_model.prob(Bot()) == 0.0
    for concept in (A, B, And(A, C), Or(B, Not(C))):
        assert prob_model.prob(Not(concept)) == \
            pytest.approx(1.0 - prob_model.prob(concept), abs=1e-9)
    assert prob_model.prob(And(A, B)) + prob_model.prob(Or(A, B)) == \
        pytest.approx(prob_model.prob(A) + prob_model.prob(B), abs=1e-9)


def test_prob_is_expected_membership(prob_model):
    expected = sum(prob_model.fuzzy.membership(B, uid)
                   for uid in prob_model.fuzzy.element_ids) / 7.0
    assert prob_model.prob(B) == pytest.approx(expected)


def test_conditional(prob_model):
    assert prob_model.cond_prob(A, Top()) == pytest.approx(prob_model.prob(A))
    assert prob_model.cond_prob(Top(), B) == pytest.approx(1.0)
    assert prob_model.cond_prob(A, CrispSingleton("e2")) == \
        pytest.approx(prob_model.fuzzy.membership(A, "e2"))


def test_conditional_undefined(prob_model):
    with pytest.raises(UndefinedConditionalError):
        prob_model.cond_prob(A, Bot())


def test_prob_given_element(prob_model):
    assert prob_model.prob_given_element(Or(A, C), "e4") == \
        prob_model.fuzzy.membership(Or(A, C), "e4")


def test_likelihood_uniform(prob_model):
    size = prob_model.concept_size(A)
    assert prob_model.likelihood("e0", A) == pytest.approx(1.0 / size)
    assert sum(prob_model.likelihood(uid, A)
               for uid in prob_model.fuzzy.element_ids) == pytest.approx(1.0)


def test_larger_concept_smaller_likelihood(prob_model):
    assert prob_model.concept_size(B) > prob_model.concept_size(A)
    assert prob_model.likelihood("e0", B) < prob_model.likelihood("e0", A)


def test_likelihood_empty_concept(prob_model):
    with pytest.raises(UndefinedConditionalError):
        prob_model.likelihood("e0", Bot())


def test_explicit_distribution():
    model = ProbModel(_fuzzy(), {"e0": 0.5, "e6": 0.5})
    assert not model.uniform
    assert model.mass("e3") == 0.0
    assert model.prob(A) == pytest.approx(0.5 + 0.5 * math.exp(-7.0))
    assert model.likelihood("e3", A) == 0.0
    assert model.likelihood("e0", A) + model.likelihood("e6", A) == \
        pytest.approx(1.0)
    with pytest.raises(UndefinedConditionalError):
        model.prob_given_element(A, "e3")


def test_explicit_uniform_distribution():
    dist = {"e{0}".format(i): 1.0 / 7.0 for i in range(7)}
    model = ProbModel(_fuzzy(), dist)
    assert model.uniform
    assert model.likelihood("e0", A) == \
        pytest.approx(ProbModel(_fuzzy()).likelihood("e0", A))


def test_renormalize(caplog):
    caplog.set_level(logging.WARNING)
    model = ProbModel(_fuzzy(), {"e0": 0.5, "e1": 0.5 + 5e-7})
    assert model.mass("e0") + model.mass("e1") == pytest.approx(1.0,
                                                                abs=1e-15)
    assert "renormalizing" in caplog.text


@pytest.mark.parametrize("dist", [
    {"e0": 0.5, "e1": 0.6},
    {"e0": 1.5, "e1": -0.5},
    {"e0": float("nan"), "e1": 1.0},
])
def test_invalid_distribution(dist):
    with pytest.raises(ValidationError):
        ProbModel(_fuzzy(), dist)


def test_unknown_element():
    with pytest.raises(NameResolutionError):
        ProbModel(_fuzzy(), {"nobody": 1.0})
    with pytest.raises(DataFormatError) as err:
        build_prob(_fuzzy(), {"nobody": 1.0})
    assert "nobody" in str(err.value)


def test_empty_domain():
    with pytest.raises(EmptyDomainError):
        ProbModel(FuzzyModel([], toy_categories()))


@pytest.mark.parametrize("logic", ["goedel", "product"])
def test_guard(logic):
    model = ProbModel(_fuzzy(logic))
    with pytest.raises(ProbabilityGuardError) as err:
        model.prob(A)
    assert logic in str(err.value)
    with pytest.raises(ProbabilityGuardError):
        model.cond_prob(A, B)
    with pytest.raises(ProbabilityGuardError):
        model.likelihood("e0", A)
    with pytest.raises(ProbabilityGuardError):
        model.prob_given_element(A, "e0")


def test_parse_distribution():
    res = parse_distribution("id,mass\ne1,0.25\n\ne0,0.75\n")
    assert list(res.items()) == [("e1", 0.25), ("e0", 0.75)]


@pytest.mark.parametrize("text,fragment", [
    ("", "header"),
    ("id,weight\n", "header"),
    ("id,mass,extra\n", "header"),
    ("id,mass\ne0,0.5,1\n", "line 2: expected 2 fields"),
    ("id,mass\ne0,0.5\ne0,0.5\n", "duplicate id e0"),
    ("id,mass\ne0,half\n", "line 2"),
])
def test_parse_distribution_errors(text, fragment):
    with pytest.raises(DataFormatError) as err:
        parse_distribution(text, "dist.csv")
    assert fragment in str(err.value)


def test_load_distribution(tmp_path):
    path = tmp_path / "dist.csv"
    path.write_text("id,mass\ne0,1\n")
    assert load_distribution(str(path)) == {"e0": 1.0}


@pytest.mark.parametrize("logic", ["zadeh", "lukasiewicz"])
def test_random_models(random_instances, logic):
    family = get_connective_family(logic)
    rng = np.random.default_rng(8)
    for _, _, cwm in random_instances:
        fuzzy = FuzzyModel.from_cwm(cwm, family)
        ids = fuzzy.element_ids
        names = list(fuzzy.categories)
        masses = rng.dirichlet(np.ones(len(ids)))
        for dist in (None, dict(zip(ids, masses))):
            model = ProbModel(fuzzy, dist)
            assert model.prob(Top()) == pytest.approx(1.0, abs=1e-9)
            assert model.prob(Bot()) == 0.0
            for _ in range(5):
                first = random_concept(rng, names)
                second = random_concept(rng, names)
                assert model.prob(Not(first)) == \
                    pytest.approx(1.0 - model.prob(first), abs=1e-9)
                assert model.prob(Or(first, second)) == pytest.approx(
                    model.prob(first) + model.prob(second) -
                    model.prob(And(first, second)), abs=1e-9)
                uid = ids[int(rng.integers(0, len(ids)))]
                assert model.prob(And(first, second)) <= \
                    model.prob(first) + 1e-12
                assert model.prob(first) <= \
                    model.prob(Or(first, second)) + 1e-12
                assert model.prob_given_element(first, uid) == \
                    fuzzy.membership(first, uid)
                assert abs(model.cond_prob(first, CrispSingleton(uid)) -
                           fuzzy.membership(first, uid)) <= 1e-12
                if model.prob(first) <= 1e-6 or \
                        model.concept_size(first) <= 1e-6:
                    continue
                total = sum(model.likelihood(cur, first) for cur in ids)
                assert total == pytest.approx(1.0, abs=1e-9)


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])
