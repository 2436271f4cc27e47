import math

import pytest

import occamlab as ol


@pytest.fixture(scope="module")
def space():
    return ol.enumerate_space(ol.base_language(2), 18, 512, 8)


def test_run_base_language():
    # INC [ RIGHT EMIT LEFT ] emits zeros until the budget.
    emitted, status, _ = ol.run(ol.base_language(2), "18:144180", 10_000, 5)
    assert emitted == "00000"
    assert status == "emit-budget-reached"


def test_space_and_prior(space):
    classes = space.classes()
    assert len(space) == 4
    assert classes["11111111"][0] == 12
    assert space.mdl("00000000") == 18
    assert space.mdl("10101010") is None
    prior = ol.solomonoff_prior(space)
    assert math.isclose(prior.total_mass(), 1.0, abs_tol=1e-9)
    assert prior.probability("11111111") == pytest.approx(64 / 74, rel=1e-12)


def test_updates_agree(space):
    prior = ol.solomonoff_prior(space)
    seq = prior
    for ch in "000":
        seq = ol.observe_update(seq, ch)
    batch = ol.batch_update(prior, "000")
    assert seq.probabilities() == pytest.approx(batch.probabilities(), abs=1e-12)
    assert ol.correspondence(prior, "00000000") == pytest.approx(1 / 74)
    assert ol.alignment(prior, "00000000") == pytest.approx(18 / 592)
    assert ol.steps_to_threshold(prior, space, "periodic:0", 0.9) == 3
    with pytest.raises(ol.ContradictionError):
        ol.batch_update(prior, "10")


def test_special_model_never_converges(space):
    special = ol.make_special(ol.solomonoff_prior(space), ["00000000"])
    assert special.kind == "special"
    assert ol.steps_to_threshold(special, space, "periodic:0", 0.9) is None


def test_cache_round_trip(space, tmp_path):
    path = tmp_path / "space.jsonl"
    space.save(path)
    again = ol.load_space(path)
    assert again.classes() == space.classes()
    assert again.language.id == space.language.id


def test_posthoc():
    d = ol.construct_posthoc("0110", "01")
    assert ol.verify_posthoc(d, "0110", "01")
    assert ol.demo_posthoc("0110", "01")["verdict"] == "pass"


def test_demos(space):
    wrapper = ol.permutation_wrapper(space.language, [4, 1, 2, 3, 0, 5, 6, 7])
    assert ol.demo_invariance(space, wrapper)["summary"]["max_gap"] == 0
    assert ol.demo_reorder(space, "11111111", "00000000")["verdict"] == "pass"
    assert ol.demo_overwhelm(space, "000")["verdict"] == "pass"
    report = ol.demo_confidence_tradeoff(space, "periodic:0", ["00000000"], ["00111111"], 8.0, 0.9)
    assert report["verdict"] == "pass"


def test_validation_errors():
    with pytest.raises(ol.ValidationError):
        ol.base_language(1)
    with pytest.raises(ol.ResourceLimitError):
        ol.enumerate_space(ol.base_language(2), 24, 64, 8)
    assert issubclass(ol.ValidationError, ol.Error)
