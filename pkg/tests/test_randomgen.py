import json
from pathlib import Path

import pytest

from ncpoly import DegenerateSpec, RandSpec, SplitMix64, commutator, random_element

from oracles import assert_normalized

FIXTURES = Path(__file__).parent / "fixtures"


def test_splitmix64_reference_streams():
    payload = json.loads((FIXTURES / "prng.json").read_text())
    assert payload["algorithm"] == "splitmix64"
    for stream in payload["streams"]:
        rng = SplitMix64(stream["seed"])
        expected = [int(v) for v in stream["first_outputs"]]
        assert [rng.next_uint64() for _ in expected] == expected


def test_below_bounds_and_errors():
    rng = SplitMix64(5)
    assert all(rng.below(1) == 0 for _ in range(5))
    assert all(0 <= rng.below(7) < 7 for _ in range(200))
    with pytest.raises(ValueError):
        rng.below(0)


def test_uniform_range():
    rng = SplitMix64(5)
    values = [rng.uniform() for _ in range(200)]
    assert all(0.0 <= v < 1.0 for v in values)


def test_normal_is_deterministic():
    a = SplitMix64(17)
    b = SplitMix64(17)
    assert [a.normal() for _ in range(8)] == [b.normal() for _ in range(8)]


def test_random_element_determinism():
    spec = RandSpec(seed=7)
    assert random_element(spec) == random_element(spec)
    # alphabet is a set; listing it in another order does not change the draw
    assert random_element(RandSpec(seed=7, alphabet="cab")) == random_element(
        RandSpec(seed=7, alphabet="abc")
    )
    # pinned stream output; a change here means the documented draws moved
    assert str(random_element(spec)) == "+ 5*a + 4*aaab + 3*abc + 2*acc + 3*b"


def test_default_spec_bounds_over_many_seeds():
    for seed in range(1000):
        element = random_element(RandSpec(seed=seed))
        assert element
        assert_normalized(element)
        for word, coeff in element.terms():
            assert 1 <= len(word) <= 4
            assert set(word) <= {1, 2, 3}
            assert coeff == int(coeff)
            assert coeff >= 1


def test_allow_inverse_draws_signed_symbols():
    seen_negative = False
    for seed in range(100):
        element = random_element(RandSpec(seed=seed, allow_inverse=True))
        assert_normalized(element)
        for word, _ in element.terms():
            assert {abs(s) for s in word} <= {1, 2, 3}
            seen_negative = seen_negative or any(s < 0 for s in word)
    assert seen_negative


def test_spec_validation():
    with pytest.raises(ValueError):
        RandSpec(seed=1, alphabet=())
    with pytest.raises(ValueError):
        RandSpec(seed=1, n_terms=0)
    with pytest.raises(ValueError):
        RandSpec(seed=1, word_len=(3, 2))
    with pytest.raises(ValueError):
        RandSpec(seed=1, word_len=(-1, 2))
    with pytest.raises(ValueError):
        RandSpec(seed=1, coeff_range=(5, 4))
    with pytest.raises(ValueError):
        RandSpec(seed=1, alphabet="a1")


def test_degenerate_spec_raises():
    # coefficient range {0} can only ever produce the zero element
    with pytest.raises(DegenerateSpec):
        random_element(RandSpec(seed=3, coeff_range=(0, 0)))


def test_jacobi_identity_on_random_triples():
    for seed in range(50):
        x = random_element(RandSpec(seed=10_000 + 3 * seed))
        y = random_element(RandSpec(seed=10_001 + 3 * seed))
        z = random_element(RandSpec(seed=10_002 + 3 * seed))
        total = (
            commutator(x, commutator(y, z))
            + commutator(y, commutator(z, x))
            + commutator(z, commutator(x, y))
        )
        assert not total
