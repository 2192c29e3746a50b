"""
Tests for the h_lambda density oracle.
"""
import pytest

from src.simulator.hlambda import hlambda_oracle


def test_dense_with_adaptive_bound():
    assert hlambda_oracle(2.0, -16, -1, None, -5.0, 5.0, 0.01)


def test_sparse_with_small_bound():
    assert not hlambda_oracle(2.0, -1, -1, 1, 0.0, 5.0, 0.01)


def test_interval_shorter_than_eps():
    assert hlambda_oracle(3.0, 0, 0, 1, 0.0, 0.005, 0.01)


def test_budget_exhaustion_answers_false():
    assert not hlambda_oracle(2.0, -16, -1, None, -5.0, 5.0, 0.01, max_values=10)


def test_only_degenerate_exponent():
    # p = 0 gives lam^0 * (1 - lam^0) = 0
    assert not hlambda_oracle(2.0, 0, 0, 5, 1.0, 2.0, 0.1)


@pytest.mark.parametrize("args", [
    (1.0, -2, -1, None, 0.0, 1.0, 0.1),
    (2.0, 1, 0, None, 0.0, 1.0, 0.1),
    (2.0, -2, -1, 0, 0.0, 1.0, 0.1),
    (2.0, -2, -1, None, 1.0, 0.0, 0.1),
    (2.0, -2, -1, None, 0.0, 1.0, 0.0),
])
def test_invalid_arguments(args):
    with pytest.raises(ValueError):
        hlambda_oracle(*args)
