import math

import pytest

import polytree


def or_gate():
    # A -> B <- C, B = A or C, parent configs (A, C) row-major.
    return polytree.Polytree(
        [("A", 2), ("B", 2), ("C", 2)],
        [[], [0, 2], []],
        [[0.5, 0.5], [1, 0, 0, 1, 0, 1, 0, 1], [0.5, 0.5]],
    )


def noisy_chain():
    return polytree.Polytree(
        [("A", 2), ("B", 2), ("C", 2)],
        [[], [0], [1]],
        [[0.3, 0.7], [0.9, 0.1, 0.2, 0.8], [0.85, 0.15, 0.25, 0.75]],
    )


def test_mutual_information():
    src = polytree.Source.factored(or_gate())
    assert polytree.mi(src, "A", "B") == pytest.approx(0.31127812445913283, abs=1e-12)
    assert polytree.mi(src, "A", "C") < 1e-12
    assert polytree.mi(src, "A", "C", given="B") == pytest.approx(0.18872187554086714, abs=1e-12)


def test_skeleton():
    src = polytree.Source.factored(or_gate())
    weights = polytree.compute_weights(src)
    edges, ties = polytree.mwst(3, weights)
    assert edges == [(0, 1), (1, 2)]
    assert ties == []


def test_learn_or_gate():
    result = polytree.learn(polytree.Source.factored(or_gate()))
    states = {(e["u"], e["v"]): e for e in result["edges"]}
    assert states[(0, 1)]["state"] == "directed" and states[(0, 1)]["from"] == 0
    assert states[(1, 2)]["state"] == "directed" and states[(1, 2)]["from"] == 2
    assert result["warnings"] == []
    report = polytree.evaluate(result, or_gate())
    assert report["skeleton_f1"] == 1.0
    assert report["orientation_accuracy"] == 1.0
    assert "cluster_0" in polytree.to_dot(result)


def test_learn_chain_with_fit_and_override():
    src = polytree.Source.factored(noisy_chain())
    result = polytree.learn(src, fit=True, orient=[("C", "B")])
    assert result["model"]["parents"]["B"] == ["C"]
    fitted = polytree.Polytree.from_json(__import__("json").dumps(result["model"]))
    truth = noisy_chain()
    for a in range(2):
        for b in range(2):
            for c in range(2):
                x = [a, b, c]
                assert math.isclose(fitted.probability(x), truth.probability(x), abs_tol=1e-9)


def test_sampling_and_empirical_learning():
    model = noisy_chain()
    rows = polytree.sample(model, 20000, seed=3)
    assert rows == polytree.sample(model, 20000, seed=3)
    src = polytree.Source.empirical(model.variables, rows)
    assert not src.is_exact
    result = polytree.learn(src, "gtest", alpha=0.01)
    assert result["skeleton"] == [[0, 1], [1, 2]]


def test_random_polytree():
    model = polytree.random_polytree(8, max_card=3, max_parents=3, seed=5)
    assert len(model) == 8
    assert len(model.edges()) == 7
    assert polytree.check_nondegeneracy(model, 0.01)["passed"]


def test_errors():
    with pytest.raises(polytree.InputError):
        polytree.Polytree([("A", 2)], [[]], [[0.5, 0.6]])
    with pytest.raises(polytree.ParseError):
        polytree.Polytree.from_json('{"variables": []')
    with pytest.raises(polytree.ConfigError):
        polytree.learn(polytree.Source.factored(or_gate()), "gtest")
    assert issubclass(polytree.InputError, ValueError)
