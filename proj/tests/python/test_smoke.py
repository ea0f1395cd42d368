"""End-to-end smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import btlrank


@pytest.fixture(scope="module")
def pipeline():
    truth = btlrank.scores_uniform(30, 8.0, 10.0, seed=4)
    graph = btlrank.generate_graph(30, 0.5, seed=4)
    data = btlrank.generate_outcomes(graph, truth, 40, seed=4)
    theta_hat, lambda0, iterations = btlrank.fit_mle(data)
    result = btlrank.debias(theta_hat, data, lambda0)
    return truth, data, result, iterations


def test_rank_and_properties():
    ranks = btlrank.rank_of(np.array([3.0, 1.0, 2.0]))
    assert ranks == [1, 3, 2]
    assert btlrank.property_holds(np.array([3.0, 1.0, 2.0]), "top-k", 2, 2)
    assert btlrank.signal_distance(np.array([3.0, 2.0, 1.0]), "top-k", 0, 1) == 1.0
    assert btlrank.multiple_testing_signal(np.array([5.0, 5.0, 1.0, 1.0]), 2) == 4.0
    two_block = np.array([10.0] * 3 + [7.5] * 7)
    assert btlrank.divider_cardinality(two_block, "top-k", 3) == 21
    assert btlrank.divider_cardinality(two_block, "above-item", 4) == 19


def test_fit_recovers_scores(pipeline):
    truth, _, result, iterations = pipeline
    assert iterations < 100
    assert abs(np.sum(result.theta_debiased)) < 1e-8
    err = np.max(np.abs(result.theta_debiased - truth))
    assert err < 0.75  # coarse: L = 40 on 30 items
    assert np.all(result.se > 0)


def test_pairwise_and_topk_tests(pipeline):
    truth, data, result, _ = pipeline
    top = int(np.argmax(truth))
    bottom = int(np.argmin(truth))
    report = btlrank.test_pairwise(result, top, bottom, alpha=0.05)
    assert report.reject
    assert report.p_value < 0.05

    topk = btlrank.test_topk(result, data, top, 10, alpha=0.05, B=500, seed=1)
    assert math.isfinite(topk.statistic)
    assert topk.threshold > 0


def test_selection_and_by(pipeline):
    _, data, result, _ = pipeline
    fdr = btlrank.select_topk_fdr_by(result, data, 5, alpha=0.1, B=400, seed=2)
    assert set(fdr.selected) <= set(range(30))
    assert len(fdr.p_values) == 30

    selected, r, threshold = btlrank.benjamini_yekutieli(
        np.array([0.001, 0.2, 0.9]), 0.05
    )
    assert selected == [0]
    assert r == 1
    assert threshold == pytest.approx(0.05 / (3 * (1 + 0.5 + 1 / 3)))


def test_disconnected_graph_raises():
    graph = btlrank.ComparisonGraph(3, [(0, 1)])
    data = btlrank.ComparisonDataset(graph, 2, [[1, 0]])
    with pytest.raises(btlrank.DisconnectedGraphError):
        btlrank.fit_mle(data)


def test_ratings_ingestion():
    ratings = [(0, 0, 5.0), (0, 1, 3.0), (1, 0, 2.0), (1, 1, 4.0)]
    data, dropped = btlrank.ratings_to_comparisons(ratings, 2, 1.0, 2, seed=3)
    assert dropped == []
    assert data.means[0] == 0.5
