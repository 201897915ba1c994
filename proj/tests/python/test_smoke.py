import pytest

import prophgames as pg


@pytest.fixture
def inst321():
    dists = [pg.Distribution.point(v) for v in (3.0, 2.0, 1.0)]
    return pg.Instance(dists, 2, pg.TieRule.random)


def test_distribution_and_instance_basics(inst321):
    assert inst321.horizon == 3
    assert inst321.num_agents == 2
    assert inst321.fully_discrete

    coin = pg.Distribution.discrete([(0.0, 0.5), (1.0, 0.5)])
    assert coin.is_discrete
    assert coin.mean() == pytest.approx(0.5)
    assert coin.support == [(0.0, 0.5), (1.0, 0.5)]

    doc = inst321.to_json()
    assert doc["num_agents"] == 2
    round_trip = pg.instance_from_json(doc)
    assert round_trip.horizon == 3


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError):
        pg.Distribution.discrete([(1.0, 0.5), (2.0, 0.4)])
    with pytest.raises(ValueError):
        pg.Instance([pg.Distribution.point(1.0)], 0, pg.TieRule.random)


def test_thresholds_and_certificates(inst321):
    stats = pg.expected_order_stats_exact(inst321)
    assert stats.expectations == pytest.approx([3.0, 2.0, 1.0])
    assert pg.random_tie_threshold(stats, 2, 2) == pytest.approx(1.25)
    ell, t = pg.best_ell_random(stats, 2)
    assert (ell, t) == (2, pytest.approx(1.25))

    cert = pg.worst_case_utility_random(inst321, 2, 1.25, guarantee_claimed=1.25)
    assert cert.passed
    assert cert.worst_case_utility == pytest.approx(2.5)


def test_game_evaluation_and_nash(inst321):
    profile = [pg.Strategy.single_threshold(0.0)] * 2
    report = pg.expected_utilities_exact(inst321, profile)
    assert report.per_agent_utility == pytest.approx([2.5, 2.5])
    assert report.welfare == pytest.approx(5.0)

    mc1 = pg.expected_utilities_mc(inst321, profile, 5000, 42)
    mc2 = pg.expected_utilities_mc(inst321, profile, 5000, 42)
    assert mc1.per_agent_utility == mc2.per_agent_utility
    assert abs(mc1.welfare - 5.0) <= 4 * sum(mc1.std_errors) + 1e-9

    nash = pg.verify_nash(inst321, profile)
    assert nash.is_nash


def test_ranked_spe_pipeline():
    dists = [pg.Distribution.point(1.0), pg.Distribution.point(10.0)]
    inst = pg.Instance(dists, 2, pg.TieRule.ranked)
    table = pg.solve_k_select(inst)
    assert table.value(0, 2) == pytest.approx(11.0)
    assert table.threshold(0, 1) == pytest.approx(10.0)

    profile = pg.spe_profile(inst, table)
    report = pg.expected_utilities_exact(inst, profile)
    assert report.per_agent_utility == pytest.approx([10.0, 1.0])
    assert pg.verify_nash(inst, profile).is_nash

    value, policy = pg.best_response_value(inst, profile, 1)
    assert value == pytest.approx(1.0)
    assert policy.selects(0, 1.0, 0b11, 1)


def test_reproductions_return_documents():
    doc = pg.reproduce_prop4(2, 0.5, 3)
    assert doc["all_pass"] is True
    assert doc["params"] == {"k": 2, "eps": 0.5, "n": 3}

    doc6 = pg.reproduce_prop6(2, 2, 0.5, 3)
    assert doc6["all_pass"] is True
    assert doc6["per_agent_utility"][1] == pytest.approx(1.5)
