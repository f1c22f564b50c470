import pytest

from evopareto.config import ConfigError, parse_config, serialize_config

MINIMAL = """
environment = TradeoffBandit
algorithms = NSGA2
"""


def test_minimal_config_gets_baseline_defaults():
    config = parse_config(MINIMAL)
    assert config.pop_size == 50
    assert config.generations == 25
    assert config.n_episodes == 5
    assert config.n_runs == 10
    assert config.hidden_widths() == (4, 4, 4)
    assert config.bounds == (-5.0, 5.0)


def test_wider_second_layer_accepted_zero_rejected():
    assert parse_config(MINIMAL + "n_layer2 = 10\n").n_layer2 == 10
    with pytest.raises(ConfigError, match="n_layer2"):
        parse_config(MINIMAL + "n_layer2 = 0\n")


def test_round_trip_identity():
    text = MINIMAL + "sigma = 0.0\nalgorithms_extra_not_here = x\n"
    with pytest.raises(ConfigError):
        parse_config(text)
    config = parse_config(MINIMAL + "sigma = 0.0\nmaster_seed = 77\n")
    again = parse_config(serialize_config(config))
    assert again == config
    assert serialize_config(again) == serialize_config(config)


def test_unknown_key_reports_line_number():
    text = "environment = TradeoffBandit\nalgorithms = GA\nmystery = 3\n"
    with pytest.raises(ConfigError, match="line 3"):
        parse_config(text)


def test_type_errors_report_line_number():
    text = "environment = TradeoffBandit\npop_size = fifty\nalgorithms = GA\n"
    with pytest.raises(ConfigError, match="line 2"):
        parse_config(text)


def test_duplicate_key_rejected():
    text = MINIMAL + "pop_size = 10\npop_size = 12\n"
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config(text)


def test_missing_required_keys():
    with pytest.raises(ConfigError, match="environment"):
        parse_config("algorithms = GA\n")
    with pytest.raises(ConfigError, match="algorithms"):
        parse_config("environment = TradeoffBandit\n")


def test_unknown_names_rejected():
    with pytest.raises(ConfigError, match="environment"):
        parse_config("environment = mo-hopper-v4\nalgorithms = GA\n")
    with pytest.raises(ConfigError, match="algorithm"):
        parse_config("environment = TradeoffBandit\nalgorithms = CMAES\n")


def test_structural_validation():
    with pytest.raises(ConfigError, match="even"):
        parse_config(MINIMAL + "pop_size = 7\n")
    with pytest.raises(ConfigError, match="bounds"):
        parse_config(MINIMAL + "bounds = 5, -5\n")
    with pytest.raises(ConfigError, match="positive"):
        parse_config(MINIMAL + "generations = 0\n")
    with pytest.raises(ConfigError, match="twice"):
        parse_config("environment = TradeoffBandit\nalgorithms = GA, GA\n")


def test_comments_and_blank_lines_ignored():
    text = "# experiment\n\nenvironment = TradeoffBandit\n# roster\nalgorithms = GA, NSGA2\n"
    config = parse_config(text)
    assert config.algorithms == ("GA", "NSGA2")


def test_algorithm_config_carries_operator_parameters():
    config = parse_config(MINIMAL + "eta_c = 12.5\nde_f = 0.7\n")
    algo = config.algorithm_config("NSGA2", k=2)
    assert algo.eta_c == 12.5
    assert algo.de_f == 0.7
    assert algo.pop_size == 50


def test_rnsga2_reference_points_grouped_by_k():
    config = parse_config(MINIMAL + "rnsga2_reference_points = 1, 0, 0, 1\n")
    algo = config.algorithm_config("RNSGA2", k=2)
    assert algo.rnsga2_reference_points == ((1.0, 0.0), (0.0, 1.0))
    with pytest.raises(ConfigError, match="multiple"):
        config.algorithm_config("RNSGA2", k=3)


def test_with_seed_returns_updated_copy():
    config = parse_config(MINIMAL)
    assert config.with_seed(99).master_seed == 99
    assert config.master_seed == 0
