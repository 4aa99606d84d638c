"""Experiment files, config validation and settings."""

from pathlib import Path

import pytest

from adaregret.config import Settings
from adaregret.errors import UsageError
from adaregret.experiments import build_config, load_config, parse_config_text
from adaregret.schemas import ComparatorKind, PolicyKind, SetKind, StreamKind

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

EXAMPLE = """
# per-coordinate run on a thin box
set.kind=box
set.lower=-5,-0.05
set.upper=5, 0.05   # trailing comment
policy.kind=per_coordinate
stream.kind=regression
stream.drift_rate=0.01
comparator.kind=ground_truth
horizon=500
"""


class TestParse:
    def test_values_and_vectors(self):
        values = parse_config_text(EXAMPLE)
        assert values["set.lower"] == ["-5", "-0.05"]
        assert values["set.upper"] == ["5", "0.05"]
        assert values["horizon"] == "500"

    def test_single_entry_vector(self):
        assert parse_config_text("initial=0.5")["initial"] == ["0.5"]

    def test_missing_equals(self):
        with pytest.raises(UsageError) as e:
            parse_config_text("horizon 10\nseed=1")
        assert e.value.errors == ["line 1: expected key=value"]

    def test_duplicate_key(self):
        with pytest.raises(UsageError, match="set more than once"):
            parse_config_text("seed=1\nseed=2")


class TestBuild:
    def test_example(self):
        config = build_config(parse_config_text(EXAMPLE))
        assert config.feasible_set.kind is SetKind.BOX
        assert config.policy.kind is PolicyKind.PER_COORDINATE
        assert config.stream.kind is StreamKind.REGRESSION
        assert config.comparator.kind is ComparatorKind.GROUND_TRUTH
        assert config.dimension == 2
        assert config.horizon == 500

    def test_defaults(self):
        config = build_config({})
        assert config.dimension == 1
        assert config.policy.kind is PolicyKind.ADAPTIVE
        assert config.repetitions == 1

    def test_errors_name_the_field(self):
        with pytest.raises(UsageError) as e:
            build_config({"horizon": "0", "stream.scale": "-1"})
        assert any(m.startswith("horizon:") for m in e.value.errors)
        assert any(m.startswith("stream.scale:") for m in e.value.errors)

    def test_unknown_key(self):
        with pytest.raises(UsageError) as e:
            build_config({"set.colour": "red"})
        assert "colour" in e.value.errors[0]

    def test_value_and_namespace_clash(self):
        with pytest.raises(UsageError, match="namespace"):
            build_config({"set": "ball", "set.kind": "box"})

    @pytest.mark.parametrize(
        "flat, message",
        [
            ({"policy.kind": "per_coordinate"}, "needs set.kind=box"),
            ({"comparator.kind": "ground_truth"}, "needs stream.kind=regression"),
            ({"comparator.kind": "budgeted"}, "needs policy.budget"),
            ({"comparator.kind": "brute_force", "horizon": "9"}, "brute_force"),
            ({"stream.zero_prefix": "10", "horizon": "10"}, "zero_prefix"),
            ({"set.kind": "box", "set.lower": ["0"]}, "lower and upper"),
            ({"set.dimension": "2", "initial": ["0"]}, "initial must have 2 entries"),
            ({"set.kind": "box", "set.lower": ["1", "1"], "set.upper": ["0", "0"]}, "lower <= upper"),
            ({"set.kind": "box", "set.lower": ["0.5", "0"], "set.upper": ["0.5", "0"]}, "positive width"),
            ({"set.dimension": "2", "stream.direction": ["0", "0"]}, "direction must be nonzero"),
            ({"comparator.segments": "11", "comparator.budget": "100", "horizon": "10"}, "exceeds horizon"),
            ({"comparator.segments": "3", "comparator.budget": "3.9"}, r"floor\(P/D\) \+ 1 = 2"),
        ],
    )
    def test_consistency(self, flat, message):
        with pytest.raises(UsageError, match=message):
            build_config(flat)

    def test_segments_at_limit(self):
        config = build_config({"comparator.segments": "3", "comparator.budget": "4.0", "horizon": "10"})
        assert config.comparator.segments == 3
        assert config.stated_comparator_budget() == 4.0

    def test_stated_budget_capped(self):
        config = build_config({"comparator.segments": "3", "comparator.budget": "100", "horizon": "3"})
        assert config.stated_comparator_budget() == 4.0

    def test_doubling_gets_default_budget(self):
        config = build_config({"policy.kind": "doubling"})
        assert config.policy.budget is not None


class TestLoad:
    def test_layering(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("horizon=200\nseed=4\n", encoding="utf-8")
        config = load_config(
            path,
            overrides={"seed": 9, "repetitions": None},
            defaults={"horizon": 50, "repetitions": 3},
        )
        assert config.horizon == 200
        assert config.seed == 9
        assert config.repetitions == 3

    def test_shipped_configs(self):
        for name in ("adaptive_rademacher", "doubling_sqrt_budget", "per_coordinate_box"):
            load_config(CONFIGS / f"{name}.cfg")


class TestSettings:
    def test_environment(self, monkeypatch):
        monkeypatch.setenv("ADAREGRET_MAX_WORKERS", "2")
        monkeypatch.setenv("ADAREGRET_BOUND_TOLERANCE", "1e-6")
        settings = Settings()
        assert settings.max_workers == 2
        assert settings.bound_tolerance == 1e-6

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("ADAREGRET_CSV_PRECISION", raising=False)
        assert Settings(_env_file=None).csv_precision == 17
