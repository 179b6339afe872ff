# tests/test_config.py

"""
Settings, logging, scenario loading, serialization, random substreams and the trial pool.
"""

import json
import logging
import threading
from enum import Enum

import numpy as np
import pytest

from backend.config.logging_config import ColoredFormatter, LoggingConfig, init_logging
from backend.config.scenario_loader import ScenarioLoader
from backend.config.settings import Settings
from backend.models.serialization import serialize_value, to_json
from backend.services.trial_pool import TrialPool
from backend.utils.rng import SubstreamFactory, purpose_key


class Color(str, Enum):
    RED = "red"


class TestSettings:
    def test_defaults(self):
        s = Settings(_env_file=None)
        assert s.ZF_CONDITION_LIMIT == 1e12
        assert s.ARCSIN_CLAMP_TOLERANCE == 1e-12
        assert s.MAX_WORKERS == 1
        s.validate_grid()

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("DEFAULT_TRIALS", "42")
        assert Settings(_env_file=None).DEFAULT_TRIALS == 42

    def test_bad_grid(self):
        with pytest.raises(ValueError):
            Settings(_env_file=None, RHO_GRID_STEP_DB=0.0).validate_grid()
        with pytest.raises(ValueError):
            Settings(_env_file=None, RHO_GRID_MIN_DB=5.0, RHO_GRID_MAX_DB=0.0).validate_grid()
        with pytest.raises(ValueError):
            Settings(_env_file=None, TAU0_MAX=0).validate_grid()


class TestScenarioLoader:
    def test_load_by_name_and_path(self, tmp_path):
        (tmp_path / "cell.yaml").write_text("M: 8\nK: 2\n")
        (tmp_path / "other.json").write_text(json.dumps({"M": 4}))
        loader = ScenarioLoader(tmp_path)
        assert loader.load("cell") == {"M": 8, "K": 2}
        assert loader.load(tmp_path / "other.json") == {"M": 4}
        assert loader.list_scenarios() == ["cell", "other"]

    def test_missing_and_malformed(self, tmp_path):
        loader = ScenarioLoader(tmp_path)
        with pytest.raises(FileNotFoundError):
            loader.load("absent")
        (tmp_path / "list.json").write_text("[1, 2]")
        with pytest.raises(ValueError):
            loader.load("list")

    def test_empty_directory(self, tmp_path):
        assert ScenarioLoader(tmp_path / "nowhere").list_scenarios() == []


class TestSerialization:
    def test_values(self):
        assert serialize_value(np.array([1.0, 2.0])) == [1.0, 2.0]
        assert serialize_value(np.array([1 + 2j])) == {"re": [1.0], "im": [2.0]}
        assert serialize_value(3 - 1j) == {"re": 3.0, "im": -1.0}
        assert serialize_value(np.int32(4)) == 4
        assert serialize_value(np.bool_(True)) is True
        assert serialize_value(Color.RED) == "red"
        assert serialize_value((np.float32(0.5), None)) == [0.5, None]

    def test_json_is_sorted(self):
        text = to_json({"b": 1, "a": np.arange(2)})
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": [0, 1], "b": 1}


class TestSubstreams:
    def test_same_key_same_stream(self):
        a = SubstreamFactory(7).generator("fig2", 3).standard_normal(5)
        b = SubstreamFactory(7).generator("fig2", 3).standard_normal(5)
        np.testing.assert_array_equal(a, b)

    def test_keys_separate_streams(self):
        factory = SubstreamFactory(7)
        draws = [
            factory.generator("fig2", 3).standard_normal(5),
            factory.generator("fig2", 4).standard_normal(5),
            factory.generator("fig3", 3).standard_normal(5),
            SubstreamFactory(8).generator("fig2", 3).standard_normal(5),
        ]
        for i in range(len(draws)):
            for j in range(i + 1, len(draws)):
                assert not np.allclose(draws[i], draws[j])

    def test_purpose_key_and_seed(self):
        assert purpose_key("fig2") == purpose_key("fig2")
        assert 0 <= purpose_key("x") < 2**32
        with pytest.raises(ValueError):
            SubstreamFactory(-1)


class TestTrialPool:
    def test_order_preserved(self):
        def slow_square(i):
            # later items finish first
            threading.Event().wait(0.001 * (10 - i))
            return i * i

        assert TrialPool(4).map(slow_square, range(10)) == [i * i for i in range(10)]

    def test_workers_do_not_change_results(self):
        factory = SubstreamFactory(3)

        def trial(i):
            return float(factory.generator("pool", i).standard_normal())

        assert TrialPool(1).map(trial, range(8)) == TrialPool(3).map(trial, range(8))


class TestLogging:
    def test_file_handler_gets_plain_records(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        try:
            LoggingConfig.setup_logging(log_level="INFO", log_file=str(log_file), colored_output=True)
            logging.getLogger("onebit.test").info("hello from the toolkit")
            for handler in logging.getLogger().handlers:
                handler.flush()
            text = log_file.read_text()
            assert "hello from the toolkit" in text
            assert "\033[" not in text
        finally:
            for handler in logging.getLogger().handlers:
                handler.close()
            LoggingConfig.setup_test_logging()

    def test_environment_selects_profile(self, monkeypatch):
        monkeypatch.setenv("ENVIRONMENT", "test")
        init_logging("ERROR")
        assert logging.getLogger().level == logging.DEBUG
        monkeypatch.setenv("ENVIRONMENT", "development")
        init_logging("WARNING")
        assert logging.getLogger().level == logging.WARNING
        LoggingConfig.setup_test_logging()

    def test_colored_formatter_leaves_record_untouched(self):
        record = logging.makeLogRecord({"levelname": "INFO", "msg": "x", "levelno": logging.INFO})
        assert "\033[32m" in ColoredFormatter("%(levelname)s").format(record)
        assert record.levelname == "INFO"
