"""Shared fixtures and hypothesis profiles."""

import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from adaregret.geometry import Ball, Box
from adaregret.schemas import ExperimentConfig

settings.register_profile("fast", max_examples=25, deadline=None)
settings.register_profile(
    "ci",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))


@pytest.fixture
def unit_ball() -> Ball:
    return Ball.centered(2)


@pytest.fixture
def interval() -> Box:
    """1-D box [-1, 1], D = 2."""
    return Box(lower=np.array([-1.0]), upper=np.array([1.0]))


@pytest.fixture
def rademacher_config() -> ExperimentConfig:
    return ExperimentConfig.model_validate({
        "set": {"kind": "ball", "dimension": 2},
        "policy": {"kind": "adaptive"},
        "stream": {"kind": "rademacher", "direction": [0.6, 0.8], "scale": 2.0},
        "comparator": {"kind": "best_segmented", "budget": 2.0},
        "horizon": 64,
        "repetitions": 2,
        "seed": 3,
    })
