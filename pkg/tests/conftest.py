from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from homlie import _kernels  # noqa: E402
from homlie.zoo import example_bundle  # noqa: E402

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example, HealthCheck.data_too_large],
)
settings.load_profile("default")

ACCEPTANCE_LINES: dict = {}


@pytest.fixture(params=sorted(_kernels.available_backends()))
def backend(request):
    with _kernels.use_backend(request.param) as mod:
        yield mod


@pytest.fixture(scope="session")
def ex_bundle():
    return example_bundle()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
