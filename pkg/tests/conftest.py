import re

import numpy as np
import pytest

from photonbox import FockSpace


@pytest.fixture
def rng():
    return np.random.default_rng(20260118)


@pytest.fixture
def natural40():
    return FockSpace(40)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call":
                continue
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", rep.nodeid)
            if m:
                detail = dict(rep.user_properties).get("detail", "")
                lines.append((int(m.group(1)), outcome.upper(), m.group(2), detail))
    if lines:
        terminalreporter.section("acceptance criteria")
        for n, outcome, name, detail in sorted(lines):
            terminalreporter.write_line(f"criterion {n} [{outcome}] {name.replace('_', ' ')}  {detail}")
