"""Shared fixtures: the golden district artifacts and tiny helper builders.

Also wires the acceptance summary: tests marked
``@pytest.mark.acceptance("<criterion>")`` get one PASS/FAIL line each at
the end of the run.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from quotacount import (
    CandidateRecord,
    CategoryBound,
    CriterionSpec,
    ElectionConfig,
    TallyResult,
)
from quotacount.model import read_config_json
from quotacount.tally import read_ballots_csv, read_tally_csv, tally_from_votes

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "monthey"

ELECTED = frozenset("ABCDEFGHIJKLM") | frozenset({"S", "T", "W", "Z"})


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): named acceptance criterion"
    )
    config.addinivalue_line("markers", "slow: long-running (oracle suites)")


_acceptance_results: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and rep.when == "call":
        name = marker.args[0]
        if rep.passed:
            verdict = "PASS"
        elif rep.skipped:
            verdict = "SKIP"
        else:
            verdict = "FAIL"
        # a criterion may span several tests; any failure taints it
        if _acceptance_results.get(name) != "FAIL":
            _acceptance_results[name] = verdict


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in _acceptance_results.items():
        terminalreporter.write_line(f"{verdict}  {name}")


@pytest.fixture(scope="session")
def monthey_config() -> ElectionConfig:
    return read_config_json(FIXTURES / "config.json")


@pytest.fixture(scope="session")
def monthey_tally(monthey_config) -> TallyResult:
    return tally_from_votes(read_tally_csv(FIXTURES / "tally.csv"))


@pytest.fixture(scope="session")
def monthey_ballots():
    ballots, warnings = read_ballots_csv(FIXTURES / "phase2_ballots.csv")
    assert not warnings
    return ballots


@pytest.fixture(scope="session")
def monthey_outcome_dict() -> dict:
    return json.loads((FIXTURES / "outcome.json").read_text(encoding="utf-8"))


def make_candidate(cid: str, **attrs: str) -> CandidateRecord:
    return CandidateRecord(cid, f"Candidate {cid}", dict(attrs))


def make_config(
    roster,
    criteria=(),
    seats=2,
    max_selections=None,
    **kwargs,
) -> ElectionConfig:
    return ElectionConfig(
        election_id="test",
        seats=seats,
        max_selections=max_selections if max_selections is not None else seats,
        roster=tuple(roster),
        criteria=tuple(criteria),
        **kwargs,
    )


def make_tally(votes: dict[str, int]) -> TallyResult:
    return TallyResult(
        votes=votes,
        total_votes_cast=sum(votes.values()),
        ballots_counted=max(votes.values(), default=0),
    )
