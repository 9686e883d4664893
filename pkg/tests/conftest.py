import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in criterion order."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid and rep.when == "call" or (
                    "test_acceptance.py" in nodeid and outcome != "passed"):
                lines.append((nodeid, "PASS" if outcome == "passed" else "FAIL"))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    seen = set()
    for nodeid, verdict in sorted(lines, key=lambda x: _order(x[0])):
        if nodeid in seen:
            continue
        seen.add(nodeid)
        terminalreporter.write_line(f"{verdict}  {nodeid.split('::')[-1]}")


def _order(nodeid):
    name = nodeid.split("::")[-1]
    digits = "".join(ch for ch in name.split("_")[1] if ch.isdigit()) if "_" in name else ""
    return int(digits) if digits else 99
