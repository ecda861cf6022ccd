from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
INSTANCES = ROOT / "instances"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(k for k in verdicts if isinstance(k, int)):
        ok, detail = verdicts[n]
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
