import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in range(1, 11):
        if n not in results:
            tr.write_line(f"criterion {n:2d}: NOT RUN")
            continue
        ok, detail = results[n]
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
