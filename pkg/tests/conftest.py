ACCEPTANCE_RESULTS = []


def record_acceptance(name: str, ok: bool, seconds: float, budget: float) -> None:
    ACCEPTANCE_RESULTS.append((name, ok, seconds, budget))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, seconds, budget in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"{status}  {name}  ({seconds:.2f}s / budget {budget:.0f}s)"
        )
