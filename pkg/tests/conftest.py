ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, limit, note in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        line = f"{status} criterion {number:2d}: {title} ({elapsed:.2f}s, limit {limit:g}s)"
        if note:
            line += f" -- {note}"
        terminalreporter.write_line(line)
