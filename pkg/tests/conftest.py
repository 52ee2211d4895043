"""Terminal reporting shared by the acceptance tests.

The acceptance module appends (number, passed, name, detail) rows here;
the hook prints them as a block in the summary area, where pytest's
output capture cannot swallow them.
"""

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria", sep="-")
    for num, ok, name, detail in sorted(ACCEPTANCE_RESULTS):
        word = "PASS" if ok else "FAIL"
        terminalreporter.line(f"{num:>2} {word}  {name}  [{detail}]")
