import pytest

# criterion number -> (title, passed), filled from tests marked by ``criterion``
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def criterion(num: int):
    """Tags an acceptance test so its verdict is printed as one PASS/FAIL line."""
    def tag(fn):
        fn.criterion = num
        return fn
    return tag


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    num = getattr(getattr(item, "function", None), "criterion", None)
    if num is None or report.when != "call":
        return
    title = item.function.__doc__.strip().splitlines()[0]
    ACCEPTANCE[num] = (title, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}")
