import pytest

CRITERIA = {
    1: "inner pair sums take the two values p-1 / -1 (p <= 100)",
    2: "direct pair sums factor over primes (m <= 1000)",
    3: "branch and bound equals the oracle (m <= 40)",
    4: "F(m) is caged by every applicable bound (m <= 1000)",
    5: "F(p) = 1 for primes p = 3 mod 4, p <= 200",
    6: "closing contradiction for m = 15, |A| = 837",
    7: "proof inequalities for the first n primes and random tuples",
    8: "product and Ramsey constructions are valid; F is supermultiplicative",
    9: "covering families obey the product bound and have full rank",
}

_results: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record the outcome of an acceptance criterion for the terminal summary."""
    def record(number: int, passed: bool, detail: str = ""):
        _results[number] = (bool(passed), detail)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, title in CRITERIA.items():
        if number in _results:
            ok, detail = _results[number]
            tag = "PASS" if ok else "FAIL"
        else:
            tag, detail = "NOT RUN", ""
        line = f"criterion {number}: {tag} - {title}"
        tr.write_line(line + (f" [{detail}]" if detail else ""))
