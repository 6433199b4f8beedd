from itertools import combinations, product

import pytest

from gapbound.boundary import build_ground_space, lagrangian_by_key
from gapbound.theory import build_theory

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def _record(criterion: int, name: str, passed: bool, detail: str) -> None:
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {criterion:2d} [{status}] {name}: {detail}")

    return _record


@pytest.fixture(scope="session")
def z3():
    return build_theory(3)


@pytest.fixture(scope="session")
def e3(z3):
    return lagrangian_by_key(z3, "e")


@pytest.fixture(scope="session")
def m3(z3):
    return lagrangian_by_key(z3, "m")


@pytest.fixture(scope="session")
def qutrit(e3):
    return build_ground_space([e3, e3])


@pytest.fixture(scope="session")
def two_qutrits(e3, m3):
    return build_ground_space([e3, e3, m3, m3])


# --- independent oracles on plain integer pairs --------------------------------

def oracle_lagrangians(n: int) -> set[frozenset]:
    """Brute-force scan of all n-element subsets of Z_n x Z_n containing 0."""
    pairs = [(x, y) for x in range(n) for y in range(n) if (x, y) != (0, 0)]
    out = set()
    for rest in combinations(pairs, n - 1):
        sub = frozenset({(0, 0), *rest})
        closed = all(((a + c) % n, (b + d) % n) in sub for (a, b), (c, d) in product(sub, sub))
        bosonic = all(a * b % n == 0 for a, b in sub)
        transparent = all((b * c + a * d) % n == 0 for (a, b), (c, d) in product(sub, sub))
        if closed and bosonic and transparent:
            out.add(sub)
    return out


def oracle_gsd(subgroups, n: int) -> int:
    return sum(
        1
        for lab in product(*subgroups)
        if sum(a for a, _ in lab) % n == 0 and sum(b for _, b in lab) % n == 0
    )


def pairs_of(algebra) -> frozenset:
    return frozenset(a.as_pair() for a in algebra.condensed)
