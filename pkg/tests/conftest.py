import pytest

from sigmagroups.explorer import build_tree
from sigmagroups.freetower import build_free_quotient
from sigmagroups.ipad import Ipad

# The ten IPADs of the top-ten measure table, in table order.
TOP_TEN = [
    "[[3,3]; [3,3]^3 [3,9]]",
    "[[3,3]; [3,3]^3 [3,3,3]]",
    "[[3,3]; [3,3]^3 [9,9]]",
    "[[3,9]; [3,3,3] [3,9]^2 [3,27]]",
    "[[3,3]; [3,3,3] [3,9]^3]",
    "[[3,3]; [3,3]^3 [9,27]]",
    "[[3,9]; [3,3,9] [3,9]^3]",
    "[[3,9]; [3,3,3] [3,3,9] [3,9]^2]",
    "[[3,3]; [3,3,3]^2 [3,9]^2]",
    "[[3,3]; [3,3,3]^3 [3,9]]",
]

# Published measures of the same ten IPADs, with their printed decimals.
TOP_TEN_MEASURES = [
    ("8320/19683", "0.4227"),
    ("1664/6561", "0.2536"),
    ("3328/59049", "0.0564"),
    ("3328/59049", "0.0564"),
    ("1664/59049", "0.0282"),
    ("13312/531441", "0.0250"),
    ("11648/531441", "0.0219"),
    ("3328/177147", "0.0188"),
    ("832/59049", "0.0141"),
    ("832/59049", "0.0141"),
]

# Observed proportions of the census in the five windows, as printed, with the
# OTHER row last.
OBSERVED = [
    ("0.4815", "0.4574", "0.4428", "0.4361", "0.4322"),
    ("0.2432", "0.2555", "0.2574", "0.2559", "0.2552"),
    ("0.0523", "0.0566", "0.0548", "0.0555", "0.0554"),
    ("0.0470", "0.0491", "0.0538", "0.0552", "0.0555"),
    ("0.0324", "0.0293", "0.0282", "0.0282", "0.0285"),
    ("0.0251", "0.0220", "0.0240", "0.0243", "0.0245"),
    ("0.0157", "0.0192", "0.0202", "0.0209", "0.0215"),
    ("0.0111", "0.0149", "0.0180", "0.0179", "0.0181"),
    ("0.0164", "0.0142", "0.0137", "0.0140", "0.0139"),
    ("0.0094", "0.0112", "0.0124", "0.0134", "0.0137"),
    ("0.0659", "0.0707", "0.0746", "0.0786", "0.0815"),
]
OTHER_PREDICTED = "0.0888"


@pytest.fixture(scope="session")
def top_ten():
    return [Ipad.parse(t) for t in TOP_TEN]


@pytest.fixture(scope="session")
def fq1():
    return build_free_quotient(3, 2, 1)


@pytest.fixture(scope="session")
def fq2():
    return build_free_quotient(3, 2, 2)


@pytest.fixture(scope="session")
def fq3():
    return build_free_quotient(3, 2, 3)


@pytest.fixture(scope="session")
def tree3():
    """Complete sigma-ancestor tree of class <= 3 for (p, g) = (3, 2)."""
    return build_tree(3, 2, max_class=3)


@pytest.fixture(scope="session")
def class2(tree3):
    """G_1, G_2, G_3: the class-2 ancestors, ordered by order."""
    kids = sorted(tree3.children("R"), key=lambda n: n.order_exp)
    assert [k.order_exp for k in kids] == [3, 4, 5]
    return kids


# ---- acceptance summary ------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    num = int(name.split("_")[2])
    ok = report.passed
    prev = _ACCEPTANCE.get(num)
    _ACCEPTANCE[num] = (name, ok if prev is None else (prev[1] and ok))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        name, ok = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {name}")
