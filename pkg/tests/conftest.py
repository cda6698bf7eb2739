import pytest

from pn2sc import kernel
from pn2sc.pn_io import parse_petri_net

QTR = "place q\nplace r\ntransition t\narc q t\narc t r\n"


def net(text):
    return parse_petri_net(text)


@pytest.fixture
def qtr():
    return parse_petri_net(QTR)


@pytest.fixture(params=sorted(kernel.available()))
def kern(request):
    return kernel.available()[request.param]


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def mixed_net(seed, max_places=12):
    """Alternate unstructured and perturbed series-parallel nets."""
    from pn2sc.bench import perturbed_sp, random_net
    make = random_net if seed % 2 == 0 else perturbed_sp
    return make(seed, max_places=max_places)
