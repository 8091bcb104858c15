import pathlib

import matplotlib
import pytest

matplotlib.use("Agg")

GOLDEN_DIR = pathlib.Path(__file__).parent / "tests" / "data"


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="Run the sweeps up to the full curvature bounds.")
    parser.addoption("--update-golden", action="store_true", default=False,
                     help="Rewrite the golden files under tests/data.")


def pytest_configure(config):
    config.addinivalue_line("markers",
                            "slow: sweeps up to the full curvature bounds")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


class GoldenFiles():
    """
    Byte-for-byte comparison against the files under tests/data. A missing
    file, or every file under --update-golden, is written from the current
    output instead.

    """
    def __init__(self, root: pathlib.Path, update: bool):
        self.root = root
        self.update = update

    def check(self, name: str, data: bytes):
        path = self.root / name
        if self.update or not path.exists():
            self.root.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
            if not self.update:
                pytest.skip(f"Wrote new golden file {path}; commit it")
            return
        assert data == path.read_bytes(), f"{name} differs from {path}"


@pytest.fixture
def golden(request):
    return GoldenFiles(GOLDEN_DIR, request.config.getoption("--update-golden"))
