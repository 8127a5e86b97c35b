import pytest


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels_warm():
    """Compile the enumeration kernels once, outside any timed assertions."""
    try:
        from quandles import _fastenum

        _fastenum.warmup()
    except ImportError:
        pass
    yield
