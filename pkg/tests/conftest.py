import pytest

from biovi import quantity as qty


@pytest.fixture(autouse=True)
def checked_mode():
    # every test starts in checked mode regardless of BIOVI_MODE
    with qty.evaluation_mode(qty.CHECKED):
        yield
