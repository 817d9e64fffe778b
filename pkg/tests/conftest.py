import pytest

from tropeig.jordan import catalog_families
from tropeig.models import effective_liouvillian_example


@pytest.fixture(scope="session")
def catalogs():
    return {n: catalog_families(n) for n in (2, 3, 4)}


@pytest.fixture(scope="session")
def eff_liouvillian():
    return effective_liouvillian_example()
