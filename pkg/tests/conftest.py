import pytest

from qkline import KTEngine, named_datum

_ENGINES: dict[str, KTEngine] = {}


def engine_for(label: str) -> KTEngine:
    """One shared engine per group so memo caches persist across tests."""
    got = _ENGINES.get(label)
    if got is None:
        got = KTEngine(named_datum(label))
        _ENGINES[label] = got
    return got


@pytest.fixture(scope="session")
def engine():
    return engine_for
