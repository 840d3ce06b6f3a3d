import pytest

from driftnet.bundled import demo_network


@pytest.fixture(scope="session")
def built_network():
    """Default end-to-end network (65 maturity + 14 drift + 1 target node)."""
    return demo_network(seed=42)
