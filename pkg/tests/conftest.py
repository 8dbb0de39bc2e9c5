from pathlib import Path

import pytest

from esbc.logic import LinearOrder, Signature
from esbc.operators import load_orders
from esbc.space import load_space
import json

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture
def sig1():
    return Signature(("a",))


@pytest.fixture
def sig2():
    return Signature(("a", "b"))


@pytest.fixture
def e1():
    return load_space((DATA / "e1.json").read_bytes())


@pytest.fixture
def e2():
    return load_space((DATA / "e2.json").read_bytes())


@pytest.fixture
def ex2_orders(e2):
    return load_orders(json.loads((DATA / "ex2_orders.json").read_text()), e2)


@pytest.fixture
def e1_order(sig1):
    # a before not-a
    return LinearOrder.parse("1,0", sig1)
