import pytest
from hypothesis import strategies as st

from linkgram.dictionary import load_abridged, load_asset
from linkgram.grammar import LEFT, RIGHT, Connector, ConnectorName
from linkgram.postprocess import load_config_asset


@pytest.fixture(scope="session")
def abridged():
    return load_abridged()


@pytest.fixture(scope="session")
def intro1():
    return load_asset("intro1.dict")


@pytest.fixture(scope="session")
def intro2():
    return load_asset("intro2.dict")


@pytest.fixture(scope="session")
def synthetic():
    return load_asset("synthetic.dict")


@pytest.fixture(scope="session")
def pp_default():
    return load_config_asset()


def corpus_lines():
    """(mark, sentence) pairs from the bundled judgement corpus."""
    from importlib import resources

    text = resources.files("linkgram").joinpath("data/judgements.txt").read_text("utf-8")
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        mark = line[0] if line[0] in "*!" else ""
        out.append((mark, line[1:].strip() if mark else line))
    return out


names = st.builds(
    ConnectorName,
    st.sampled_from(["A", "B", "S", "SX"]),
    st.text(alphabet="ab*", max_size=3),
)


def connectors(direction):
    return st.builds(Connector, names, st.just(direction), st.booleans())


left_connectors = connectors(LEFT)
right_connectors = connectors(RIGHT)
