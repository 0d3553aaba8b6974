import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from whtorsion.chains import dual_complex, identity_map
from whtorsion.fuzz import Gen, random_complex, random_equivalence
from whtorsion.group_ring import GroupSpec
from whtorsion.tlx import TLXDocument, TLXError, emit, parse, parse_group

DATA = Path(__file__).parent / "data"


@st.composite
def documents(draw):
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    m = rng.randint(2, 9)
    G = rng.choice([GroupSpec.cyclic(m), GroupSpec.product(m), GroupSpec.infinite()])
    g = Gen(rng, G)
    X = random_complex(g, rng.randint(1, 3))
    e = random_equivalence(g, X)
    doc = TLXDocument(G)
    doc.add_complex("X", e.map.source)
    doc.add_complex("Y", e.map.target)
    doc.add_map("f", e.map, "X", "Y")
    n = e.map.source.top + 1
    doc.add_map("dx", identity_map(dual_complex(e.map.source, n)), ("dual", "X", n), ("dual", "X", n))
    return doc


@settings(max_examples=40)
@given(documents())
def test_emit_parse_round_trip(doc):
    text = emit(doc)
    back = parse(text)
    assert back == doc
    assert emit(back) == text


def test_fixture_parses_and_builds():
    doc = parse((DATA / "c5_double.tlx").read_text())
    assert str(doc.group) == "C5"
    assert set(doc.doubles) == {"M", "W", "T"}
    W = doc.build_double("W")
    assert W.tau_polarised == W.u


@pytest.mark.parametrize("text, line", [
    ("group C5\ncomplex K\n  ranks 1 1\n  d 1 = [s, 1]\nend\n", 4),
    ("complex K\n  ranks 1\nend\n", 1),
    ("group C5\ncomplex K\n  ranks 1 1\n  d 1 = [s +]\nend\n", 4),
    ("group C5\nmap f\n  source K\nend\n", 3),
    ("group C5\ncomplex K\n  ranks 1\nend\ncomplex K\n  ranks 1\nend\n", 5),
    ("group C5\ncomplex K\n  ranks 1 1\n  d 3 = [1]\nend\n", 4),
    ("group C5\ncomplex K\n  ranks 1\nend\ndouble M\n  base K\n  n 3\n  kind wobbly\nend\n", 8),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(TLXError) as exc:
        parse(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_missing_group_and_unclosed_block():
    with pytest.raises(TLXError):
        parse("")
    with pytest.raises(TLXError):
        parse("group C5\ncomplex K\n  ranks 1\n")


def test_comments_and_blank_lines():
    doc = parse("# header\n\ngroup C7   # the group\ncomplex K\n  ranks 1 1  \n  d 1 = [s - 1]\nend\n")
    assert doc.complexes["K"].ranks == (1, 1)


def test_non_chain_map_rejected():
    text = "group C5\ncomplex K\n  ranks 1 1\n  d 1 = [s - 1]\nend\nmap f\n  source K\n  target K\n  f 0 = [s]\nend\n"
    with pytest.raises(TLXError) as exc:
        parse(text)
    assert exc.value.line == 6


@pytest.mark.parametrize("name", ["C5", "Cinf", "CinfxC3", "C4,ws=-1", "Cinf,wt=-1", "CinfxC6,ws=-1,wt=-1"])
def test_group_names(name):
    assert str(parse_group(name)) == name


@pytest.mark.parametrize("bad", ["C", "C5,wt=-1", "Cinf,ws=-1", "D5"])
def test_bad_group_names(bad):
    with pytest.raises(ValueError):
        parse_group(bad)
