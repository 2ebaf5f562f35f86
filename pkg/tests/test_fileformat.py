import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlattice import builtin_corpus, construct_family
from cdlattice.errors import GroupFileSyntaxError, NotAGroup, OrderCapExceeded
from cdlattice.families import WREATH_GENERATORS, dihedral
from cdlattice.fileformat import (
    parse_group_file,
    read_group_file,
    serialize_group,
    serialize_permutation_group,
    write_group_file,
)

CORPUS = builtin_corpus(32, (2, 3))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(CORPUS))
def test_round_trip(item):
    label, g = item
    h = parse_group_file(serialize_group(g, label))
    assert h.name == label
    assert (h.table == g.table).all()


def test_one_based_and_relabelled_identity():
    text = "cdgroup 1\norder 3\n2 3 1\n3 1 2\n1 2 3\n"
    g = parse_group_file(text)
    assert g.order == 3 and g.is_abelian
    assert list(g.table[0]) == [0, 1, 2]


def test_permutation_file():
    text = serialize_permutation_group(9, WREATH_GENERATORS, "W")
    g = parse_group_file(text)
    assert g.order == 81 and g.name == "W"


def test_comments_and_file_stem(tmp_path):
    path = tmp_path / "d8.grp"
    write_group_file(path, construct_family(dihedral(3)))
    assert read_group_file(path).name == "D8"
    path.write_text("# a comment\ncdgroup 1\norder 2\n0 1\n# mid\n1 0\n")
    assert read_group_file(path).name == "d8"


@pytest.mark.parametrize("text, line", [
    ("", None),
    ("cdgroup 2\norder 1\n0\n", 1),
    ("grp 1\n", 1),
    ("cdgroup 1\nsize 2\n", 2),
    ("cdgroup 1\norder two\n", 2),
    ("cdgroup 1\norder 2\n0 1\n", None),
    ("cdgroup 1\norder 2\n0 1\n1\n", 4),
    ("cdgroup 1\norder 2\n0 1\n1 x\n", 4),
    ("cdperm 1\ndegree 3\n(1 4)\n", 3),
])
def test_syntax_errors(text, line):
    with pytest.raises(GroupFileSyntaxError) as info:
        parse_group_file(text)
    assert info.value.line == line


def test_column_reported():
    with pytest.raises(GroupFileSyntaxError) as info:
        parse_group_file("cdgroup 1\norder 2\n0 1\n1 -0\n")
    assert info.value.column == 3


def test_semantic_errors():
    with pytest.raises(NotAGroup):
        parse_group_file("cdgroup 1\norder 2\n0 1\n1 1\n")
    with pytest.raises(OrderCapExceeded):
        parse_group_file("cdgroup 1\norder 2\n0 1\n1 0\n", cap=1)
