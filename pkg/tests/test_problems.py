import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relim import (
    Configuration,
    Constraint,
    Problem,
    ProblemError,
    ResourceCapError,
    mis_graph_problem,
    parse_problem,
    render_problem,
    validate_labeling,
)

MIS_TEXT = """\
M M M
P O O
---
M P
M O
O O
"""


def test_parse_mis_plain():
    p = parse_problem(MIS_TEXT)
    assert p.labels == ("M", "O", "P")
    assert p.delta == 3 and p.rank == 2
    assert p == mis_graph_problem(3)


def test_parse_regex_form_matches_plain():
    text = "M^3\nP O^2\n---\n[M O] O\nM P\n"
    assert parse_problem(text) == mis_graph_problem(3)


def test_render_round_trip_plain_and_condensed():
    p = mis_graph_problem(3)
    for condensed in (False, True):
        text = render_problem(p, condensed=condensed)
        assert parse_problem(text) == p


def test_render_is_deterministic():
    a = render_problem(mis_graph_problem(3))
    b = render_problem(parse_problem(MIS_TEXT))
    assert a == b


def test_comments_and_blank_lines_ignored():
    noisy = "# leading\nM M M\n\nP O O  # trailing\n---\nM P\nM O\nO O\n"
    assert parse_problem(noisy) == mis_graph_problem(3)


def test_configuration_is_permutation_invariant():
    assert Configuration.of([2, 0, 1]) == Configuration.of([1, 2, 0])
    assert Configuration.of([1, 1, 0]).counts() == ((0, 1), (1, 2))


def test_constraint_rejects_mixed_arity():
    with pytest.raises(ProblemError):
        Constraint.of([(0, 0), (0, 0, 0)])


def test_unused_label_rejected():
    with pytest.raises(ProblemError, match="never used"):
        Problem(
            ("A", "B"),
            Constraint.of([(0, 0)]),
            Constraint.of([(0, 0)]),
        )


def test_unsorted_alphabet_rejected():
    with pytest.raises(ProblemError):
        Problem(
            ("B", "A"),
            Constraint.of([(0, 1)]),
            Constraint.of([(0, 1)]),
        )


class TestMalformedText:
    @pytest.mark.parametrize(
        "text",
        [
            "M M\n",  # only one section
            "M M\n---\nM\n---\nM\n",  # three sections
            "M M\nM\n---\nM M\n",  # arity clash inside a section
            "M^0 M\n---\nM M\n",  # zero exponent
            "M^x\n---\nM\n",  # non-numeric exponent
            "[M\n---\nM M\n",  # unclosed group
            "[] M\n---\nM M\n",  # empty group
            "^2\n---\nM M\n",  # dangling exponent
            "---\nM M\n",  # empty node section
        ],
    )
    def test_rejected(self, text):
        with pytest.raises(ProblemError):
            parse_problem(text)


def test_empty_constraint_marker_round_trips():
    text = "A A\n---\n(empty 2)\n"
    p = parse_problem(text)
    assert len(p.edge_constraint) == 0
    assert p.rank == 2
    assert render_problem(p) == text


def test_expansion_cap():
    wide = " ".join("[a b c d e f]" for _ in range(8))
    with pytest.raises(ResourceCapError):
        parse_problem(f"{wide}\n---\na a a a a a a a\n", cap=1000)


names = st.sampled_from(["A", "B", "C", "D"])
words = st.lists(names, min_size=2, max_size=2).map(tuple)


@settings(max_examples=60, deadline=None)
@given(
    node=st.sets(words, min_size=1, max_size=5),
    edge=st.sets(words, min_size=1, max_size=5),
)
def test_round_trip_random_problems(node, edge):
    used = {x for w in node | edge for x in w}
    node = list(node) + [(n, n) for n in sorted(used)]
    try:
        p = Problem.make(node, sorted(edge), 2, 2)
    except ProblemError:
        return
    assert parse_problem(render_problem(p)) == p
    assert parse_problem(render_problem(p, condensed=True)) == p


class _Star:
    """Three nodes all pinned by one shared edge plus a private leaf edge."""

    nodes = (1, 2, 3)
    pins = {10: (1, 2, 3), 11: (1,), 12: (2,), 13: (3,)}

    def incident_edges(self, v):
        return sorted(e for e, ps in self.pins.items() if v in ps)


def test_validate_labeling_flags_bad_edge():
    p = Problem.make([("M", "M"), ("P", "P")], [("M", "M", "P")], 2, 3)
    h = _Star()
    labeling = {(v, e): "M" for e, ps in h.pins.items() for v in ps}
    report = validate_labeling(p, h, labeling)
    assert not report.ok
    assert any("edge 10" in v for v in report.violations)
    # the three leaf edges are below rank and only noted
    assert len(report.notes) == 3


def test_validate_labeling_rejects_foreign_label():
    p = mis_graph_problem(2)
    h = _Star()
    with pytest.raises(ProblemError):
        validate_labeling(p, h, {(1, 10): "Z"})
