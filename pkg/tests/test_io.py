"""Plane file round trips and parser diagnostics."""

import pytest
from hypothesis import given, settings, strategies as st

from planecycles import (
    Plane,
    build_affine_classical,
    build_projective_classical,
    field_for_order,
    load_plane,
    save_plane,
)
from planecycles.errors import AxiomViolation, ParseError, PlaneError
from planecycles.planefile import loads_plane

# Hand-derived smallest case.  Points (x,y) -> 2x+y; slope lines m,b -> 2m+b;
# verticals x=c -> 4+c; classes: slope 0, slope 1, vertical.
AG2_TEXT = """\
plane affine order 2 points 4 lines 6
classes 3
class 0: 0 1
class 1: 2 3
class 2: 4 5
line 0: 0 2
line 1: 1 3
line 2: 0 3
line 3: 1 2
line 4: 0 1
line 5: 2 3
"""


def test_generated_ag2_matches_hand_derivation(affine):
    assert affine(2).canonical_text() == AG2_TEXT


def test_loads_hand_written_text():
    pl = loads_plane(AG2_TEXT)
    assert pl.kind == "affine" and pl.order == 2
    assert pl.lines[2] == (0, 3)
    assert pl.parallel_classes[2] == (4, 5)


@pytest.mark.parametrize("q,kind", [(2, "affine"), (3, "affine"), (4, "affine"),
                                    (2, "projective"), (3, "projective"),
                                    (5, "projective")])
def test_save_load_round_trip(tmp_path, q, kind):
    build = build_affine_classical if kind == "affine" else build_projective_classical
    pl = build(field_for_order(q))
    path = tmp_path / f"{kind}{q}.plane"
    save_plane(pl, str(path))
    back = load_plane(str(path))
    assert back.canonical_text() == pl.canonical_text()
    assert back.digest() == pl.digest()
    assert back.parallel_classes == pl.parallel_classes


def test_comments_and_blank_lines_ignored():
    text = "# header comment\n\n" + AG2_TEXT.replace(
        "line 0: 0 2", "line 0: 0 2  # the x axis"
    )
    assert loads_plane(text).canonical_text() == AG2_TEXT


def test_lines_accepted_in_any_order():
    head, *rows = AG2_TEXT.strip().split("\n")
    classes, lines = rows[:4], rows[4:]
    shuffled = "\n".join([head] + classes + lines[::-1]) + "\n"
    assert loads_plane(shuffled).canonical_text() == AG2_TEXT


@pytest.mark.parametrize("mutant", [
    "plane affine order 2 points 4\n",            # truncated header
    "plane diagonal order 2 points 4 lines 6\n",  # unknown kind
    AG2_TEXT.replace("line 5: 2 3", "line 5: 2 x"),       # non-integer point
    AG2_TEXT.replace("line 5: 2 3", "line 7: 2 3"),       # id out of range
    AG2_TEXT.replace("line 5: 2 3", "line 4: 2 3"),       # duplicate id
    AG2_TEXT.replace("line 5: 2 3", "line 5: 2 9"),       # point out of range
    AG2_TEXT + "trailing junk\n",
    AG2_TEXT.replace("classes 3\n", ""),                  # affine needs classes
    AG2_TEXT[:-len("line 5: 2 3\n")],                     # missing a line row
])
def test_malformed_text_raises_parse_error(mutant):
    with pytest.raises(ParseError):
        loads_plane(mutant)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        loads_plane(AG2_TEXT.replace("line 5: 2 3", "line 5: 2 x"))
    assert exc.value.line == 11
    assert exc.value.column == 11


def test_well_formed_but_invalid_geometry_is_rejected():
    # structurally fine, but line 5 duplicates line 4's point pair coverage
    bad = AG2_TEXT.replace("line 5: 2 3", "line 5: 0 1")
    with pytest.raises(AxiomViolation):
        loads_plane(bad)


@given(st.permutations(range(12)))
@settings(max_examples=30, deadline=None)
def test_relabelled_planes_survive_round_trip(perm):
    base = build_affine_classical(field_for_order(3))
    lines = [base.lines[perm[i]] for i in range(12)]
    inv = {perm[i]: i for i in range(12)}
    classes = tuple(tuple(sorted(inv[i] for i in cls)) for cls in base.parallel_classes)
    pl = Plane("affine", 3, 9, lines, parallel_classes=classes)
    again = loads_plane(pl.canonical_text())
    assert again.canonical_text() == pl.canonical_text()


@given(st.text(alphabet="plane afforder 0123:\n #", max_size=200))
@settings(max_examples=200, deadline=None)
def test_parser_never_crashes(text):
    try:
        loads_plane(text)
    except PlaneError:
        pass  # ParseError or AxiomViolation are the only acceptable outcomes
