"""Small ready-made automata and ipomsets used in tests, docs and the CLI.

The centrepiece is :func:`grid_automaton`, a two-dimensional automaton
whose bounded language works out to exactly ten pomsets; it exercises
every feature at once: concurrency squares, an interleaving-only region,
and two accepting cells reached by different event mixes.
"""

from __future__ import annotations

from hdalang.hda import Hda
from hdalang.ipomset import Ipomset
from hdalang.precubical import PrecubicalSet


def edge_automaton(
    label: str = "a", *, with_start: bool = True, with_accept: bool = True
) -> Hda:
    """A single labelled edge; optionally marked at its endpoints.

    With both marks its bounded language is the ideal of the one-event
    ipomset ``(label)``.
    """
    carrier = PrecubicalSet(
        {"v0": (), "v1": (), "e": (label,)},
        {("e", 0, 1): "v0", ("e", 1, 1): "v1"},
    )
    return Hda(
        carrier,
        frozenset({"v0"} if with_start else ()),
        frozenset({"v1"} if with_accept else ()),
    )


def grid_automaton() -> Hda:
    """A 3x3 vertex grid with two filled squares and two accepting cells.

    Geometry (columns left to right, rows bottom to top)::

        v02 --b2--> v12             v22
         ^           ^               ^
         c0          c1              c2
         |           |               |
        v01 --b1--> v11 --d1-->     v21
         ^           ^               ^
         a0   [ba]   a1     [da]     a2
         |           |               |
        v00 --b0--> v10 --d0-->     v20

    The two bottom squares are filled (``b`` with ``a``, then ``d`` with
    ``a``); the top-right region has no ``d`` edge at the top, so ``c``
    there only happens after ``d``.  The start is the bottom-left vertex;
    the accepting cells are the top-middle and top-right vertices.
    """
    cells: dict[str, tuple[str, ...]] = {}
    for col in range(3):
        for row in range(3):
            cells[f"v{col}{row}"] = ()
    for col, label in ((0, "b"), (1, "d")):
        for row in (0, 1):
            cells[f"{label}{row}"] = (label,)
    cells["b2"] = ("b",)
    for col in range(3):
        cells[f"a{col}"] = ("a",)
        cells[f"c{col}"] = ("c",)
    cells["sq_ba"] = ("b", "a")
    cells["sq_da"] = ("d", "a")

    faces: dict[tuple[str, int, int], str] = {}
    # Horizontal edges: b spans columns 0->1, d spans 1->2.
    for row in range(3):
        faces[(f"b{row}", 0, 1)] = f"v0{row}"
        faces[(f"b{row}", 1, 1)] = f"v1{row}"
    for row in (0, 1):
        faces[(f"d{row}", 0, 1)] = f"v1{row}"
        faces[(f"d{row}", 1, 1)] = f"v2{row}"
    # Vertical edges: a spans rows 0->1, c spans rows 1->2.
    for col in range(3):
        faces[(f"a{col}", 0, 1)] = f"v{col}0"
        faces[(f"a{col}", 1, 1)] = f"v{col}1"
        faces[(f"c{col}", 0, 1)] = f"v{col}1"
        faces[(f"c{col}", 1, 1)] = f"v{col}2"
    # Filled squares; position 1 is the horizontal letter, position 2 the a.
    faces[("sq_ba", 0, 1)] = "a0"
    faces[("sq_ba", 1, 1)] = "a1"
    faces[("sq_ba", 0, 2)] = "b0"
    faces[("sq_ba", 1, 2)] = "b1"
    faces[("sq_da", 0, 1)] = "a1"
    faces[("sq_da", 1, 1)] = "a2"
    faces[("sq_da", 0, 2)] = "d0"
    faces[("sq_da", 1, 2)] = "d1"

    return Hda(
        PrecubicalSet(cells, faces),
        frozenset({"v00"}),
        frozenset({"v12", "v22"}),
    )


def pushout_span() -> tuple[Hda, Hda, Hda, dict[str, str], dict[str, str]]:
    """A span whose three corners all have empty languages.

    The apex is an unmarked vertex; the left automaton is an ``a`` edge
    with only a start, the right a ``c`` edge with only an accept.  The
    legs send the apex to the left automaton's final vertex and the right
    automaton's initial vertex, so the pushout concatenates the edges and
    accepts exactly the sequential behaviour ``a`` then ``c`` -- a language
    strictly larger than the union of the corners'.

    Returns:
        ``(apex, left, right, into_left, into_right)``.
    """
    apex = Hda(PrecubicalSet({"p": ()}, {}), frozenset(), frozenset())
    left = edge_automaton("a", with_start=True, with_accept=False)
    right = edge_automaton("c", with_start=False, with_accept=True)
    return apex, left, right, {"p": "v1"}, {"p": "v0"}


def two_plus_two_ipomset() -> Ipomset:
    """Two disjoint chains ``a`` before ``b``, mutually concurrent.

    The smallest precedence order that is *not* an interval order; feeding
    it to the interval recogniser returns a witness quadruple.
    """
    return Ipomset(
        labels=("a", "b", "a", "b"),
        precedence=frozenset({(0, 1), (2, 3)}),
        sources=frozenset(),
        targets=frozenset(),
    )
