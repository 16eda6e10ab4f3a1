"""Higher-dimensional automata and their bounded languages.

A higher-dimensional automaton (HDA) is a precubical set with two sets of
marked cells: starting cells, where computations may begin, and accepting
cells, where they may end.  A cell of dimension ``d`` stands for a state
in which ``d`` labelled events run concurrently; moving to an upper cell
starts events, moving to a lower face finishes them.

A computation is a path of such moves.  Its observable content is an
ipomset: every event started along the way, ordered by "finished before
the other started", with the events active at the two ends as interfaces.
The language of an automaton collects the labels of its accepting paths
and is closed under subsumption; since cyclic automata have unboundedly
many events, languages here are always extracted *up to an event budget*.

Paths whose accumulated precedence contradicts the order in which
concurrent events were started admit no canonical label; they are
excluded from the extraction.  Every behaviour such a path implements is
also implemented by a representable path of the same automaton (its label
would refine one with strictly less precedence that is representable), so
bounded languages are unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from hdalang.ipomset import (
    InternalOrderCycle,
    Ipomset,
    glue,
    identity,
)
from hdalang.language import Language, normalize
from hdalang.precubical import (
    PrecubicalInvariant,
    PrecubicalMap,
    PrecubicalSet,
    UnknownCell,
    coproduct,
    finite_colimit,
    tensor,
    tensor_cell_id,
    validate_precubical_map,
)


# --- automata -------------------------------------------------------------------


@dataclass(frozen=True)
class Hda:
    """A precubical set with start and accept markings.

    Attributes:
        carrier: the underlying precubical set.
        start: cells (of any dimension) where paths may begin.
        accept: cells (of any dimension) where paths may end.
    """

    carrier: PrecubicalSet
    start: frozenset[str]
    accept: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", frozenset(self.start))
        object.__setattr__(self, "accept", frozenset(self.accept))
        for cell in self.start | self.accept:
            if cell not in self.carrier.cells:
                raise UnknownCell(f"marked cell {cell!r} is not in the carrier")


def validate_hda_map(
    source: Hda, target: Hda, mapping: Mapping[str, str]
) -> list[str]:
    """Check that ``mapping`` is an HDA morphism.

    It must be a precubical map of the carriers that sends start cells to
    start cells and accept cells to accept cells.
    """
    problems = validate_precubical_map(source.carrier, target.carrier, mapping)
    if problems:
        return problems
    for cell in sorted(source.start):
        if mapping[cell] not in target.start:
            problems.append(f"start cell {cell!r} maps to unmarked {mapping[cell]!r}")
    for cell in sorted(source.accept):
        if mapping[cell] not in target.accept:
            problems.append(f"accept cell {cell!r} maps to unmarked {mapping[cell]!r}")
    return problems


@dataclass(frozen=True)
class HdaMap:
    """A validated morphism of higher-dimensional automata."""

    source: Hda
    target: Hda
    mapping: dict[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", dict(self.mapping))
        problems = validate_hda_map(self.source, self.target, self.mapping)
        if problems:
            raise PrecubicalInvariant(problems)

    def __call__(self, cell: str) -> str:
        return self.mapping[cell]


# --- paths ------------------------------------------------------------------------


@dataclass(frozen=True)
class UpStep:
    """Start the events at these positions of the *target* cell (1-based)."""

    positions: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", frozenset(self.positions))


@dataclass(frozen=True)
class DownStep:
    """Finish the events at these positions of the *source* cell (1-based)."""

    positions: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", frozenset(self.positions))


Step = UpStep | DownStep


@dataclass(frozen=True)
class Path:
    """An alternating sequence of cells and steps; one more cell than steps."""

    cells: tuple[str, ...]
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "steps", tuple(self.steps))
        if len(self.cells) != len(self.steps) + 1:
            raise ValueError("a path needs exactly one more cell than steps")
        if not self.cells:
            raise ValueError("a path visits at least one cell")

    @property
    def first(self) -> str:
        return self.cells[0]

    @property
    def last(self) -> str:
        return self.cells[-1]


def validate_path(automaton: Hda, path: Path) -> None:
    """Check each step of ``path`` against the carrier's face structure.

    Raises:
        UnknownCell / PositionOutOfRange: a cell or position is absent.
        ValueError: a step does not connect its adjacent cells.
    """
    carrier = automaton.carrier
    for cell in path.cells:
        carrier.word(cell)
    for k, step in enumerate(path.steps):
        here, there = path.cells[k], path.cells[k + 1]
        if isinstance(step, UpStep):
            if not step.positions:
                raise ValueError(f"step {k} starts no event")
            if carrier.apply_face(there, lower=step.positions) != here:
                raise ValueError(
                    f"step {k}: cell {there!r} with unstarted {sorted(step.positions)} "
                    f"is not {here!r}"
                )
        else:
            if not step.positions:
                raise ValueError(f"step {k} finishes no event")
            if carrier.apply_face(here, upper=step.positions) != there:
                raise ValueError(
                    f"step {k}: finishing {sorted(step.positions)} in {here!r} "
                    f"does not give {there!r}"
                )


# --- path labels -------------------------------------------------------------------


def _up_label(word: Sequence[str], started: frozenset[int]) -> Ipomset:
    """Label of an up-step into a cell with ``word``; ``started`` is fresh."""
    n = len(word)
    return Ipomset(
        labels=tuple(word),
        precedence=frozenset(),
        sources=frozenset(p - 1 for p in range(1, n + 1) if p not in started),
        targets=frozenset(range(n)),
    )


def _down_label(word: Sequence[str], finished: frozenset[int]) -> Ipomset:
    """Label of a down-step out of a cell with ``word``."""
    n = len(word)
    return Ipomset(
        labels=tuple(word),
        precedence=frozenset(),
        sources=frozenset(range(n)),
        targets=frozenset(p - 1 for p in range(1, n + 1) if p not in finished),
    )


def ev_label(automaton: Hda, path: Path) -> Ipomset:
    """The ipomset observed along a path.

    The label starts as the identity on the first cell's word and glues in
    one slice per step: an up-step contributes its target cell's events
    with the fresh ones unsourced, a down-step removes the finished events
    from the target interface.  Events active in the first cell are
    sources, events active in the last cell are targets.

    Raises:
        InternalOrderCycle: the path's precedence contradicts the order in
            which its concurrent events started, so it has no canonical
            label; see the module docstring.
    """
    validate_path(automaton, path)
    carrier = automaton.carrier
    label = identity(carrier.word(path.first))
    for k, step in enumerate(path.steps):
        if isinstance(step, UpStep):
            label = glue(label, _up_label(carrier.word(path.cells[k + 1]), step.positions))
        else:
            label = glue(label, _down_label(carrier.word(path.cells[k]), step.positions))
    return label


# --- path and language enumeration ---------------------------------------------------


def _up_index(carrier: PrecubicalSet) -> dict[str, list[tuple[str, frozenset[int]]]]:
    """For each cell, the up-steps leaving it: ``(bigger cell, started positions)``."""
    index: dict[str, list[tuple[str, frozenset[int]]]] = {c: [] for c in carrier.cells}
    for big in carrier.sorted_cells():
        d = len(carrier.cells[big])
        for r in range(1, d + 1):
            for positions in combinations(range(1, d + 1), r):
                started = frozenset(positions)
                small = carrier.apply_face(big, lower=started)
                index[small].append((big, started))
    return index


def _down_choices(dim: int) -> list[frozenset[int]]:
    """All non-empty position sets that a down-step from dimension ``dim`` may finish."""
    return [
        frozenset(c)
        for r in range(1, dim + 1)
        for c in combinations(range(1, dim + 1), r)
    ]


def enumerate_accepting_paths(automaton: Hda, max_events: int) -> Iterator[Path]:
    """Yield every accepting path that starts at most ``max_events`` events.

    Paths begin in a start cell and end in an accept cell; the events
    already active at the start count against the budget.  Every up-step
    starts at least one event and every down-step finishes at least one,
    so between consecutive up-steps the dimension strictly decreases and
    the walk is finite even on cyclic automata.
    """
    carrier = automaton.carrier
    ups = _up_index(carrier)

    def walk(cell: str, budget: int, cells: list[str], steps: list[Step]) -> Iterator[Path]:
        if cell in automaton.accept:
            yield Path(tuple(cells), tuple(steps))
        for bigger, started in ups[cell]:
            if len(started) <= budget:
                cells.append(bigger)
                steps.append(UpStep(started))
                yield from walk(bigger, budget - len(started), cells, steps)
                cells.pop()
                steps.pop()
        for finished in _down_choices(carrier.dim(cell)):
            smaller = carrier.apply_face(cell, upper=finished)
            cells.append(smaller)
            steps.append(DownStep(finished))
            yield from walk(smaller, budget, cells, steps)
            cells.pop()
            steps.pop()

    for cell in sorted(automaton.start):
        active = carrier.dim(cell)
        if active <= max_events:
            yield from walk(cell, max_events - active, [cell], [])


def language(automaton: Hda, max_events: int) -> Language:
    """The automaton's language up to ``max_events`` events.

    Explores reachable pairs of (cell, accumulated label) with memoisation:
    the label's target interface always lists the current cell's active
    events in word order, so the pair determines all future behaviour.
    Labels are collected at accepting cells and normalised into a
    subsumption-closed language with this event bound.
    """
    carrier = automaton.carrier
    ups = _up_index(carrier)
    found: set[Ipomset] = set()
    seen: set[tuple[str, Ipomset]] = set()
    stack: list[tuple[str, Ipomset]] = []

    for cell in sorted(automaton.start):
        if carrier.dim(cell) <= max_events:
            state = (cell, identity(carrier.word(cell)))
            if state not in seen:
                seen.add(state)
                stack.append(state)

    while stack:
        cell, label = stack.pop()
        if cell in automaton.accept:
            found.add(label)
        for bigger, started in ups[cell]:
            if label.size + len(started) > max_events:
                continue
            try:
                grown = glue(label, _up_label(carrier.word(bigger), started))
            except InternalOrderCycle:
                # No canonical label exists down this branch, nor down any
                # extension of it; see the module docstring.
                continue
            state = (bigger, grown)
            if state not in seen:
                seen.add(state)
                stack.append(state)
        for finished in _down_choices(carrier.dim(cell)):
            smaller = carrier.apply_face(cell, upper=finished)
            shrunk = glue(label, _down_label(carrier.word(cell), finished))
            state = (smaller, shrunk)
            if state not in seen:
                seen.add(state)
                stack.append(state)

    return normalize(found, event_bound=max_events)


# --- constructions -------------------------------------------------------------------


def unit_hda() -> Hda:
    """The tensor unit: one vertex, both start and accept."""
    carrier = PrecubicalSet({"v": ()}, {})
    return Hda(carrier, frozenset({"v"}), frozenset({"v"}))


def tensor_hda(x: Hda, y: Hda) -> Hda:
    """Parallel product: carriers tensor, markings pair up."""
    return Hda(
        tensor(x.carrier, y.carrier),
        frozenset(
            tensor_cell_id(s, t) for s in x.start for t in y.start
        ),
        frozenset(
            tensor_cell_id(s, t) for s in x.accept for t in y.accept
        ),
    )


def coproduct_hda(parts: Sequence[Hda]) -> Hda:
    """Disjoint union of automata; markings are inherited per summand."""
    total, injections = coproduct([p.carrier for p in parts])
    start: set[str] = set()
    accept: set[str] = set()
    for part, inj in zip(parts, injections):
        start |= {inj(c) for c in part.start}
        accept |= {inj(c) for c in part.accept}
    return Hda(total, frozenset(start), frozenset(accept))


def pushout_hda(
    apex: Hda,
    left: Hda,
    right: Hda,
    into_left: Mapping[str, str],
    into_right: Mapping[str, str],
) -> Hda:
    """Glue ``left`` and ``right`` along ``apex``.

    Both legs must be HDA morphisms.  The result's markings are the images
    of all three components' markings under the colimit cocone.
    """
    for name, tgt, mapping in (
        ("left", left, into_left),
        ("right", right, into_right),
    ):
        problems = validate_hda_map(apex, tgt, mapping)
        if problems:
            raise PrecubicalInvariant(
                [f"{name} leg: {p}" for p in problems]
            )
    colim, cocones = finite_colimit(
        [apex.carrier, left.carrier, right.carrier],
        [(0, 1, dict(into_left)), (0, 2, dict(into_right))],
    )
    start: set[str] = set()
    accept: set[str] = set()
    for component, cocone in zip((apex, left, right), cocones):
        start |= {cocone(c) for c in component.start}
        accept |= {cocone(c) for c in component.accept}
    return Hda(colim, frozenset(start), frozenset(accept))


def tensor_power(x: Hda, n: int) -> Hda:
    """The ``n``-fold tensor of ``x``; the unit automaton when ``n`` is 0."""
    if n < 0:
        raise ValueError("tensor power needs a non-negative exponent")
    result = unit_hda()
    for _ in range(n):
        result = tensor_hda(result, x)
    return result


def replicate(x: Hda, n: int) -> Hda:
    """Zero to ``n`` parallel copies of ``x``, as a coproduct of tensor powers."""
    return coproduct_hda([tensor_power(x, k) for k in range(n + 1)])


def replication_chain_prefix(
    seed: Hda, n: int, base: str, far: str
) -> tuple[list[Hda], list[HdaMap]]:
    """Iterated-pushout prefix of the unbounded replication of ``seed``.

    Stage 1 is ``seed`` itself.  Stage ``k+1`` glues the full tensor power
    ``seed**(k+1)`` onto stage ``k``: the power's subautomaton
    ``power_k (x) base`` is identified with the image of ``power_k`` inside
    stage ``k``.  Accept markings accumulate -- each stage adds the new
    power's far corner -- while start markings are left for the caller to
    place.

    Args:
        seed: the automaton to replicate; used unmarked except for accepts.
        n: number of stages to build (at least 1).
        base: a vertex of ``seed`` acting as the "not yet spawned" state.
        far: the vertex of ``seed`` whose tensor powers mark acceptance.

    Returns:
        The stages ``[stage_1 .. stage_n]`` and the inclusion of each stage
        into the next.
    """
    if n < 1:
        raise ValueError("the chain prefix has at least one stage")
    if len(seed.carrier.word(base)) != 0 or len(seed.carrier.word(far)) != 0:
        raise ValueError("base and far must be vertices")

    stages = [seed]
    inclusions: list[HdaMap] = []
    power = seed.carrier                       # carrier of seed ** (k)
    power_far = far                            # its accepting far corner
    into_stage = {c: c for c in seed.carrier.cells}
    for _ in range(1, n):
        bigger = tensor(power, seed.carrier)   # carrier of seed ** (k+1)
        onto_base = {c: tensor_cell_id(c, base) for c in power.cells}
        colim, cocones = finite_colimit(
            [power, stages[-1].carrier, bigger],
            [(0, 1, into_stage), (0, 2, onto_base)],
        )
        bigger_far = tensor_cell_id(power_far, far)
        accept = {cocones[1](c) for c in stages[-1].accept}
        accept.add(cocones[2](bigger_far))
        stage = Hda(colim, frozenset(), frozenset(accept))
        inclusions.append(HdaMap(stages[-1], stage, cocones[1].mapping))
        stages.append(stage)
        power, power_far = bigger, bigger_far
        into_stage = cocones[2].mapping
    return stages, inclusions


# --- structural counts ------------------------------------------------------------


def branching_degree(automaton: Hda, cell: str) -> int:
    """How many one-dimension-up cells have ``cell`` among their faces."""
    carrier = automaton.carrier
    word = carrier.word(cell)
    above = carrier.cells_of_dim(len(word) + 1)
    return sum(
        1
        for big in above
        if any(f == cell for (_, _, f) in carrier.iter_faces(big))
    )


def start_cell_count(automaton: Hda) -> int:
    """Number of start-marked cells."""
    return len(automaton.start)
