"""Cycle embeddings in affine planes of any admissible length.

The machinery is built from a fixed *frame*: a base point, the pencil of
lines through it (indexed 0..q by ascending line id), and the *level* of
every other point — the index of its pencil line.  Walking parallels of
successive pencil lines traces out base paths that stitch together into a
partition of the punctured plane into long cycles; pieces of those cycles,
joined across pencil lines, realize every length from 3 to q*q.

Levels are the bookkeeping that makes closures checkable: every edge of a
partition cycle advances the level by +1 mod q+1, so the pencil line that
can close a partial walk is read off the end level directly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import (
    BadPathStart,
    BadSkipIndex,
    ConstructionFailed,
    NotOnCycle,
    OutOfRange,
    WrongKind,
)
from .plane import EmbeddedCycle, Plane
from .verify import verify_embedding
from .walks import AltPath, cycle_arc

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Frame:
    """Base point, its pencil (ascending line ids), and point levels."""

    plane: Plane
    origin: int
    pencil: tuple[int, ...]
    pencil_class: tuple[int, ...]  # parallel class of each pencil line
    level: tuple[int, ...]  # level[origin] = -1

    @property
    def period(self) -> int:
        return len(self.pencil)  # q + 1


def make_frame(plane: Plane, origin: int = 0) -> Frame:
    if plane.kind != "affine":
        raise WrongKind("frames are built on affine planes")
    plane.check_point(origin)
    pencil = tuple(plane.point_to_lines[origin])  # already ascending
    level = [-1] * plane.n_points
    for i, lid in enumerate(pencil):
        for p in plane.lines[lid]:
            if p != origin:
                level[p] = i
    return Frame(plane, origin, pencil, tuple(plane.line_class(l) for l in pencil), tuple(level))


def base_path(frame: Frame, start: int) -> AltPath:
    """Walk from a level-0 point through levels 1..q.

    The step into level j uses the parallel, through the current point, of
    pencil line (j+1) mod (q+1) — so no step line is ever a pencil line or
    parallel to pencil line 1, and the walk never touches the base point.
    """
    plane, per = frame.plane, frame.period
    if start == frame.origin or frame.level[start] != 0:
        raise BadPathStart(f"base paths start on pencil line 0, not at point {start}")
    pts = [start]
    lns = []
    cur = start
    for j in range(1, per):
        step = plane.parallel_through(frame.pencil_class[(j + 1) % per], cur)
        nxt = plane.meet(step, frame.pencil[j])
        assert nxt is not None and nxt != frame.origin
        pts.append(nxt)
        lns.append(step)
        cur = nxt
    return AltPath(tuple(pts), tuple(lns))


@dataclass(frozen=True)
class LeveledCycle:
    """One cycle of the partition; edge j joins points j and j+1 (mod n).

    Oriented so every edge advances the level by +1 mod q+1.  ``entry_prev``
    sits on level index-1 and ``entry_next`` is its successor, on level
    index — the hinges used when cycles are chained through pencil lines.
    """

    index: int  # 1-based position in the sorted partition
    points: tuple[int, ...]
    lines: tuple[int, ...]
    levels: tuple[int, ...]
    segments: int  # number of base paths chained into this cycle
    entry_prev: int
    entry_next: int
    pos: dict[int, int] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    def position(self, point: int) -> int:
        try:
            return self.pos[point]
        except KeyError:
            raise NotOnCycle(f"point {point} is not on partition cycle {self.index}") from None

    def successor(self, point: int, d: int = 1) -> int:
        return self.points[(self.position(point) + d) % self.n]

    def subpath(self, start: int, n_vertices: int, step: int) -> AltPath:
        return cycle_arc(self.points, self.lines, self.position(start), n_vertices, step)

    def edge_at(self, point: int) -> int:
        """Line of the edge leaving ``point`` in the + orientation."""
        return self.lines[self.position(point)]


@dataclass(frozen=True)
class CyclePartition:
    """The punctured plane split into vertex- and line-disjoint cycles.

    Cycles are sorted by length (ties keep the order their least level-0
    point appears), so segment counts are non-decreasing.
    """

    frame: Frame
    cycles: tuple[LeveledCycle, ...]

    @property
    def s(self) -> int:
        return len(self.cycles)

    def lam(self, m: int) -> int:
        """Cumulative segment count of the first m cycles."""
        return sum(c.segments for c in self.cycles[:m])


def build_partition(frame: Frame, rng=None) -> CyclePartition:
    """Chain base paths into cycles covering every point but the base.

    Each base path ends on the last pencil line; the parallel of pencil
    line 1 through that end returns to pencil line 0, either closing the
    chain or starting the next base path.  ``rng``, when given, picks the
    entry vertices at random instead of by least id.
    """
    plane, per = frame.plane, frame.period
    chain_class = frame.pencil_class[1]
    starts = sorted(set(plane.lines[frame.pencil[0]]) - {frame.origin})
    unused = set(starts)
    raw = []
    for st in starts:
        if st not in unused:
            continue
        pts: list[int] = []
        lns: list[int] = []
        cur = st
        while True:
            bp = base_path(frame, cur)
            unused.discard(cur)
            pts.extend(bp.points)
            lns.extend(bp.lines)
            link = plane.parallel_through(chain_class, bp.points[-1])
            lns.append(link)
            nxt = plane.meet(link, frame.pencil[0])
            if nxt == st:
                break
            assert nxt in unused, "chaining revisited a used start"
            cur = nxt
        raw.append((pts, lns))
    raw.sort(key=lambda pl: len(pl[0]))

    cycles = []
    for idx, (pts, lns) in enumerate(raw, start=1):
        levels = tuple(frame.level[p] for p in pts)
        pos = {p: j for j, p in enumerate(pts)}
        cands = sorted(p for p in pts if frame.level[p] == idx - 1)
        entry_prev = rng.choice(cands) if rng is not None else cands[0]
        entry_next = pts[(pos[entry_prev] + 1) % len(pts)]
        cycles.append(
            LeveledCycle(idx, tuple(pts), tuple(lns), levels, len(pts) // per, entry_prev, entry_next, pos)
        )

    # structural invariants the rest of the module leans on
    allpts = [p for c in cycles for p in c.points]
    assert len(allpts) == len(set(allpts)) == plane.n_points - 1
    alllns = [l for c in cycles for l in c.lines]
    assert len(alllns) == len(set(alllns))
    assert not (set(alllns) & set(frame.pencil))
    for c in cycles:
        assert all(c.levels[j] == (c.levels[0] + j) % per for j in range(c.n))
    return CyclePartition(frame, tuple(cycles))


@dataclass(frozen=True)
class Spine:
    """Open path through the first m partition cycles, hinged on pencils.

    ``used_pencil`` lists the pencil indices consumed by the hinges, so
    closure lines can be chosen to avoid them.
    """

    points: tuple[int, ...]
    lines: tuple[int, ...]
    used_pencil: frozenset[int]
    skip_t: int | None


def build_spine(part: CyclePartition, m: int, skip_t: int | None = None, cut_first: bool = False) -> Spine:
    """Concatenate full traversals of cycles 1..m into one open path.

    Plain form: cycle i is traversed against the orientation from its
    entry_prev (ending on its entry_next), and pencil line i hinges cycle i
    to cycle i+1; the path runs level 0 -> level m.  ``cut_first`` drops the
    first vertex, moving the start to level q.  ``skip_t`` drops one vertex
    of cycle t instead: later cycles are then entered at entry_next, every
    hinge from cycle t on shifts up one pencil index, and the path ends on
    level m+1 with pencil index t left free.
    """
    frame = part.frame
    pencil = frame.pencil
    if skip_t is not None:
        if cut_first:
            raise BadSkipIndex("skip and cut are mutually exclusive")
        if not 2 <= skip_t <= m - 1:
            raise BadSkipIndex(f"skip index {skip_t} outside [2, {m - 1}]")
    pts: list[int] = []
    lns: list[int] = []
    used = set()
    for i in range(1, m + 1):
        c = part.cycles[i - 1]
        if skip_t is None or i < skip_t:
            seg = c.subpath(c.entry_prev, c.n, -1)
        elif i == skip_t:
            seg = c.subpath(c.entry_prev, c.n - 1, -1)
        else:
            seg = c.subpath(c.entry_next, c.n, -1)
        if i > 1:
            hinge = i - 1 if (skip_t is None or i <= skip_t) else i
            lns.append(pencil[hinge])
            used.add(hinge)
        pts.extend(seg.points)
        lns.extend(seg.lines)
    if cut_first:
        pts = pts[1:]
        lns = lns[1:]
    return Spine(tuple(pts), tuple(lns), frozenset(used), skip_t)


class AffineEmbedder:
    """Embeds k-cycles for every k in [3, q*q] in a fixed affine plane.

    The frame and partition are computed once; each call assembles a
    candidate, verifies it against the embedding definition, and only then
    returns it.  When the arithmetic admits several closure variants the
    siblings are tried in order, so a failed primary candidate degrades to
    a fallback rather than an error.
    """

    def __init__(self, plane: Plane, origin: int = 0, rng=None):
        if plane.kind != "affine":
            raise WrongKind("AffineEmbedder needs an affine plane")
        self.plane = plane
        self.frame = make_frame(plane, origin)
        self.partition = build_partition(self.frame, rng)

    # -- shared helpers --

    def _finish(self, pts, lns, branch: str) -> EmbeddedCycle:
        cyc = EmbeddedCycle(len(pts), tuple(pts), tuple(lns), branch)
        rep = verify_embedding(self.plane, cyc)
        if not rep.ok:
            raise ConstructionFailed(branch, {"failures": rep.failures(), "k": cyc.k})
        return cyc

    def embed(self, k: int) -> EmbeddedCycle:
        q = self.plane.order
        if not 3 <= k <= q * q:
            raise OutOfRange(f"k={k} outside the admissible range [3, {q * q}]")
        c1 = self.partition.cycles[0]
        if k <= c1.n:
            return self._within_first_cycle(k)
        return self._through_spine(k)

    # -- k within the first partition cycle --

    def _within_first_cycle(self, k: int) -> EmbeddedCycle:
        frame = self.frame
        per = frame.period
        q = per - 1
        c1 = self.partition.cycles[0]
        pencil = frame.pencil
        if k == c1.n:
            off = c1.position(c1.entry_prev)
            pts = c1.points[off:] + c1.points[:off]
            lns = c1.lines[off:] + c1.lines[:off]
            return self._finish(pts, lns, "first-cycle/full")
        rem = k % per
        if rem == 1:
            # ends on level 0 again: close directly through pencil line 0
            path = c1.subpath(c1.entry_prev, k, +1)
            return self._finish(path.points, path.lines + (pencil[0],), "first-cycle/mod1")
        if rem == 2:
            # ends on level q: swap the last vertex for a 2-vertex patch one
            # base path ahead (levels q-1, q), routed through the base point
            path = c1.subpath(c1.entry_prev, k - 2, +1)
            e = c1.position(path.points[-1])
            qa = c1.points[(e + q) % c1.n]
            qb = c1.points[(e + q + 1) % c1.n]
            pts = (frame.origin,) + path.points[:-1] + (qa, qb)
            lns = (
                (pencil[0],)
                + path.lines[:-1]
                + (pencil[q - 1], c1.lines[(e + q) % c1.n], pencil[q])
            )
            return self._finish(pts, lns, "first-cycle/mod2")
        path = c1.subpath(c1.entry_prev, k - 1, +1)
        pts = (frame.origin,) + path.points
        lns = (pencil[0],) + path.lines + (pencil[(k - 2) % per],)
        return self._finish(pts, lns, "first-cycle/general")

    # -- k spanning several partition cycles --

    def _through_spine(self, k: int) -> EmbeddedCycle:
        part = self.partition
        frame = self.frame
        per = frame.period
        q = per - 1
        pencil = frame.pencil
        m = max(i for i in range(1, part.s + 1) if part.lam(i) * per <= k)
        r = k - part.lam(m) * per
        if r == 0:
            spine = build_spine(part, m, cut_first=True)
            pts = (frame.origin,) + spine.points
            lns = (pencil[q],) + spine.lines + (pencil[m],)
            return self._finish(pts, lns, "spine/cut")
        if r == 1:
            spine = build_spine(part, m)
            pts = (frame.origin,) + spine.points
            lns = (pencil[0],) + spine.lines + (pencil[m],)
            return self._finish(pts, lns, "spine/full")
        assert m < part.s, "residue above 1 forces another cycle to draw on"
        return self._attach(k, m, r)

    def _attach_candidates(self, m: int, r: int):
        """Closure variants for residue r, primary first."""
        per = self.frame.period
        q = per - 1
        i = r % per
        combos = [("pos", False), ("neg", False), ("pos", True), ("neg", True)]
        if i == 3:
            primary = ("pos", False)
        elif i == 1:
            primary = ("neg", False)
        elif i == 2:
            primary = ("pos", True)
        elif i == 0:
            primary = ("neg", True)
        elif m + i - 2 <= q:
            primary = ("pos", False)
        else:
            primary = None  # straight to the skip variant
        order = []
        if primary is not None:
            order.append(primary + (None,))
        t = m + i - q - 1
        if 2 <= t <= m - 1:
            order.append(("pos", False, t))
        for c in combos:
            if primary is None or c != primary:
                order.append(c + (None,))
        return order

    def _attach(self, k: int, m: int, r: int) -> EmbeddedCycle:
        part, frame = self.partition, self.frame
        per = frame.period
        q = per - 1
        pencil = frame.pencil
        cnext = part.cycles[m]  # cycle m+1
        assert r < cnext.n
        attempts = []
        for step_name, cut, skip_t in self._attach_candidates(m, r):
            step = 1 if step_name == "pos" else -1
            try:
                if skip_t is not None:
                    branch = f"attach/skip-t{skip_t}"
                    spine = build_spine(part, m, skip_t=skip_t)
                    arc = cnext.subpath(cnext.entry_next, r, +1)
                    pts = (frame.origin,) + spine.points + arc.points
                    lns = (
                        (pencil[0],)
                        + spine.lines
                        + (pencil[m + 1],)
                        + arc.lines
                        + (pencil[skip_t],)
                    )
                    return self._finish(pts, lns, branch)
                v = r if cut else r - 1
                if step == 1:
                    end_level = (m + v - 1) % per
                else:
                    end_level = (m - v + 1) % per
                forbidden = set(range(1, m + 1)) | {q} if cut else set(range(0, m + 1))
                if v < 1 or end_level in forbidden:
                    continue
                branch = f"attach/{'cut-' if cut else ''}{step_name}"
                spine = build_spine(part, m, cut_first=cut)
                arc = cnext.subpath(cnext.entry_prev, v, step)
                pts = (frame.origin,) + spine.points + arc.points
                lns = (
                    (pencil[q] if cut else pencil[0],)
                    + spine.lines
                    + (pencil[m],)
                    + arc.lines
                    + (pencil[end_level],)
                )
                return self._finish(pts, lns, branch)
            except ConstructionFailed as exc:
                log.debug("variant %s failed for k=%d: %s", exc.branch, k, exc.diagnostics)
                attempts.append(exc.branch)
        raise ConstructionFailed(
            "attach", {"k": k, "m": m, "r": r, "tried": attempts or ["<none feasible>"]}
        )


def embed_affine_cycle(plane: Plane, k: int, origin: int = 0, rng=None) -> EmbeddedCycle:
    """One-shot embedding; build an AffineEmbedder to amortize over many k."""
    return AffineEmbedder(plane, origin, rng).embed(k)
