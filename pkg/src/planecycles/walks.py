"""Alternating point/line walks: open paths, cycle arcs, edge surgery."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TooLong


@dataclass(frozen=True)
class AltPath:
    """Open alternating path: ``lines[i]`` joins ``points[i]`` and ``points[i+1]``."""

    points: tuple[int, ...]
    lines: tuple[int, ...]

    def __post_init__(self):
        assert len(self.lines) == len(self.points) - 1

    @property
    def n(self) -> int:
        return len(self.points)

    def reversed(self) -> "AltPath":
        return AltPath(tuple(reversed(self.points)), tuple(reversed(self.lines)))


def cycle_arc(points, lines, start_pos: int, n_vertices: int, step: int = 1) -> AltPath:
    """Arc of a cycle as an open path.

    ``lines[i]`` must join ``points[i]`` and ``points[(i+1) % k]``.  The arc
    starts at ``start_pos`` and takes ``n_vertices - 1`` steps of ``step``
    (+1 with the orientation, -1 against it).  Wrapping past ``k`` vertices
    would repeat one, so that is rejected.
    """
    k = len(points)
    if not 1 <= n_vertices <= k:
        raise TooLong(f"arc of {n_vertices} vertices in a {k}-cycle")
    assert step in (1, -1)
    pts = []
    lns = []
    pos = start_pos % k
    for i in range(n_vertices):
        pts.append(points[pos])
        if i + 1 < n_vertices:
            lns.append(lines[pos] if step == 1 else lines[(pos - 1) % k])
            pos = (pos + step) % k
    return AltPath(tuple(pts), tuple(lns))


def rethread(points, lines, drops, adds):
    """Replace cycle edges and reassemble the result into one cycle.

    ``drops`` lists point pairs whose cycle edge is removed; ``adds`` lists
    ``(u, v, line)`` triples to insert (new vertices allowed).  Every vertex
    of the edited graph must end up with degree 2 and the edges must close
    a single cycle — both are asserted, since callers use this only for
    surgeries known to rethread cleanly.

    Returns ``(points, lines)`` of the reassembled cycle, oriented from the
    least vertex toward its smaller neighbor.
    """
    k = len(points)
    drops = tuple(drops)
    dropset = {frozenset(d) for d in drops}
    assert len(dropset) == len(drops)
    adj: dict[int, list[tuple[int, int]]] = {}

    def link(u, v, ln):
        adj.setdefault(u, []).append((v, ln))
        adj.setdefault(v, []).append((u, ln))

    for i in range(k):
        u, v = points[i], points[(i + 1) % k]
        if frozenset((u, v)) in dropset:
            dropset.discard(frozenset((u, v)))
            continue
        link(u, v, lines[i])
    assert not dropset, f"drops not on the cycle: {dropset}"
    for u, v, ln in adds:
        link(u, v, ln)

    for u, nbrs in adj.items():
        assert len(nbrs) == 2, f"vertex {u} has degree {len(nbrs)} after surgery"

    start = min(adj)
    first = min(nb for nb, _ in adj[start])
    out_pts = [start]
    out_lns = []
    prev, cur = start, first
    out_lns.append(next(ln for nb, ln in adj[start] if nb == first))
    while cur != start:
        out_pts.append(cur)
        a, b = adj[cur]
        nxt, ln = b if a[0] == prev else a
        # parallel edges between the same pair never occur here: adds and
        # surviving cycle edges use distinct lines
        out_lns.append(ln)
        prev, cur = cur, nxt
    assert len(out_pts) == len(adj), "surgery split the cycle"
    return tuple(out_pts), tuple(out_lns)
