"""Cycle embeddings in projective planes of any admissible length.

Strategy: delete a line to expose an affine restriction, run the affine
machinery there for k up to q*q, and realize the longer lengths by routing
walks through the deleted points.  The workhorse is a near-Hamiltonian
open path through the whole restriction whose ends sit on known pencil
lines; closures, shortcuts through the base point, and ladder rewirings of
that path produce every k up to the full point count q*q + q + 1.

Orders 2 and 3 are small enough that exhaustive search embeds any k
instantly, so everything below order 4 goes straight to the oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .affine import AffineEmbedder
from .errors import ConstructionFailed, OutOfRange, WrongKind
from .plane import EmbeddedCycle, Plane, affine_from_projective
from .verify import oracle_embed, verify_embedding
from .walks import AltPath, cycle_arc, rethread

log = logging.getLogger(__name__)

_ORACLE_MAX_ORDER = 3


@dataclass(frozen=True)
class ProjCycle:
    """A partition cycle of the affine restriction, in projective ids.

    ``w_pos`` marks the exit vertex W: the cycle edge leaving it (in the +
    orientation) extends through the deleted point of its direction, which
    is what lets walks jump from the cycle to the removed line.
    """

    index: int
    points: tuple[int, ...]
    lines: tuple[int, ...]
    w_pos: int

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def exit_pt(self) -> int:  # W: end of the long traversal
        return self.points[self.w_pos]

    @property
    def entry_pt(self) -> int:  # V: successor of W, start of the long traversal
        return self.points[(self.w_pos + 1) % self.n]

    @property
    def exit_edge(self) -> int:  # cycle edge W--V, free while the traversal is open
        return self.lines[self.w_pos]

    def long_path(self) -> AltPath:
        return cycle_arc(self.points, self.lines, (self.w_pos + 1) % self.n, self.n, 1)


class ProjectiveEmbedder:
    """Embeds k-cycles for every k in [3, q*q + q + 1] in a projective plane."""

    def __init__(self, plane: Plane, line_at_infinity: int | None = None, origin: int = 0, rng=None):
        if plane.kind != "projective":
            raise WrongKind("ProjectiveEmbedder needs a projective plane")
        self.plane = plane
        self.q = plane.order
        self.linf = plane.n_lines - 1 if line_at_infinity is None else line_at_infinity
        plane.check_line(self.linf)
        if self.q <= _ORACLE_MAX_ORDER:
            return
        restriction = affine_from_projective(plane, self.linf)
        self.restriction = restriction
        self.affine = AffineEmbedder(restriction.plane, origin, rng)
        frame = self.affine.frame
        part = self.affine.partition
        q = self.q
        pmap, lmap = restriction.point_map, restriction.line_map
        self.origin_p = pmap[frame.origin]
        self.pencil_p = tuple(lmap[l] for l in frame.pencil)
        # deleted point in the direction of pencil line i
        self.inf_pts = tuple(restriction.class_points[c] for c in frame.pencil_class)
        self.s = part.s

        cycles = []
        for c in part.cycles:
            w_level = q if c.index == 1 else c.index - 2
            w_aff = min(p for p in c.points if frame.level[p] == w_level)
            if rng is not None:
                w_aff = rng.choice(sorted(p for p in c.points if frame.level[p] == w_level))
            cycles.append(
                ProjCycle(
                    c.index,
                    tuple(pmap[p] for p in c.points),
                    tuple(lmap[l] for l in c.lines),
                    c.pos[w_aff],
                )
            )
        self.cycles = tuple(cycles)
        self._build_inf_path()
        if self.s < q - 1:
            self._build_ladder_base()

    # -- construction of the shared walks --

    def _build_inf_path(self) -> None:
        """Open path through every finite point but the base, plus the
        deleted points 1..s-1; runs entry_pt(C_1) -> exit_pt(C_s)."""
        pts: list[int] = []
        lns: list[int] = []
        for pc in self.cycles:
            if pc.index > 1:
                prev = self.cycles[pc.index - 2]
                lns.append(prev.exit_edge)
                pts.append(self.inf_pts[pc.index - 1])
                lns.append(self.pencil_p[pc.index - 1])
            arc = pc.long_path()
            pts.extend(arc.points)
            lns.extend(arc.lines)
        self.inf_path = AltPath(tuple(pts), tuple(lns))
        assert self.inf_path.n == self.q * self.q + self.s - 2

        last = self.cycles[-1]
        cpts = self.inf_path.points + (self.inf_pts[self.s], self.inf_pts[0])
        clns = self.inf_path.lines + (last.exit_edge, self.linf, self.pencil_p[0])
        self.base_cycle = (cpts, clns)
        self.base_pos = {p: i for i, p in enumerate(cpts)}

    def _prefix_pt(self, x: int) -> int:
        """Vertex of the last cycle at level x, within its leading run."""
        c = self.cycles[-1]
        return c.points[(c.w_pos + 1 + (x - self.s + 1)) % c.n]

    def _apex(self, index: int) -> int:
        """Level-q vertex closing the leading run of cycle ``index``."""
        c = self.cycles[index - 1]
        return c.points[(c.w_pos + 1 + (self.q - index + 1)) % c.n]

    def _build_ladder_base(self) -> None:
        q, s = self.q, self.s
        last = self.cycles[-1]
        self.prefix = cycle_arc(last.points, last.lines, (last.w_pos + 1) % last.n, q - s + 2, 1)
        posp = {p: i for i, p in enumerate(self.inf_path.points)}
        a = posp[last.entry_pt]
        pts = self.inf_path.points
        lns = self.inf_path.lines
        # re-route the path around the last cycle: same vertices, but the
        # leading run of the last cycle now sits reversed at the far end
        self.tilde = AltPath(
            pts[: a + 1] + tuple(reversed(pts[a + 1 :])),
            lns[:a] + (last.exit_edge,) + tuple(reversed(lns[a + 1 :])),
        )
        assert self.tilde.n == self.inf_path.n
        assert self.tilde.points[-1] == self._prefix_pt(s)

    # -- assembly --

    def _finish(self, pts, lns, branch: str) -> EmbeddedCycle:
        cyc = EmbeddedCycle(len(pts), tuple(pts), tuple(lns), branch)
        rep = verify_embedding(self.plane, cyc)
        if not rep.ok:
            raise ConstructionFailed(branch, {"failures": rep.failures(), "k": cyc.k})
        return cyc

    def embed(self, k: int) -> EmbeddedCycle:
        q = self.q
        n_total = q * q + q + 1
        if not 3 <= k <= n_total:
            raise OutOfRange(f"k={k} outside the admissible range [3, {n_total}]")
        if q <= _ORACLE_MAX_ORDER:
            return oracle_embed(self.plane, k)
        if k <= q * q:
            aff = self.affine.embed(k)
            pmap, lmap = self.restriction.point_map, self.restriction.line_map
            return self._finish(
                tuple(pmap[p] for p in aff.points),
                tuple(lmap[l] for l in aff.lines),
                "affine:" + aff.branch,
            )
        if self.s == q - 1 or k <= q * q + self.s + 2:
            return self._closure(k)
        return self._ladder(k)

    # -- k just above q*q: close or shortcut the long path --

    def _closure(self, k: int) -> EmbeddedCycle:
        q, s = self.q, self.s
        inf, pen = self.inf_pts, self.pencil_p
        path = self.inf_path
        last = self.cycles[-1]
        if k == q * q + s + 2:
            pts = path.points + (inf[s], self.origin_p, inf[q], inf[0])
            lns = path.lines + (last.exit_edge, pen[s], pen[q], self.linf, pen[0])
            return self._finish(pts, lns, "inf-path/close+2")
        if k == q * q + s + 1:
            pts = path.points + (inf[s], inf[q], self.origin_p)
            lns = path.lines + (last.exit_edge, self.linf, pen[q], pen[0])
            return self._finish(pts, lns, "inf-path/close+1")
        if k == q * q + s:
            return self._finish(*self.base_cycle, "inf-path/close+0")

        i = k - q * q - s + q - 2
        if i >= s:
            # drop the tail of the last cycle's leading run, detour via the base
            n_arc = q * q + s - (q - 1 - i)
            arc = cycle_arc(*self.base_cycle, self.base_pos[self._apex(s)], n_arc, 1)
            assert arc.points[-1] == self._prefix_pt(i)
            pts = arc.points + (self.origin_p,)
            lns = arc.lines + (pen[i], pen[q])
            return self._finish(pts, lns, f"inf-path/tail({i})")
        if i == s - 1:
            # drop the entire leading run, pick its last inner vertex back up
            n_arc = q * q + 2 * s - q - 1
            arc = cycle_arc(*self.base_cycle, self.base_pos[self._apex(s)], n_arc, 1)
            assert arc.points[-1] == (inf[s - 1] if s >= 2 else inf[0])
            pq1 = self._prefix_pt(q - 1)
            edge = last.lines[(last.w_pos + 1 + (q - s)) % last.n]  # joins P_{q-1} to the apex
            pts = arc.points + (self.origin_p, pq1)
            lns = arc.lines + (pen[s - 1], pen[q - 1], edge)
            return self._finish(pts, lns, "inf-path/bridge")
        # shortcut an earlier cycle instead (needs 2s >= q+1 to be reachable)
        i = k - q * q + q - s
        n_arc = q * q + s - (q - i + 1)
        arc = cycle_arc(*self.base_cycle, self.base_pos[self._apex(i)], n_arc, 1)
        assert arc.points[-1] == inf[i - 1]
        pts = arc.points + (self.origin_p,)
        lns = arc.lines + (pen[i - 1], pen[q])
        return self._finish(pts, lns, f"inf-path/trunc({i})")

    # -- k near the full plane: ladder rewirings --

    def _ladder_parts(self, j: int):
        """Cycle of length q*q + s + j: zigzag head over the deleted points
        s+1..s+j, then the re-routed path run backwards, closed at infinity."""
        q, s = self.q, self.s
        pre = self.prefix
        head_pts = [pre.points[1]]
        head_lns = []
        for t in range(1, j + 1):
            head_lns.append(pre.lines[t - 1])
            head_pts.append(self.inf_pts[s + t])
            head_lns.append(self.pencil_p[s + t])
            head_pts.append(pre.points[t + 1])
        n = self.tilde.n
        assert self.tilde.points[n - 1 - j] == pre.points[j + 1]
        g_pts = tuple(head_pts) + tuple(reversed(self.tilde.points[: n - 1 - j]))
        g_lns = (
            tuple(head_lns)
            + (self.tilde.lines[n - 2 - j],)
            + tuple(reversed(self.tilde.lines[: n - 2 - j]))
        )
        pts = (self.inf_pts[0], self.inf_pts[s]) + g_pts
        lns = (self.linf, self.pencil_p[s]) + g_lns + (self.pencil_p[0],)
        return pts, lns

    def _ladder(self, k: int) -> EmbeddedCycle:
        q, s = self.q, self.s
        if k == q * q + q + 1:
            return self._hamiltonian()
        j = k - q * q - s
        pts, lns = self._ladder_parts(j)
        return self._finish(pts, lns, f"ladder/G{j}")

    def _hamiltonian(self) -> EmbeddedCycle:
        """Rewire the longest ladder cycle to pick up the one missed point."""
        q, s = self.q, self.s
        qp, ql = self._ladder_parts(q - s)
        inf, pen = self.inf_pts, self.pencil_p
        apex = self._apex(s)
        pq1 = self._prefix_pt(q - 1)
        free = self.prefix.lines[q - s]  # joins pq1 and the apex, meets inf 0
        drops = [(inf[0], inf[s]), (inf[q - 1], pq1), (inf[q], apex)]
        adds = [
            (inf[s], inf[q], self.linf),
            (inf[q - 1], self.origin_p, pen[q - 1]),
            (apex, self.origin_p, pen[q]),
            (pq1, inf[0], free),
        ]
        pts, lns = rethread(qp, ql, drops, adds)
        return self._finish(pts, lns, "ladder/hamiltonian")


def embed_projective_cycle(
    plane: Plane, k: int, line_at_infinity: int | None = None, origin: int = 0, rng=None
) -> EmbeddedCycle:
    """One-shot embedding; build a ProjectiveEmbedder to amortize over many k."""
    return ProjectiveEmbedder(plane, line_at_infinity, origin, rng).embed(k)
