"""Independent checking: plane axioms, embedding verification, brute-force search.

Nothing in this module trusts the constructions.  ``check_axioms`` works
from the raw incidence lists, ``verify_embedding`` re-derives every
incidence it asserts, and ``brute_force_cycle`` finds cycles by exhaustive
alternating search, so it can confirm or refute any constructed embedding
at small orders.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import AxiomViolation, ConstructionFailed, TooLarge
from .levi import GraphStats, LeviGraph
from .plane import EmbeddedCycle, Plane

DEFAULT_BUDGET = 5_000_000

_COUNT_LIMIT = 13  # max point count for exhaustive cycle counting


# -- axioms -------------------------------------------------------------------


def _line_masks(plane: Plane) -> list[int]:
    masks = []
    for ln in plane.lines:
        m = 0
        for p in ln:
            m |= 1 << p
        masks.append(m)
    return masks


def _check_linearity(plane: Plane, masks: list[int], exact: bool) -> None:
    """Every point pair on at most one line; with ``exact``, on exactly one.

    Done per point with bitmask unions, so two lines sharing two points are
    caught at their first common point without an all-pairs line scan.
    """
    full = (1 << plane.n_points) - 1
    for p in range(plane.n_points):
        pb = 1 << p
        acc = 0
        for lid in plane.point_to_lines[p]:
            m = masks[lid] & ~pb
            dup = acc & m
            if dup:
                other = dup.bit_length() - 1
                prev = next(
                    l2
                    for l2 in plane.point_to_lines[p]
                    if l2 != lid and other in plane.line_sets[l2]
                )
                raise AxiomViolation(
                    "unique-join",
                    (p, other, prev, lid),
                    f"points {p} and {other} lie on lines {prev} and {lid}",
                )
            acc |= m
        if exact and acc != full & ~pb:
            missing = (full & ~pb & ~acc).bit_length() - 1
            raise AxiomViolation(
                "pair-coverage",
                (p, missing),
                f"points {p} and {missing} lie on no common line",
            )


def check_axioms(plane: Plane) -> None:
    """Raise AxiomViolation unless the plane satisfies its declared kind."""
    for lid, ln in enumerate(plane.lines):
        if len(set(ln)) != len(ln):
            raise AxiomViolation("line-wellformed", (lid,), f"line {lid} repeats a point")
        if len(ln) < 2:
            raise AxiomViolation("line-wellformed", (lid,), f"line {lid} has < 2 points")
    if len(set(plane.line_sets)) != plane.n_lines:
        raise AxiomViolation("line-wellformed", (), "duplicate lines")
    masks = _line_masks(plane)
    q = plane.order

    if plane.kind == "partial":
        _check_linearity(plane, masks, exact=False)
        return

    if q < 2:
        raise AxiomViolation("order", (), f"order {q} is below 2")

    if plane.kind == "affine":
        if plane.n_points != q * q:
            raise AxiomViolation("counts", (), f"expected {q * q} points, found {plane.n_points}")
        if plane.n_lines != q * q + q:
            raise AxiomViolation("counts", (), f"expected {q * q + q} lines, found {plane.n_lines}")
        for lid, ln in enumerate(plane.lines):
            if len(ln) != q:
                raise AxiomViolation("counts", (lid,), f"line {lid} has {len(ln)} points, expected {q}")
        for p, ls in enumerate(plane.point_to_lines):
            if len(ls) != q + 1:
                raise AxiomViolation("counts", (p,), f"point {p} lies on {len(ls)} lines, expected {q + 1}")
        if plane.parallel_classes is None:
            raise AxiomViolation("classes", (), "affine plane without parallel classes")
        if len(plane.parallel_classes) != q + 1:
            raise AxiomViolation(
                "classes", (), f"expected {q + 1} parallel classes, found {len(plane.parallel_classes)}"
            )
        seen: set[int] = set()
        full = (1 << plane.n_points) - 1
        for ci, cls in enumerate(plane.parallel_classes):
            if len(cls) != q:
                raise AxiomViolation("classes", (ci,), f"class {ci} has {len(cls)} lines, expected {q}")
            cover = 0
            count = 0
            for lid in cls:
                if not 0 <= lid < plane.n_lines or lid in seen:
                    raise AxiomViolation("classes", (ci, lid), f"class {ci} reuses or misnames line {lid}")
                seen.add(lid)
                cover |= masks[lid]
                count += len(plane.lines[lid])
            if cover != full or count != plane.n_points:
                raise AxiomViolation("classes", (ci,), f"class {ci} does not partition the points")
        if len(seen) != plane.n_lines:
            raise AxiomViolation("classes", (), "parallel classes do not cover every line")
        _check_linearity(plane, masks, exact=True)
        return

    # projective
    n = q * q + q + 1
    if plane.n_points != n or plane.n_lines != n:
        raise AxiomViolation(
            "counts", (), f"expected {n} points and lines, found {plane.n_points}/{plane.n_lines}"
        )
    for lid, ln in enumerate(plane.lines):
        if len(ln) != q + 1:
            raise AxiomViolation("counts", (lid,), f"line {lid} has {len(ln)} points, expected {q + 1}")
    for p, ls in enumerate(plane.point_to_lines):
        if len(ls) != q + 1:
            raise AxiomViolation("counts", (p,), f"point {p} lies on {len(ls)} lines, expected {q + 1}")
    _check_linearity(plane, masks, exact=True)


def find_quadrilateral(plane: Plane):
    """Least 4 points in general position (no 3 collinear), or None."""
    P = plane.n_points
    for a in range(P):
        for b in range(a + 1, P):
            lab = plane.line_through(a, b)
            if lab is None:
                continue
            for c in range(b + 1, P):
                if c in plane.line_sets[lab]:
                    continue
                lac = plane.line_through(a, c)
                lbc = plane.line_through(b, c)
                for d in range(c + 1, P):
                    if d in plane.line_sets[lab] or (lac is not None and d in plane.line_sets[lac]):
                        continue
                    if lbc is not None and d in plane.line_sets[lbc]:
                        continue
                    return (a, b, c, d)
    return None


@dataclass(frozen=True)
class PlaneCertificate:
    kind: str
    order: int
    n_points: int
    n_lines: int
    digest: str
    levi: GraphStats
    quadrilateral: tuple[int, ...] | None

    def to_json(self) -> str:
        d = {
            "kind": self.kind,
            "order": self.order,
            "points": self.n_points,
            "lines": self.n_lines,
            "digest": self.digest,
            "levi": {
                "vertices": self.levi.n_vertices,
                "edges": self.levi.n_edges,
                "degree_min": self.levi.degree_min,
                "degree_max": self.levi.degree_max,
                "girth": self.levi.girth,
                "diameter": self.levi.diameter,
            },
            "quadrilateral": list(self.quadrilateral) if self.quadrilateral else None,
        }
        return json.dumps(d, sort_keys=True)


def certify_plane(plane: Plane) -> PlaneCertificate:
    """Check axioms, then summarize the incidence graph.

    Raises AxiomViolation when the plane fails its declared kind.
    """
    check_axioms(plane)
    stats = LeviGraph(plane).stats()
    return PlaneCertificate(
        plane.kind,
        plane.order,
        plane.n_points,
        plane.n_lines,
        plane.digest(),
        stats,
        find_quadrilateral(plane),
    )


# -- embedding verification ----------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    k: int
    checks: tuple[tuple[str, bool, str], ...]
    plane_digest: str

    def failures(self):
        return [c for c in self.checks if not c[1]]

    def to_json(self) -> str:
        return json.dumps(
            {
                "ok": self.ok,
                "k": self.k,
                "plane_digest": self.plane_digest,
                "checks": [{"name": n, "ok": o, "detail": d} for n, o, d in self.checks],
            },
            sort_keys=True,
        )


def verify_embedding(plane: Plane, cycle: EmbeddedCycle) -> VerificationReport:
    """Check a claimed k-cycle against the embedding definition.

    Total: reports every failed condition instead of raising.  Incidences
    beyond the k consecutive ones are allowed and not inspected.
    """
    checks = []
    k = cycle.k
    pts, lns = cycle.points, cycle.lines

    checks.append(("length", k >= 3 and len(pts) == k and len(lns) == k,
                   f"k={k}, {len(pts)} points, {len(lns)} lines"))
    stray_p = sorted(p for p in pts if not 0 <= p < plane.n_points)
    stray_l = sorted(l for l in lns if not 0 <= l < plane.n_lines)
    checks.append(("id-range", not stray_p and not stray_l,
                   "all ids within the plane" if not (stray_p or stray_l)
                   else f"stray points {stray_p}, stray lines {stray_l}"))
    if not (checks[0][1] and checks[1][1]):
        return VerificationReport(False, k, tuple(checks), plane.digest())

    checks.append(("points-distinct", len(set(pts)) == k, f"{len(set(pts))} distinct of {k}"))
    checks.append(("lines-distinct", len(set(lns)) == k, f"{len(set(lns))} distinct of {k}"))

    bad = [
        i
        for i in range(k)
        if pts[i] not in plane.line_sets[lns[i]] or pts[(i + 1) % k] not in plane.line_sets[lns[i]]
    ]
    checks.append(("incidence", not bad, "consecutive incidences hold" if not bad else f"broken at {bad[:4]}"))

    distinct = checks[2][1] and checks[3][1]
    if plane.kind in ("affine", "projective") and not bad and distinct:
        mism = []
        for i in range(k):
            if plane.join(pts[i], pts[(i + 1) % k]) != lns[i]:
                mism.append(i)
        checks.append(("join-consistency", not mism,
                       "each edge line is the join of its endpoints" if not mism else f"mismatch at {mism[:4]}"))

    ok = all(c[1] for c in checks)
    return VerificationReport(ok, k, tuple(checks), plane.digest())


# -- exhaustive search ----------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    cycle: EmbeddedCycle | None
    exhausted: bool  # True: the whole space was searched and nothing found
    nodes: int


def _moves(plane, u, used_p, used_l, root):
    for lid in plane.point_to_lines[u]:
        if lid in used_l:
            continue
        for v in plane.lines[lid]:
            if v > root and v not in used_p:
                yield lid, v


def brute_force_cycle(plane: Plane, k: int, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Find any k-cycle by exhaustive alternating DFS.

    Roots ascend and every other cycle point must exceed the root, so each
    cycle is reachable from exactly one root.  ``budget`` caps node
    expansions; when it runs out the result has ``exhausted=False`` and no
    cycle, which callers must treat as inconclusive.
    """
    if k < 3:
        raise TooLarge(f"cycles need k >= 3, got {k}")
    nodes = 0
    P = plane.n_points
    for root in range(P - k + 1):
        pts = [root]
        lns: list[int] = []
        used_p = {root}
        used_l: set[int] = set()
        stack = [_moves(plane, root, used_p, used_l, root)]
        while stack:
            step = next(stack[-1], None)
            if step is None:
                stack.pop()
                if len(pts) > 1:
                    used_p.discard(pts.pop())
                    used_l.discard(lns.pop())
                continue
            nodes += 1
            if nodes > budget:
                return SearchResult(None, False, nodes)
            lid, v = step
            pts.append(v)
            lns.append(lid)
            used_p.add(v)
            used_l.add(lid)
            if len(pts) == k:
                close = plane.line_through(v, root)
                if close is not None and close not in used_l:
                    cyc = EmbeddedCycle(k, tuple(pts), tuple(lns) + (close,), "oracle")
                    return SearchResult(cyc, False, nodes)
                used_p.discard(pts.pop())
                used_l.discard(lns.pop())
            else:
                stack.append(_moves(plane, v, used_p, used_l, root))
    return SearchResult(None, True, nodes)


def count_cycles_exhaustive(plane: Plane, k: int) -> int:
    """Count the k-cycles of a small plane, each exactly once.

    Canonical form: the least point is the root and its successor on the
    cycle is smaller than its predecessor, which quotients out rotation
    and reflection.  Guarded to tiny planes — the count is used to
    cross-check the search, not to enumerate at scale.
    """
    if plane.n_points > _COUNT_LIMIT:
        raise TooLarge(f"{plane.n_points} points exceeds the counting limit {_COUNT_LIMIT}")
    if k < 3:
        raise TooLarge(f"cycles need k >= 3, got {k}")
    total = 0
    for root in range(plane.n_points - k + 1):
        pts = [root]
        lns: list[int] = []
        used_p = {root}
        used_l: set[int] = set()
        stack = [_moves(plane, root, used_p, used_l, root)]
        while stack:
            step = next(stack[-1], None)
            if step is None:
                stack.pop()
                if len(pts) > 1:
                    used_p.discard(pts.pop())
                    used_l.discard(lns.pop())
                continue
            lid, v = step
            pts.append(v)
            lns.append(lid)
            used_p.add(v)
            used_l.add(lid)
            if len(pts) == k:
                close = plane.line_through(v, root)
                if close is not None and close not in used_l and pts[1] < pts[-1]:
                    total += 1
                used_p.discard(pts.pop())
                used_l.discard(lns.pop())
            else:
                stack.append(_moves(plane, v, used_p, used_l, root))
    return total


def oracle_embed(plane: Plane, k: int, budget: int = DEFAULT_BUDGET) -> EmbeddedCycle:
    """Exhaustive-search embedding; raises ConstructionFailed when it can't."""
    res = brute_force_cycle(plane, k, budget)
    if res.cycle is not None:
        return res.cycle
    reason = "no embedding exists" if res.exhausted else f"budget of {budget} exhausted"
    raise ConstructionFailed("oracle", {"k": k, "nodes": res.nodes, "reason": reason})
