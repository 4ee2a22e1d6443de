"""Finite partial, affine, and projective planes as pure incidence data.

A plane is points ``0..P-1`` plus lines given as sorted tuples of point
ids.  Affine planes additionally carry their parallel classes.  All
classical constructions number points and lines lexicographically in the
coordinates of the underlying field, so identical parameters always
produce byte-identical planes.

Plane objects are immutable after construction; every lookup structure is
built once and only read afterwards, so instances can be shared freely
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidLineId,
    InvalidPoint,
    NoCommonLine,
    OrderTooLarge,
    SameLine,
    SamePoint,
    WrongKind,
)
from .gf import GF

KINDS = ("partial", "affine", "projective")

DEFAULT_MAX_PLANE_ORDER = 128
_EAGER_PAIR_LIMIT = 4161  # point count of PG(2,64); triangular table below this


@dataclass(frozen=True)
class EmbeddedCycle:
    """A k-cycle in a plane: alternating points and lines.

    ``lines[i]`` joins ``points[i]`` and ``points[(i+1) % k]``.  ``branch``
    records which construction produced the cycle; it is metadata only.
    """

    k: int
    points: tuple[int, ...]
    lines: tuple[int, ...]
    branch: str = ""

    def rotated(self, offset: int) -> "EmbeddedCycle":
        o = offset % self.k
        return EmbeddedCycle(
            self.k,
            self.points[o:] + self.points[:o],
            self.lines[o:] + self.lines[:o],
            self.branch,
        )

    def reflected(self) -> "EmbeddedCycle":
        pts = (self.points[0],) + tuple(reversed(self.points[1:]))
        lns = tuple(reversed(self.lines))
        return EmbeddedCycle(self.k, pts, lns, self.branch)


class Plane:
    """Immutable incidence structure.

    Parameters
    ----------
    kind : one of "partial", "affine", "projective"
    order : declared order q (0 allowed for partial planes)
    n_points : number of points
    lines : iterable of point-id tuples; stored sorted
    parallel_classes : for affine planes, a partition of line ids
    labels : optional human-readable point labels, same length as points
    """

    __slots__ = (
        "kind",
        "order",
        "n_points",
        "lines",
        "parallel_classes",
        "labels",
        "line_sets",
        "point_to_lines",
        "_line_class",
        "_pair",
        "_pair_lazy",
        "_class_line",
    )

    def __init__(self, kind, order, n_points, lines, parallel_classes=None, labels=None):
        if kind not in KINDS:
            raise WrongKind(f"unknown plane kind {kind!r}")
        self.kind = kind
        self.order = order
        self.n_points = n_points
        self.lines = tuple(tuple(sorted(ln)) for ln in lines)
        self.parallel_classes = (
            tuple(tuple(sorted(c)) for c in parallel_classes) if parallel_classes else None
        )
        self.labels = tuple(labels) if labels else None
        self.line_sets = tuple(frozenset(ln) for ln in self.lines)
        ptl = [[] for _ in range(n_points)]
        for lid, ln in enumerate(self.lines):
            for p in ln:
                if not 0 <= p < n_points:
                    raise InvalidPoint(f"line {lid} references point {p} out of range")
                ptl[p].append(lid)
        self.point_to_lines = tuple(tuple(ls) for ls in ptl)
        lc = None
        if self.parallel_classes is not None:
            lc = [-1] * len(self.lines)
            for ci, cls in enumerate(self.parallel_classes):
                for lid in cls:
                    lc[lid] = ci
        self._line_class = tuple(lc) if lc is not None else None
        if n_points <= _EAGER_PAIR_LIMIT:
            pair = [-1] * (n_points * (n_points - 1) // 2)
            for lid, ln in enumerate(self.lines):
                for i, u in enumerate(ln):
                    for v in ln[i + 1 :]:
                        pair[v * (v - 1) // 2 + u] = lid
            self._pair = pair
            self._pair_lazy = None
        else:
            self._pair = None
            self._pair_lazy = {}
        # class x point -> line table for affine planes (hot path)
        if self.kind == "affine" and self.parallel_classes is not None:
            tbl = [[-1] * len(self.parallel_classes) for _ in range(n_points)]
            for lid, ln in enumerate(self.lines):
                ci = self._line_class[lid]
                if ci < 0:
                    continue
                for p in ln:
                    tbl[p][ci] = lid
            self._class_line = tbl
        else:
            self._class_line = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n_lines(self) -> int:
        return len(self.lines)

    def check_point(self, p: int) -> None:
        if not 0 <= p < self.n_points:
            raise InvalidPoint(f"point id {p} out of range")

    def check_line(self, l: int) -> None:
        if not 0 <= l < len(self.lines):
            raise InvalidLineId(f"line id {l} out of range")

    def incident(self, p: int, l: int) -> bool:
        return p in self.line_sets[l]

    def line_class(self, l: int) -> int:
        """Parallel-class index of a line (affine planes only)."""
        if self._line_class is None:
            raise WrongKind("parallel classes are only defined for affine planes")
        self.check_line(l)
        return self._line_class[l]

    # -- incidence queries --------------------------------------------------

    def line_through(self, u: int, v: int) -> int | None:
        """Line joining two distinct points, or None when there is none."""
        if u > v:
            u, v = v, u
        if self._pair is not None:
            lid = self._pair[v * (v - 1) // 2 + u]
            return None if lid < 0 else lid
        key = (u, v)
        cached = self._pair_lazy.get(key, -2)
        if cached != -2:
            return cached
        found = None
        sv = self.line_sets
        for lid in self.point_to_lines[u]:
            if v in sv[lid]:
                found = lid
                break
        self._pair_lazy[key] = found
        return found

    def join(self, u: int, v: int) -> int:
        """The unique line through two distinct points."""
        self.check_point(u)
        self.check_point(v)
        if u == v:
            raise SamePoint(f"join needs two distinct points, got {u} twice")
        lid = self.line_through(u, v)
        if lid is None:
            raise NoCommonLine(f"points {u} and {v} lie on no common line")
        return lid

    def meet(self, l: int, m: int) -> int | None:
        """Common point of two distinct lines, or None when parallel."""
        self.check_line(l)
        self.check_line(m)
        if l == m:
            raise SameLine(f"meet needs two distinct lines, got {l} twice")
        common = self.line_sets[l] & self.line_sets[m]
        if not common:
            return None
        if len(common) > 1:
            raise InvalidLineId(f"lines {l} and {m} share {len(common)} points")
        return next(iter(common))

    def parallel_through(self, class_index: int, p: int) -> int:
        """The unique line of a parallel class passing through a point."""
        if self.kind != "affine" or self._class_line is None:
            raise WrongKind("parallel_through requires an affine plane")
        self.check_point(p)
        if not 0 <= class_index < len(self.parallel_classes):
            raise InvalidLineId(f"class index {class_index} out of range")
        lid = self._class_line[p][class_index]
        if lid < 0:
            raise InvalidLineId(f"no line of class {class_index} through point {p}")
        return lid

    # -- canonical serialization --------------------------------------------

    def canonical_text(self) -> str:
        """Byte-reproducible text form; also the digest preimage."""
        out = [
            f"plane {self.kind} order {self.order} points {self.n_points} lines {self.n_lines}"
        ]
        if self.kind == "affine":
            out.append(f"classes {len(self.parallel_classes)}")
            for i, cls in enumerate(self.parallel_classes):
                out.append(f"class {i}: " + " ".join(map(str, cls)))
        for lid, ln in enumerate(self.lines):
            out.append(f"line {lid}: " + " ".join(map(str, ln)))
        return "\n".join(out) + "\n"

    def digest(self) -> str:
        import hashlib

        h = hashlib.sha256(self.canonical_text().encode("utf-8")).hexdigest()
        return f"sha256:{h}"

    def __repr__(self) -> str:
        return f"Plane({self.kind}, order={self.order}, points={self.n_points}, lines={self.n_lines})"


# -- classical constructions --------------------------------------------------


def build_affine_classical(f: GF, max_order: int = DEFAULT_MAX_PLANE_ORDER) -> Plane:
    """The affine plane AG(2, q) over a finite field.

    Points are pairs (x, y) numbered x*q + y.  Lines y = m*x + b come
    first, numbered m*q + b, followed by the verticals x = c at q*q + c.
    Parallel class i < q holds the slope-i lines; class q the verticals.
    """
    q = f.q
    if q > max_order:
        raise OrderTooLarge(f"plane order {q} exceeds the ceiling {max_order}")
    lines = []
    for m in f.elements():
        for b in f.elements():
            lines.append(tuple(x * q + f.add(f.mul(m, x), b) for x in f.elements()))
    for c in f.elements():
        lines.append(tuple(c * q + y for y in f.elements()))
    classes = [tuple(range(m * q, (m + 1) * q)) for m in range(q)]
    classes.append(tuple(range(q * q, q * q + q)))
    labels = [f"({x},{y})" for x in f.elements() for y in f.elements()]
    return Plane("affine", q, q * q, lines, classes, labels)


def _proj_point_id(q: int, x: int, y: int, z: int) -> int:
    # (1,a,b) -> a*q+b ; (0,1,c) -> q^2+c ; (0,0,1) -> q^2+q
    if x == 1:
        return y * q + z
    if y == 1:
        return q * q + z
    return q * q + q


def _normalize(f: GF, v: tuple[int, int, int]) -> tuple[int, int, int]:
    for i in range(3):
        if v[i] != 0:
            s = f.inv(v[i])
            return tuple(f.mul(s, c) for c in v)
    raise AssertionError("zero vector has no projective class")


def build_projective_classical(f: GF, max_order: int = DEFAULT_MAX_PLANE_ORDER) -> Plane:
    """The projective plane PG(2, q) over a finite field.

    Points and lines are both numbered by normalized homogeneous triples
    (first nonzero coordinate scaled to 1), enumerated (1,a,b), then
    (0,1,c), then (0,0,1).  Line [u:v:w] consists of the points with
    u*x + v*y + w*z = 0.
    """
    q = f.q
    if q > max_order:
        raise OrderTooLarge(f"plane order {q} exceeds the ceiling {max_order}")
    n = q * q + q + 1

    def line_points(u, v, w):
        if u == 1:
            b1 = (f.neg(v), 1, 0)
            b2 = (f.neg(w), 0, 1)
        elif v == 1:
            b1 = (1, 0, 0)
            b2 = (0, f.neg(w), 1)
        else:
            b1 = (1, 0, 0)
            b2 = (0, 1, 0)
        pts = [_proj_point_id(q, *_normalize(f, b2))]
        for t in f.elements():
            vec = tuple(f.add(b1[i], f.mul(t, b2[i])) for i in range(3))
            pts.append(_proj_point_id(q, *_normalize(f, vec)))
        return tuple(pts)

    lines = []
    for a in f.elements():
        for b in f.elements():
            lines.append(line_points(1, a, b))
    for c in f.elements():
        lines.append(line_points(0, 1, c))
    lines.append(line_points(0, 0, 1))

    labels = [f"[1:{a}:{b}]" for a in f.elements() for b in f.elements()]
    labels += [f"[0:1:{c}]" for c in f.elements()]
    labels.append("[0:0:1]")
    return Plane("projective", q, n, lines, None, labels)


# -- conversions ---------------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveExtension:
    """Result of completing an affine plane with a line at infinity."""

    plane: Plane
    line_at_infinity: int
    class_points: tuple[int, ...]  # parallel class index -> new infinite point id


@dataclass(frozen=True)
class AffineRestriction:
    """Result of deleting a line (and its points) from a projective plane."""

    plane: Plane
    point_map: tuple[int, ...]  # affine point id -> original projective id
    line_map: tuple[int, ...]  # affine line id -> original projective id
    class_points: tuple[int, ...]  # class index -> deleted projective point id


def projective_from_affine(a: Plane) -> ProjectiveExtension:
    """Complete an affine plane: one new point per parallel class, one new line.

    Affine ids are preserved; class i gains the infinite point q^2 + i and
    the line at infinity takes the last line id.
    """
    if a.kind != "affine":
        raise WrongKind("projective_from_affine requires an affine plane")
    q = a.order
    inf_pts = tuple(q * q + i for i in range(len(a.parallel_classes)))
    lines = []
    for lid, ln in enumerate(a.lines):
        lines.append(ln + (inf_pts[a.line_class(lid)],))
    lines.append(inf_pts)
    labels = None
    if a.labels:
        labels = list(a.labels) + [f"(inf:{i})" for i in range(len(inf_pts))]
    plane = Plane("projective", q, q * q + q + 1, lines, None, labels)
    return ProjectiveExtension(plane, len(lines) - 1, inf_pts)


def affine_from_projective(p: Plane, line_at_infinity: int) -> AffineRestriction:
    """Delete a line and its points; surviving ids are renumbered ascending.

    The parallel classes of the restriction are indexed by the deleted
    points in ascending id order: class c holds the survivors of the lines
    through deleted point number c.
    """
    if p.kind != "projective":
        raise WrongKind("affine_from_projective requires a projective plane")
    p.check_line(line_at_infinity)
    removed_pts = p.lines[line_at_infinity]
    removed_set = set(removed_pts)
    pt_new = {}
    point_map = []
    for pid in range(p.n_points):
        if pid not in removed_set:
            pt_new[pid] = len(point_map)
            point_map.append(pid)
    line_map = []
    new_lines = []
    line_new = {}
    for lid, ln in enumerate(p.lines):
        if lid == line_at_infinity:
            continue
        line_new[lid] = len(new_lines)
        new_lines.append(tuple(pt_new[x] for x in ln if x not in removed_set))
        line_map.append(lid)
    classes = []
    for rp in removed_pts:
        cls = tuple(
            sorted(line_new[lid] for lid in p.point_to_lines[rp] if lid != line_at_infinity)
        )
        classes.append(cls)
    labels = None
    if p.labels:
        labels = [p.labels[pid] for pid in point_map]
    plane = Plane("affine", p.order, len(point_map), new_lines, classes, labels)
    return AffineRestriction(plane, tuple(point_map), tuple(line_map), tuple(removed_pts))
