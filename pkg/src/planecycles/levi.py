"""Incidence (Levi) graph of a plane: stats and DOT export.

Vertices ``0..P-1`` are the points, ``P..P+L-1`` the lines.  The graph is
bipartite by construction, so every cycle has even length and a k-gon of
the plane corresponds to a 2k-cycle here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .plane import Plane


@dataclass(frozen=True)
class GraphStats:
    n_vertices: int
    n_edges: int
    degree_min: int
    degree_max: int
    girth: int  # 0 when acyclic
    diameter: int  # -1 when disconnected

    @property
    def is_regular(self) -> bool:
        return self.degree_min == self.degree_max


class LeviGraph:
    __slots__ = ("plane", "n_points", "n_vertices", "adj")

    def __init__(self, plane: Plane):
        self.plane = plane
        p = plane.n_points
        self.n_points = p
        self.n_vertices = p + plane.n_lines
        adj = [[] for _ in range(self.n_vertices)]
        for lid, ln in enumerate(plane.lines):
            for pt in ln:
                adj[pt].append(p + lid)
                adj[p + lid].append(pt)
        self.adj = [tuple(sorted(ns)) for ns in adj]

    def _bfs(self, root: int):
        dist = [-1] * self.n_vertices
        dist[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            for v in self.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(v)
        return dist

    def stats(self) -> GraphStats:
        degs = [len(ns) for ns in self.adj] or [0]
        n_edges = sum(degs) // 2
        girth = 0
        best = None
        # BFS from every vertex; a non-tree edge (u, v) closes a walk of
        # length dist[u] + dist[v] + 1, and the global minimum over all
        # roots is the exact girth.
        for root in range(self.n_vertices):
            dist = [-1] * self.n_vertices
            parent = [-1] * self.n_vertices
            dist[root] = 0
            q = deque([root])
            while q:
                u = q.popleft()
                if best is not None and dist[u] * 2 >= best:
                    continue
                for v in self.adj[u]:
                    if dist[v] < 0:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        q.append(v)
                    elif v != parent[u]:
                        cand = dist[u] + dist[v] + 1
                        if best is None or cand < best:
                            best = cand
        girth = best or 0
        diameter = 0
        for root in range(self.n_vertices):
            dist = self._bfs(root)
            far = max(dist)
            if min(dist) < 0:
                diameter = -1
                break
            diameter = max(diameter, far)
        return GraphStats(
            self.n_vertices, n_edges, min(degs), max(degs), girth, diameter
        )

    def export_dot(self) -> str:
        """Graphviz text; point vertices are p<i>, line vertices L<j>."""
        out = ["graph levi {"]
        for i in range(self.n_points):
            out.append(f"  p{i};")
        for j in range(self.n_vertices - self.n_points):
            out.append(f"  L{j};")
        for lid, ln in enumerate(self.plane.lines):
            for pt in ln:
                out.append(f"  p{pt} -- L{lid};")
        out.append("}")
        return "\n".join(out) + "\n"
