"""Integer-indexed arenas and plain graph routines shared by the solvers."""

from __future__ import annotations

from typing import Iterable, Sequence


class Arena:
    """Directed graph with an ownership partition over players 0 and 1.

    Edges keep declaration order; out-edge lists are ordered by edge index so
    lowest-index tie-breaking is just "first match".
    """

    def __init__(self, n: int, owner: Sequence[int], edges: Sequence[tuple[int, int]]):
        self.n = n
        self.owner = list(owner)
        self.edge_src = [e[0] for e in edges]
        self.edge_tgt = [e[1] for e in edges]
        self.m = len(edges)
        self.out_edges = [[] for _ in range(n)]
        self.in_edges = [[] for _ in range(n)]
        for k in range(self.m):
            self.out_edges[self.edge_src[k]].append(k)
            self.in_edges[self.edge_tgt[k]].append(k)

    def successors(self, v: int):
        tgt = self.edge_tgt
        return [tgt[k] for k in self.out_edges[v]]

    def restricted(self, keep: set[int]) -> tuple["Arena", list[int], list[int]]:
        """Induced subarena; returns (arena, vertex_map, edge_map) where
        vertex_map[new] = old and edge_map[new] = old edge index."""
        vmap = sorted(keep)
        back = {old: new for new, old in enumerate(vmap)}
        edges = []
        emap = []
        for k in range(self.m):
            u, v = self.edge_src[k], self.edge_tgt[k]
            if u in back and v in back:
                edges.append((back[u], back[v]))
                emap.append(k)
        sub = Arena(len(vmap), [self.owner[v] for v in vmap], edges)
        return sub, vmap, emap


def reachable_from(arena: Arena, starts: Iterable[int], allowed: set[int] | None = None) -> set[int]:
    seen = set()
    stack = [s for s in starts if allowed is None or s in allowed]
    seen.update(stack)
    while stack:
        v = stack.pop()
        for k in arena.out_edges[v]:
            t = arena.edge_tgt[k]
            if t not in seen and (allowed is None or t in allowed):
                seen.add(t)
                stack.append(t)
    return seen


def shortest_path(arena: Arena, source: int, targets: set[int], allowed: set[int] | None = None) -> list[int] | None:
    """BFS path (vertex list) from source to any target, lowest-index ties."""
    if allowed is not None and source not in allowed:
        return None
    if source in targets:
        return [source]
    prev = {source: None}
    frontier = [source]
    while frontier:
        nxt = []
        for v in frontier:
            for k in arena.out_edges[v]:
                t = arena.edge_tgt[k]
                if t in prev or (allowed is not None and t not in allowed):
                    continue
                prev[t] = v
                if t in targets:
                    path = [t]
                    while path[-1] != source:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return path
                nxt.append(t)
        frontier = nxt
    return None


def tarjan_sccs(arena: Arena, allowed: set[int] | None = None) -> list[list[int]]:
    """Strongly connected components (iterative Tarjan), in reverse
    topological order of the condensation."""
    if allowed is None:
        allowed = set(range(arena.n))
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = [0]

    for root in sorted(allowed):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            out = arena.out_edges[v]
            while pi < len(out):
                t = arena.edge_tgt[out[pi]]
                pi += 1
                if t not in allowed:
                    continue
                if t not in index:
                    work[-1] = (v, pi)
                    work.append((t, 0))
                    advanced = True
                    break
                if t in on_stack:
                    low[v] = min(low[v], index[t])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return sccs


def attractor(
    arena: Arena,
    player: int,
    targets: Iterable[int],
    allowed: set[int] | None = None,
) -> tuple[set[int], dict[int, int]]:
    """Backward fixpoint of "player can force reaching targets in finitely
    many steps", within the subarena induced by `allowed`.

    Returns the attractor set and, for player-owned vertices outside the
    target, the lowest-index edge that makes progress.
    """
    if allowed is None:
        allowed = set(range(arena.n))
    attr = {t for t in targets if t in allowed}
    level = {v: 0 for v in attr}
    # remaining successors inside `allowed` for opponent vertices
    degree = {}
    queue = list(sorted(attr))
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for k in arena.in_edges[v]:
            u = arena.edge_src[k]
            if u not in allowed or u in attr:
                continue
            if arena.owner[u] == player:
                attr.add(u)
                level[u] = level[v] + 1
                queue.append(u)
            else:
                if u not in degree:
                    degree[u] = sum(
                        1 for j in arena.out_edges[u] if arena.edge_tgt[j] in allowed
                    )
                degree[u] -= 1
                if degree[u] == 0:
                    attr.add(u)
                    level[u] = level[v] + 1
                    queue.append(u)
    strategy = {}
    for v in attr:
        if arena.owner[v] != player or level[v] == 0:
            continue
        for k in arena.out_edges[v]:
            t = arena.edge_tgt[k]
            if t in attr and level[t] < level[v]:
                strategy[v] = k
                break
    return attr, strategy
