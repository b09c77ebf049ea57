"""Small-graph utilities: bipartitions, connectivity, subgraph embeddings.

Graphs are given as a vertex count plus normalized edge pairs (i < j).
Everything here is sized for the tiny diagrams this package works with,
so the algorithms favour clarity over asymptotics.
"""

from __future__ import annotations

from collections import deque

from .errors import InvalidParameterError


def normalize_edges(vertex_count, edges):
    """Validate and normalize an edge collection to sorted (i, j) pairs with i < j."""
    out = set()
    for e in edges:
        a, b = e
        if not (0 <= a < vertex_count and 0 <= b < vertex_count):
            raise InvalidParameterError("edge %r out of range" % (e,))
        if a == b:
            raise InvalidParameterError("loops are not allowed")
        pair = (a, b) if a < b else (b, a)
        if pair in out:
            raise InvalidParameterError("repeated edge %r" % (e,))
        out.add(pair)
    return frozenset(out)


def adjacency_sets(vertex_count, edges):
    adj = [set() for _ in range(vertex_count)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def is_connected(vertex_count, edges):
    if vertex_count == 0:
        return False
    adj = adjacency_sets(vertex_count, edges)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == vertex_count


def bipartition(vertex_count, edges):
    """Two-coloring by BFS; returns (part0, part1) sorted, part0 containing
    the lowest vertex of each component, or None if an odd cycle exists."""
    adj = adjacency_sets(vertex_count, edges)
    color = [None] * vertex_count
    for start in range(vertex_count):
        if color[start] is not None:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if color[w] is None:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    part0 = tuple(v for v in range(vertex_count) if color[v] == 0)
    part1 = tuple(v for v in range(vertex_count) if color[v] == 1)
    return part0, part1


def find_embedding(host_count, host_edges, pat_count, pat_edges):
    """Subgraph monomorphism: inject pattern vertices into host vertices so
    that every pattern edge lands on a host edge (not induced).

    Returns a dict pattern-vertex -> host-vertex, or None. Backtracking with
    degree pruning; the pattern is assumed connected, which lets each new
    vertex be anchored to an already-placed neighbour.
    """
    if pat_count > host_count or len(pat_edges) > len(host_edges):
        return None
    host_adj = adjacency_sets(host_count, host_edges)
    pat_adj = adjacency_sets(pat_count, pat_edges)

    # Order pattern vertices so each one (after the first) touches a placed one.
    order = [max(range(pat_count), key=lambda v: len(pat_adj[v]))]
    placed = {order[0]}
    while len(order) < pat_count:
        nxt = max(
            (v for v in range(pat_count) if v not in placed and pat_adj[v] & placed),
            key=lambda v: len(pat_adj[v]),
            default=None,
        )
        if nxt is None:  # disconnected pattern: fall back to any vertex
            nxt = next(v for v in range(pat_count) if v not in placed)
        order.append(nxt)
        placed.add(nxt)

    assignment = {}
    used = set()

    def extend(k):
        if k == len(order):
            return True
        v = order[k]
        anchors = [u for u in pat_adj[v] if u in assignment]
        if anchors:
            candidates = set.intersection(*(host_adj[assignment[u]] for u in anchors))
        else:
            candidates = set(range(host_count))
        for c in sorted(candidates - used):
            if len(host_adj[c]) < len(pat_adj[v]):
                continue
            assignment[v] = c
            used.add(c)
            if extend(k + 1):
                return True
            del assignment[v]
            used.discard(c)
        return False

    if extend(0):
        return dict(assignment)
    return None


def are_isomorphic(count_a, edges_a, count_b, edges_b):
    """Isomorphism test for tiny graphs via embedding with matching sizes."""
    if count_a != count_b or len(edges_a) != len(edges_b):
        return False
    deg_a = sorted(len(s) for s in adjacency_sets(count_a, edges_a))
    deg_b = sorted(len(s) for s in adjacency_sets(count_b, edges_b))
    if deg_a != deg_b:
        return False
    return find_embedding(count_a, edges_a, count_b, edges_b) is not None
