"""Cell decompositions filled by a pair of multicurves.

A framed pattern adds embedding data to a single-intersection pattern: a
cyclic order of intersection points along every curve component and a
crossing orientation at every intersection. That data is a rotation
system, so the filled surface is recovered by face tracing: 0-cells are
the intersection points, 1-cells the arcs between consecutive points
along a curve, 2-cells the orbits of the next-corner permutation.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .coxeter import MixedSignCoxeterGraph
from .errors import InvalidMapError, InvalidParameterError
from .twists import IntersectionPattern


@dataclass(frozen=True)
class CellCounts:
    zero_cells: int
    one_cells: int
    two_cells: int
    euler_characteristic: int
    genus: int


class FramedPattern:
    """A single-intersection pattern plus a rotation system.

    ``alpha_orders[i]`` lists the beta partners of alpha_i in their cyclic
    order along alpha_i (``beta_orders`` symmetrically); ``orientations``
    assigns 0 or 1 to every intersection point, choosing between the two
    transversal crossing rotations. Patterns with an intersection count
    above 1 or with an isolated component are rejected.
    """

    __slots__ = ("_pattern", "_alpha_orders", "_beta_orders", "_orientations")

    def __init__(self, pattern, alpha_orders=None, beta_orders=None, orientations=None):
        if not isinstance(pattern, IntersectionPattern):
            pattern = IntersectionPattern(pattern)
        for row in pattern.intersections:
            for v in row:
                if v > 1:
                    raise InvalidParameterError(
                        "framed patterns require single intersections (entries 0/1)"
                    )
        for i in range(pattern.n):
            if pattern.alpha_degree(i) == 0:
                raise InvalidParameterError("component a%d has no intersections" % (i + 1))
        for j in range(pattern.m):
            if pattern.beta_degree(j) == 0:
                raise InvalidParameterError("component b%d has no intersections" % (j + 1))
        self._pattern = pattern
        x = pattern.intersections
        default_alpha = [
            tuple(j for j in range(pattern.m) if x[i][j]) for i in range(pattern.n)
        ]
        default_beta = [
            tuple(i for i in range(pattern.n) if x[i][j]) for j in range(pattern.m)
        ]
        self._alpha_orders = self._check_orders(alpha_orders, default_alpha, "alpha")
        self._beta_orders = self._check_orders(beta_orders, default_beta, "beta")
        points = self.points()
        if orientations is None:
            orientations = {p: 0 for p in points}
        elif not isinstance(orientations, dict):
            flat = tuple(orientations)
            if len(flat) != len(points):
                raise InvalidParameterError(
                    "expected %d orientation bits, got %d" % (len(points), len(flat))
                )
            orientations = dict(zip(points, flat))
        if set(orientations) != set(points) or any(
            b not in (0, 1) for b in orientations.values()
        ):
            raise InvalidParameterError("orientations must map every point to 0 or 1")
        self._orientations = dict(orientations)

    @staticmethod
    def _check_orders(orders, defaults, label):
        if orders is None:
            return tuple(defaults)
        orders = tuple(tuple(o) for o in orders)
        if len(orders) != len(defaults):
            raise InvalidParameterError("one cyclic order per %s component" % label)
        for k, (got, expected) in enumerate(zip(orders, defaults)):
            if sorted(got) != sorted(expected):
                raise InvalidMapError(
                    "cyclic order for %s%d must list exactly its partners %s"
                    % (label[0], k + 1, sorted(expected))
                )
        return orders

    @property
    def pattern(self):
        return self._pattern

    @property
    def alpha_orders(self):
        return self._alpha_orders

    @property
    def beta_orders(self):
        return self._beta_orders

    @property
    def orientations(self):
        return dict(self._orientations)

    def points(self):
        """Intersection points as (alpha index, beta index), row-major."""
        x = self._pattern.intersections
        return [
            (i, j)
            for i in range(self._pattern.n)
            for j in range(self._pattern.m)
            if x[i][j]
        ]


def trace_faces(framed: FramedPattern) -> CellCounts:
    """Count the cells of the filled surface by next-corner face tracing.

    Around each intersection the four arc ends alternate between the two
    curves; orientation bit 0 gives the rotation (a-out, b-out, a-in, b-in),
    bit 1 swaps the two beta ends. Faces are the orbits of the permutation
    h -> rotation(opposite end of h).
    """
    pattern = framed.pattern
    if not pattern.is_connected():
        raise InvalidMapError("pattern graph is disconnected; the union cannot fill")

    # Arc k of a curve runs from its k-th to its (k+1 mod d)-th point.
    # Half-edge ids: (side, component, arc index, end) with end 0 at the
    # start point and end 1 at the arrival point.
    out_at = {}
    in_at = {}
    for i, order in enumerate(framed.alpha_orders):
        d = len(order)
        for k, j in enumerate(order):
            out_at[("a", (i, j))] = ("a", i, k, 0)
            in_at[("a", (i, order[(k + 1) % d]))] = ("a", i, k, 1)
    for j, order in enumerate(framed.beta_orders):
        d = len(order)
        for k, i in enumerate(order):
            out_at[("b", (i, j))] = ("b", j, k, 0)
            in_at[("b", (order[(k + 1) % d], j))] = ("b", j, k, 1)

    rotation = {}
    for point in framed.points():
        a_out = out_at[("a", point)]
        a_in = in_at[("a", point)]
        b_out = out_at[("b", point)]
        b_in = in_at[("b", point)]
        if framed._orientations[point] == 0:
            cycle = (a_out, b_out, a_in, b_in)
        else:
            cycle = (a_out, b_in, a_in, b_out)
        for h, nxt in zip(cycle, cycle[1:] + cycle[:1]):
            if h in rotation:
                raise InvalidMapError("half-edge %r appears at two vertices" % (h,))
            rotation[h] = nxt

    vertices = len(framed.points())
    edges = len(rotation) // 2
    if len(rotation) != 4 * vertices:
        raise InvalidMapError("rotation system does not cover every arc end")

    seen = set()
    faces = 0
    for start in rotation:
        if start in seen:
            continue
        faces += 1
        h = start
        while True:
            seen.add(h)
            side, comp, arc, end = h
            h = rotation[(side, comp, arc, 1 - end)]
            if h == start:
                break

    chi = vertices - edges + faces
    if chi % 2 or chi > 2:
        raise InvalidMapError("traced surface has impossible Euler characteristic %d" % chi)
    return CellCounts(vertices, edges, faces, chi, (2 - chi) // 2)


def default_framing(pattern) -> FramedPattern:
    """Ascending cyclic orders, all crossings oriented 0."""
    return FramedPattern(pattern)


def all_framings(pattern):
    """Every framing: all cyclic orders (first partner fixed, so each cyclic
    class appears once) crossed with all orientation assignments."""
    framed0 = FramedPattern(pattern)

    def cyclic_orders(base):
        first, rest = base[0], list(base[1:])
        for perm in itertools.permutations(rest):
            yield (first,) + perm

    alpha_choices = [list(cyclic_orders(o)) for o in framed0.alpha_orders]
    beta_choices = [list(cyclic_orders(o)) for o in framed0.beta_orders]
    points = framed0.points()
    for alphas in itertools.product(*alpha_choices):
        for betas in itertools.product(*beta_choices):
            for bits in itertools.product((0, 1), repeat=len(points)):
                yield FramedPattern(pattern, alphas, betas, dict(zip(points, bits)))


def genus_distribution(pattern):
    """Multiset of genera over all framings, as a genus -> count mapping."""
    return dict(Counter(trace_faces(f).genus for f in all_framings(pattern)))


def tree_fill_genus(family: str, n: int) -> int:
    """Genus of the unique surface filled by a path or D-shaped pattern.

    Framing independence makes these closed forms: A_2g and A_2g+1 fill
    genus g; D_2g+1 and D_2g+2 fill genus g.
    """
    if family == "A":
        if n < 1:
            raise InvalidParameterError("A_n needs n >= 1")
        return n // 2
    if family == "D":
        if n < 4:
            raise InvalidParameterError("D_n needs n >= 4")
        return (n - 1) // 2
    raise InvalidParameterError("family must be 'A' or 'D'")


def cycle_fill_genus_bound(length: int) -> int:
    """A 2g-cycle pattern fills surfaces of genus at most g: with V = E/2
    intersections the 2-cell count is even, so at least 2."""
    if length < 4 or length % 2:
        raise InvalidParameterError("cycle patterns have even length >= 4")
    return length // 2


def face_parity(graph: MixedSignCoxeterGraph) -> int:
    """Parity of the 2-cell count, forced by the even Euler characteristic:
    F is congruent to the number of graph edges mod 2. Returns 0 or 1."""
    if not graph.is_connected():
        raise InvalidParameterError("face parity needs a connected graph")
    return len(graph.edges) % 2
