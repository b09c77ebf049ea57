"""Mixed-sign Coxeter graphs, their reflections and Coxeter transformations.

A mixed-sign Coxeter graph is a finite simple graph with a sign attached to
every vertex. The associated symmetric bilinear form B has diagonal
-2 * sign(v) and off-diagonal entries from the adjacency matrix; each
vertex contributes a reflection, and a product of all reflections (each
exactly once) is a Coxeter transformation. The homological action of the
corresponding mapping class is minus that transformation.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import graphs
from .errors import (
    InternalInconsistencyError,
    InvalidParameterError,
    NoRealRootError,
    NoRealSolutionError,
    NotAffineError,
    NotBipartiteError,
)
from .exact import (
    DEFAULT_TOL,
    ExactMatrix,
    IntPolynomial,
    char_poly,
    largest_real_root,
    solve_reciprocal_sum,
    spectral_radius,
)

LIMIT_DILATATION = 3.0 + 2.0 * math.sqrt(2.0)  # x + 1/x = 6


class MixedSignCoxeterGraph:
    """Simple graph with a sign in {+1, -1} per vertex. Vertices are 0-based."""

    __slots__ = ("_n", "_edges", "_signs")

    def __init__(self, vertex_count, edges, signs):
        if vertex_count < 1:
            raise InvalidParameterError("graph needs at least one vertex")
        self._n = int(vertex_count)
        self._edges = graphs.normalize_edges(self._n, edges)
        signs = tuple(signs)
        if len(signs) != self._n or any(s not in (1, -1) for s in signs):
            raise InvalidParameterError("signs must be a +1/-1 value per vertex")
        self._signs = signs

    @property
    def vertex_count(self):
        return self._n

    @property
    def edges(self):
        return self._edges

    @property
    def signs(self):
        return self._signs

    def __eq__(self, other):
        return (
            isinstance(other, MixedSignCoxeterGraph)
            and self._n == other._n
            and self._edges == other._edges
            and self._signs == other._signs
        )

    def __hash__(self):
        return hash((self._n, self._edges, self._signs))

    def __repr__(self):
        return "MixedSignCoxeterGraph(%d, %s, %s)" % (
            self._n,
            sorted(self._edges),
            list(self._signs),
        )

    def degree(self, v):
        return sum(1 for e in self._edges if v in e)

    def adjacency_matrix(self) -> ExactMatrix:
        a = [[0] * self._n for _ in range(self._n)]
        for i, j in self._edges:
            a[i][j] = 1
            a[j][i] = 1
        return ExactMatrix(a)

    def is_connected(self):
        return graphs.is_connected(self._n, self._edges)

    def is_tree(self):
        return self.is_connected() and len(self._edges) == self._n - 1

    def bipartition(self):
        parts = graphs.bipartition(self._n, self._edges)
        if parts is None:
            raise NotBipartiteError("graph contains an odd cycle")
        return parts

    def is_bipartite(self):
        return graphs.bipartition(self._n, self._edges) is not None

    def is_alternating(self):
        """True if the signs are constant on each class of a bipartition and differ."""
        parts = graphs.bipartition(self._n, self._edges)
        if parts is None:
            return False
        part0, part1 = parts
        s0 = {self._signs[v] for v in part0}
        s1 = {self._signs[v] for v in part1}
        return len(s0) == 1 and len(s1) == 1 and s0 != s1

    def with_signs(self, signs):
        return MixedSignCoxeterGraph(self._n, self._edges, signs)

    def all_plus(self):
        return self.with_signs([1] * self._n)

    def opposite_signs(self):
        return self.with_signs([-s for s in self._signs])


def _alternating_signs(vertex_count, edges):
    parts = graphs.bipartition(vertex_count, edges)
    if parts is None:
        raise NotBipartiteError("alternating signs need a bipartite graph")
    part0 = set(parts[0])
    return tuple(1 if v in part0 else -1 for v in range(vertex_count))


def bilinear_form(g: MixedSignCoxeterGraph) -> ExactMatrix:
    """Symmetric form with B[i][i] = -2 * sign(i) and B[i][j] = adjacency."""
    rows = [list(r) for r in g.adjacency_matrix().rows]
    for i in range(g.vertex_count):
        rows[i][i] = -2 * g.signs[i]
    return ExactMatrix(rows)


def reflection(g: MixedSignCoxeterGraph, i: int) -> ExactMatrix:
    """Matrix of the reflection about the hyperplane perpendicular to vertex i.

    In the vertex basis: v_i maps to -v_i, and v_j picks up sign(i) * a_ij
    copies of v_i. Always an involution since B(v_i, v_i) = -2 * sign(i).
    """
    n = g.vertex_count
    if not 0 <= i < n:
        raise InvalidParameterError("vertex index %d out of range" % i)
    a = g.adjacency_matrix()
    rows = [[int(r == c) for c in range(n)] for r in range(n)]
    rows[i][i] = -1
    for j in range(n):
        if j != i and a[i, j]:
            rows[i][j] = g.signs[i] * a[i, j]
    return ExactMatrix(rows)


def _check_order(g, order):
    order = tuple(order)
    if sorted(order) != list(range(g.vertex_count)):
        raise InvalidParameterError(
            "order must be a permutation of all %d vertices" % g.vertex_count
        )
    return order


def coxeter_transformation(g: MixedSignCoxeterGraph, order) -> ExactMatrix:
    """Product of all vertex reflections; the first listed is applied first."""
    order = _check_order(g, order)
    result = ExactMatrix.identity(g.vertex_count)
    for v in order:
        result = reflection(g, v) * result
    return result


def homological_action(g: MixedSignCoxeterGraph, order) -> ExactMatrix:
    """Minus the Coxeter transformation: the induced map on first homology."""
    return -coxeter_transformation(g, order)


def bipartite_order(g: MixedSignCoxeterGraph):
    """Reflection order listing one bipartition class, then the other.

    With alternating signs the minus class comes first; otherwise the class
    not containing vertex 0 comes first. Ascending indices within a class.
    """
    part0, part1 = g.bipartition()
    if g.is_alternating() and g.signs[part0[0]] == -1:
        first, second = part0, part1
    else:
        first, second = part1, part0
    return tuple(sorted(first)) + tuple(sorted(second))


def classical_to_alternating(mu_real_part: float) -> float:
    """Largest eigenvalue of the alternating action given Re(mu) of a
    unit-circle eigenvalue mu of the classical action: x + 1/x = 4 - 2 Re(mu)."""
    if mu_real_part > 1:
        raise NoRealSolutionError("Re(mu) must lie in [-1, 1]")
    return solve_reciprocal_sum(4.0 - 2.0 * mu_real_part)


def alexander_torus_2_odd(g: int) -> IntPolynomial:
    """Alexander polynomial of the (2, 2g+1) torus knot, by exact division:
    (t^(4g+2) - 1)(t - 1) / ((t^(2g+1) - 1)(t^2 - 1))."""
    if g < 1:
        raise InvalidParameterError("g must be a positive integer")

    def cyclo_minus_one(n):
        return IntPolynomial([-1] + [0] * (n - 1) + [1])

    numerator = cyclo_minus_one(4 * g + 2) * cyclo_minus_one(1)
    denominator = cyclo_minus_one(2 * g + 1) * cyclo_minus_one(2)
    return numerator.exact_div(denominator)


def unit_circle_roots(p: IntPolynomial, order: int, tol: float = 1e-9):
    """Roots of p among the order-th roots of unity, found by direct evaluation."""
    roots = []
    for k in range(order):
        z = cmath.exp(2j * cmath.pi * k / order)
        if abs(p(z)) <= tol:
            roots.append(z)
    return roots


def alexander_route_dilatation(g: int, tol: float = 1e-9) -> float:
    """Dilatation of the alternating (A_2g, +-) class through the Alexander
    polynomial: locate the root of smallest real part on the unit circle and
    push it through the classical-to-alternating relation."""
    delta = alexander_torus_2_odd(g)
    roots = unit_circle_roots(delta, 4 * g + 2, tol)
    if len(roots) != delta.degree:
        raise InternalInconsistencyError(
            "expected %d unit-circle roots, found %d" % (delta.degree, len(roots))
        )
    return classical_to_alternating(min(z.real for z in roots))


def lambda_closed_form(g: int) -> float:
    """Minimal dilatation on the closed genus-g surface, in closed form."""
    if g < 1:
        raise InvalidParameterError("g must be a positive integer")
    c = math.cos(math.pi * (2 * g - 1) / (2 * g + 1))
    return 2.0 - c + math.sqrt(3.0 - 4.0 * c + c * c)


_DYNKIN_FAMILIES = (
    "A",
    "D",
    "E6",
    "E7",
    "E8",
    "affine_D",
    "affine_E6",
    "affine_E7",
    "affine_E8",
    "cycle",
    "enriched_6_cycle",
)


def _dynkin_edges(family, n):
    if family == "A":
        if n is None or n < 1:
            raise InvalidParameterError("A_n needs n >= 1")
        return n, [(i, i + 1) for i in range(n - 1)]
    if family == "D":
        if n is None or n < 4:
            raise InvalidParameterError("D_n needs n >= 4")
        return n, [(i, i + 1) for i in range(n - 2)] + [(1, n - 1)]
    if family in ("E6", "E7", "E8"):
        path = {"E6": 5, "E7": 6, "E8": 7}[family]
        return path + 1, [(i, i + 1) for i in range(path - 1)] + [(2, path)]
    if family == "affine_D":
        if n is None or n < 4:
            raise InvalidParameterError("affine_D_n needs n >= 4")
        count, edges = _dynkin_edges("D", n)
        return count + 1, edges + [(n - 3, n)]
    if family == "affine_E6":
        count, edges = _dynkin_edges("E6", None)
        return count + 1, edges + [(5, 6)]
    if family == "affine_E7":
        count, edges = _dynkin_edges("E7", None)
        return count + 1, edges + [(0, 7)]
    if family == "affine_E8":
        count, edges = _dynkin_edges("E8", None)
        return count + 1, edges + [(6, 8)]
    if family == "cycle":
        if n is None or n < 4 or n % 2:
            raise InvalidParameterError("cycle needs an even length >= 4")
        return n, [(i, (i + 1) % n) for i in range(n)]
    if family == "enriched_6_cycle":
        return 7, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6)]
    raise InvalidParameterError(
        "unknown family %r; expected one of %s" % (family, ", ".join(_DYNKIN_FAMILIES))
    )


def dynkin_graph(family: str, n: int = None, signs: str = "alternating") -> MixedSignCoxeterGraph:
    """Construct a named diagram with alternating or all-plus signs.

    Shapes: A_n is a path; D_n a path of n-1 vertices with a leaf at the
    second; E_6/E_7/E_8 a path of 5/6/7 with a leaf at the third; the affine
    variants extend these by one vertex each; cycle(2n) is the even cycle;
    the enriched 6-cycle is a 6-cycle with one pendant vertex.
    """
    count, edges = _dynkin_edges(family, n)
    if signs == "alternating":
        sign_tuple = _alternating_signs(count, graphs.normalize_edges(count, edges))
    elif signs == "plus":
        sign_tuple = (1,) * count
    else:
        raise InvalidParameterError("signs must be 'alternating' or 'plus'")
    return MixedSignCoxeterGraph(count, edges, sign_tuple)


def _affine_candidates(vertex_count):
    out = []
    if vertex_count >= 5:
        out.append(("affine_D_%d" % (vertex_count - 1), dynkin_graph("affine_D", vertex_count - 1)))
    for family, size in (("affine_E6", 7), ("affine_E7", 8), ("affine_E8", 9)):
        if vertex_count == size:
            out.append((family, dynkin_graph(family)))
    return out


def affine_alternating_dilatation(g: MixedSignCoxeterGraph, tol: float = DEFAULT_TOL) -> float:
    """Dilatation 3 + 2*sqrt(2) of any affine D/E diagram with alternating signs.

    The value is re-derived by certified computation of the spectral radius
    of the homological action for the bipartite order, and the two must
    agree; otherwise the shape or sign data is rejected.
    """
    if not g.is_alternating():
        raise NotAffineError("signs are not alternating")
    for _, candidate in _affine_candidates(g.vertex_count):
        if graphs.are_isomorphic(
            g.vertex_count, g.edges, candidate.vertex_count, candidate.edges
        ):
            break
    else:
        raise NotAffineError("graph is not an affine D or E diagram")
    rho = spectral_radius(homological_action(g, bipartite_order(g)), tol)
    if abs(rho.value - LIMIT_DILATATION) > max(1e-9, 10 * tol):
        raise InternalInconsistencyError(
            "affine diagram spectral radius %r is not 3 + 2*sqrt(2)" % rho.value
        )
    return LIMIT_DILATATION


def coxeter_char_poly(g: MixedSignCoxeterGraph, order) -> IntPolynomial:
    """Characteristic polynomial of the Coxeter transformation for an order."""
    return char_poly(coxeter_transformation(g, order))


def action_spectral_radius(g: MixedSignCoxeterGraph, order=None, tol: float = DEFAULT_TOL):
    """Certified spectral radius of the reflection-product homological action.

    With alternating signs and the bipartite order the action is a
    nonnegative matrix and the Perron-Frobenius route applies directly. For
    other orders the dominant eigenvalue, when real (possibly negative), is
    certified as the larger of the largest real roots of p(t) and p(-t); a
    floating eigenvalue scan guards against a complex eigenvalue above it.

    Note that for non-bipartite reflection orders this is a property of the
    reflection product only; the dilatation of the mapping class twisting in
    that order is computed on the twist side (see
    ``twists.mapping_class_dilatation``), where it can differ.
    """
    if order is None:
        order = bipartite_order(g)
    action = homological_action(g, order)
    if action.is_nonnegative():
        return spectral_radius(action, tol)
    poly = char_poly(action)
    candidates = []
    for flipped in (poly, IntPolynomial([c if k % 2 == 0 else -c for k, c in enumerate(poly.coefficients)])):
        try:
            candidates.append(largest_real_root(flipped, tol))
        except NoRealRootError:
            pass
    if not candidates:
        raise NoRealRootError("action has no real eigenvalue")
    root = max(candidates, key=lambda r: r.value)
    eigs = np.linalg.eigvals(action.to_float_array())
    float_radius = float(max(abs(eigs)))
    if float_radius > root.value + 1e-6 * max(1.0, root.value):
        raise InternalInconsistencyError(
            "spectral radius %r is not attained by a real eigenvalue (%r)"
            % (float_radius, root.value)
        )
    return root
