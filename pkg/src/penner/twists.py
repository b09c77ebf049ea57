"""Dehn-twist products over an intersection pattern, as exact matrix algebra.

An intersection pattern records two transverse multicurves through their
matrix X of geometric intersection numbers. Positive twists along the
first family and negative twists along the second act on curve space as
the unipotent matrices I + R, with R a single row of the block
intersection matrix; the dilatation of a twist product is the
Perron-Frobenius eigenvalue of the corresponding matrix product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import graphs
from .coxeter import MixedSignCoxeterGraph, bipartite_order as _graph_bipartite_order
from .errors import (
    InternalInconsistencyError,
    InvalidParameterError,
    InvalidWordError,
    NotBipartiteError,
    TooLargeError,
)
from .exact import (
    DEFAULT_TOL,
    ExactMatrix,
    IntPolynomial,
    RootApproximation,
    largest_real_root,
    spectral_radius,
)

ALPHA = "alpha"
BETA = "beta"


@dataclass(frozen=True, order=True)
class TwistLetter:
    """One twist: side 'alpha' or 'beta', 0-based component index, sign +1/-1.

    Ordering is alphabetical-then-index, so alpha letters sort before beta
    letters; this is the tie-breaking order used by the word search.
    """

    side: str
    index: int
    sign: int

    def __post_init__(self):
        if self.side not in (ALPHA, BETA):
            raise InvalidParameterError("side must be 'alpha' or 'beta'")
        if self.sign not in (1, -1):
            raise InvalidParameterError("sign must be +1 or -1")

    def __str__(self):
        return "%s%d%s" % (
            "a" if self.side == ALPHA else "b",
            self.index + 1,
            "+" if self.sign > 0 else "-",
        )

    @classmethod
    def from_string(cls, token):
        token = token.strip()
        if len(token) < 3 or token[0] not in "ab" or token[-1] not in "+-":
            raise InvalidParameterError("bad twist letter %r (expected e.g. 'a1+')" % token)
        try:
            index = int(token[1:-1]) - 1
        except ValueError:
            raise InvalidParameterError("bad twist letter %r" % token) from None
        if index < 0:
            raise InvalidParameterError("twist letter indices are 1-based: %r" % token)
        side = ALPHA if token[0] == "a" else BETA
        return cls(side, index, 1 if token[-1] == "+" else -1)


def alpha_twist(index):
    return TwistLetter(ALPHA, index, 1)


def beta_twist(index):
    return TwistLetter(BETA, index, -1)


class TwistWord:
    """Ordered sequence of twist letters; the first letter is applied first."""

    __slots__ = ("_letters",)

    def __init__(self, letters):
        self._letters = tuple(letters)
        if not all(isinstance(l, TwistLetter) for l in self._letters):
            raise InvalidParameterError("a twist word is built from TwistLetter values")

    @property
    def letters(self):
        return self._letters

    @classmethod
    def from_string(cls, text):
        return cls(TwistLetter.from_string(tok) for tok in text.split())

    def __iter__(self):
        return iter(self._letters)

    def __len__(self):
        return len(self._letters)

    def __getitem__(self, k):
        return self._letters[k]

    def __eq__(self, other):
        return isinstance(other, TwistWord) and self._letters == other._letters

    def __hash__(self):
        return hash(self._letters)

    def __str__(self):
        return " ".join(str(l) for l in self._letters)

    def __repr__(self):
        return "TwistWord.from_string(%r)" % str(self)

    def rotated(self, k):
        n = len(self._letters)
        k %= n
        return TwistWord(self._letters[k:] + self._letters[:k])

    def appended(self, letter):
        return TwistWord(self._letters + (letter,))

    def sort_key(self):
        return tuple((l.side, l.index) for l in self._letters)


class IntersectionPattern:
    """Two multicurves described by an n x m matrix of intersection counts.

    Rows are the alpha components (twisted positively), columns the beta
    components (twisted negatively). Minimal position, distinctness of the
    components and the filling property are assumptions about the input
    curves; the connectivity of the intersection graph is the part of
    "filling candidate" that is checkable here.
    """

    __slots__ = ("_x",)

    def __init__(self, intersections):
        x = tuple(tuple(v for v in row) for row in intersections)
        if not x or not x[0]:
            raise InvalidParameterError("pattern needs at least one row and column")
        if any(len(row) != len(x[0]) for row in x):
            raise InvalidParameterError("intersection matrix must be rectangular")
        for row in x:
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise InvalidParameterError(
                        "intersection counts must be nonnegative integers"
                    )
        self._x = x

    @property
    def intersections(self):
        return self._x

    @property
    def n(self):
        return len(self._x)

    @property
    def m(self):
        return len(self._x[0])

    @property
    def size(self):
        return self.n + self.m

    def __eq__(self, other):
        return isinstance(other, IntersectionPattern) and self._x == other._x

    def __hash__(self):
        return hash(self._x)

    def __repr__(self):
        return "IntersectionPattern(%r)" % ([list(r) for r in self._x],)

    def alpha_degree(self, i):
        return sum(self._x[i])

    def beta_degree(self, j):
        return sum(row[j] for row in self._x)

    def graph_edges(self):
        """Edges of the bipartite intersection graph on n + m vertices
        (alpha components first, then beta components)."""
        return graphs.normalize_edges(
            self.size,
            [
                (i, self.n + j)
                for i in range(self.n)
                for j in range(self.m)
                if self._x[i][j] > 0
            ],
        )

    def is_connected(self):
        return graphs.is_connected(self.size, self.graph_edges())

    def graph(self, signs="alternating") -> MixedSignCoxeterGraph:
        """The intersection graph as a mixed-sign Coxeter graph; alternating
        signs put +1 on the alpha class and -1 on the beta class."""
        if signs == "alternating":
            sign_tuple = (1,) * self.n + (-1,) * self.m
        elif signs == "plus":
            sign_tuple = (1,) * self.size
        else:
            raise InvalidParameterError("signs must be 'alternating' or 'plus'")
        return MixedSignCoxeterGraph(self.size, self.graph_edges(), sign_tuple)

    @classmethod
    def from_graph(cls, graph: MixedSignCoxeterGraph):
        """Read a connected bipartite graph as a single-intersection pattern.

        The bipartition class containing vertex 0 becomes the alpha family.
        Returns (pattern, alpha_vertices, beta_vertices) with the vertex
        lists giving the correspondence back to graph labels.
        """
        parts = graphs.bipartition(graph.vertex_count, graph.edges)
        if parts is None:
            raise NotBipartiteError("intersection patterns are bipartite")
        alpha, beta = parts
        if not alpha or not beta:
            raise InvalidParameterError("both multicurves need at least one component")
        edge_set = graph.edges
        x = [
            [1 if ((a, b) if a < b else (b, a)) in edge_set else 0 for b in beta]
            for a in alpha
        ]
        return cls(x), tuple(alpha), tuple(beta)


@dataclass(frozen=True)
class WordValidation:
    """Per-component twist counts and the reasons a word is invalid, if any."""

    valid: bool
    alpha_counts: tuple
    beta_counts: tuple
    untwisted: tuple
    sign_violations: tuple

    def reason(self):
        if self.valid:
            return "valid"
        parts = []
        if self.untwisted:
            parts.append("untwisted component(s): %s" % ", ".join(self.untwisted))
        if self.sign_violations:
            parts.append(
                "sign discipline broken at position(s): %s"
                % ", ".join(str(k) for k in self.sign_violations)
            )
        return "; ".join(parts)


def validate_word(pattern: IntersectionPattern, word: TwistWord) -> WordValidation:
    """Check that every component is twisted at least once, with positive
    twists on alpha and negative twists on beta."""
    alpha_counts = [0] * pattern.n
    beta_counts = [0] * pattern.m
    violations = []
    for pos, letter in enumerate(word):
        counts = alpha_counts if letter.side == ALPHA else beta_counts
        if letter.index >= len(counts):
            raise InvalidParameterError(
                "letter %s refers to a component outside the pattern" % letter
            )
        counts[letter.index] += 1
        expected = 1 if letter.side == ALPHA else -1
        if letter.sign != expected:
            violations.append(pos)
    untwisted = tuple(
        ["a%d" % (i + 1) for i, c in enumerate(alpha_counts) if c == 0]
        + ["b%d" % (j + 1) for j, c in enumerate(beta_counts) if c == 0]
    )
    return WordValidation(
        valid=not untwisted and not violations,
        alpha_counts=tuple(alpha_counts),
        beta_counts=tuple(beta_counts),
        untwisted=untwisted,
        sign_violations=tuple(violations),
    )


def bipartite_word(pattern: IntersectionPattern, beta_first: bool = False) -> TwistWord:
    """The canonical word twisting every component exactly once: all alpha
    twists in ascending order, then all beta twists (or the reverse grouping)."""
    alphas = [alpha_twist(i) for i in range(pattern.n)]
    betas = [beta_twist(j) for j in range(pattern.m)]
    return TwistWord(betas + alphas if beta_first else alphas + betas)


def word_from_order(alpha_vertices, beta_vertices, order) -> TwistWord:
    """Translate a vertex order on an intersection graph into the twist word
    that twists the corresponding components in that order.

    ``alpha_vertices``/``beta_vertices`` give the graph vertex of each
    component, as returned by ``IntersectionPattern.from_graph``.
    """
    position = {v: (ALPHA, i) for i, v in enumerate(alpha_vertices)}
    position.update({v: (BETA, j) for j, v in enumerate(beta_vertices)})
    letters = []
    for v in order:
        if v not in position:
            raise InvalidParameterError("vertex %r is not on the graph" % (v,))
        side, index = position[v]
        letters.append(alpha_twist(index) if side == ALPHA else beta_twist(index))
    return TwistWord(letters)


def mapping_class_dilatation(graph, order=None, tol: float = DEFAULT_TOL):
    """Certified dilatation of the twist mapping class read off a bipartite
    intersection graph, twisting components in the given vertex order.

    This is the quantity the spectral theory of alternating-sign graphs
    computes: the homological action of the mapping class is the twist
    product itself, which for the bipartite order equals minus the
    reflection-product Coxeter transformation. For other orders the twist
    product is still nonnegative, unlike the raw reflection product, and its
    Perron-Frobenius eigenvalue is the dilatation. Returns (word, root).
    """
    if order is None:
        order = _graph_bipartite_order(graph)
    pattern, alphas, betas = IntersectionPattern.from_graph(graph)
    word = word_from_order(alphas, betas, order)
    return word, dilatation(pattern, word, tol)


def geometric_intersection_matrix(pattern: IntersectionPattern) -> ExactMatrix:
    """Block matrix [[0, X], [X^T, 0]] in the basis a_1..a_n, b_1..b_m."""
    n, m = pattern.n, pattern.m
    size = n + m
    rows = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(m):
            rows[i][n + j] = pattern.intersections[i][j]
            rows[n + j][i] = pattern.intersections[i][j]
    return ExactMatrix(rows)


def twist_matrix(pattern: IntersectionPattern, side: str, index: int) -> ExactMatrix:
    """I + R, where R keeps only the row of the intersection matrix that
    belongs to the twisted component."""
    limit = pattern.n if side == ALPHA else pattern.m
    if not 0 <= index < limit:
        raise InvalidParameterError("component index %d out of range" % index)
    row = index if side == ALPHA else pattern.n + index
    geom = geometric_intersection_matrix(pattern)
    size = pattern.size
    rows = [
        [int(i == j) + (geom[i, j] if i == row else 0) for j in range(size)]
        for i in range(size)
    ]
    return ExactMatrix(rows)


def penner_product(pattern: IntersectionPattern, word: TwistWord) -> ExactMatrix:
    """Product of the twist matrices of a valid word.

    The first letter is applied first, hence stands rightmost in the matrix
    product. The result is a nonnegative unipotent-product matrix.
    """
    report = validate_word(pattern, word)
    if not report.valid:
        raise InvalidWordError("invalid twist word: %s" % report.reason(), report)
    result = ExactMatrix.identity(pattern.size)
    for letter in word:
        result = twist_matrix(pattern, letter.side, letter.index) * result
    return result


def dilatation(pattern: IntersectionPattern, word: TwistWord, tol: float = DEFAULT_TOL) -> RootApproximation:
    """Certified Perron-Frobenius eigenvalue of the twist product."""
    return spectral_radius(penner_product(pattern, word), tol)


@dataclass(frozen=True)
class DoubleIntersectionCertificate:
    """Witness that two components cross x >= 2 times, with the certified
    lower bound for every dilatation over this pattern: the larger root of
    t^2 - (2 + x^2) t + 1."""

    alpha_index: int
    beta_index: int
    count: int
    polynomial: IntPolynomial
    bound: RootApproximation


def double_intersection_certificate(
    pattern: IntersectionPattern, tol: float = DEFAULT_TOL
) -> Optional[DoubleIntersectionCertificate]:
    """Certificate from the largest multiple intersection, or None if all
    intersection counts are 0 or 1."""
    best = None
    for i, row in enumerate(pattern.intersections):
        for j, x in enumerate(row):
            if x >= 2 and (best is None or x > best[0]):
                best = (x, i, j)
    if best is None:
        return None
    x, i, j = best
    poly = IntPolynomial([1, -(2 + x * x), 1])
    return DoubleIntersectionCertificate(i, j, x, poly, largest_real_root(poly, tol))


def _single_twist_letters(pattern):
    return [alpha_twist(i) for i in range(pattern.n)] + [
        beta_twist(j) for j in range(pattern.m)
    ]


def _float_spectral_radius(matrix):
    return float(max(abs(np.linalg.eigvals(matrix.to_float_array()))))


def minimize_over_words(
    pattern: IntersectionPattern,
    max_extra_twists: int = 0,
    max_components: int = 12,
    tol: float = DEFAULT_TOL,
):
    """Minimal dilatation over all words twisting each component exactly once.

    Orderings are enumerated up to cyclic rotation (which preserves the
    characteristic polynomial) by fixing the least letter first. Candidates
    are scanned with floating eigenvalues; the winner, with ties broken by
    lexicographically least word, is then certified exactly. Returns
    (word, RootApproximation).

    With max_extra_twists > 0, the minimizer is additionally extended by
    every suffix of up to that many further letters and each extension is
    checked not to decrease the dilatation.
    """
    if pattern.size > max_components:
        raise TooLargeError(
            "pattern has %d components, cap is %d" % (pattern.size, max_components)
        )
    letters = _single_twist_letters(pattern)
    first, rest = letters[0], letters[1:]

    def rotation_classes():
        for perm in itertools.permutations(rest):
            yield TwistWord((first,) + perm)

    best_rho = min(
        _float_spectral_radius(penner_product(pattern, w)) for w in rotation_classes()
    )
    # Words whose float radius ties the minimum share one exact value in all
    # cases arising here (equal characteristic polynomials); break the tie by
    # the lexicographically least word so the result is deterministic.
    word = min(
        (
            w
            for w in rotation_classes()
            if _float_spectral_radius(penner_product(pattern, w)) <= best_rho + 1e-9
        ),
        key=TwistWord.sort_key,
    )
    certified = dilatation(pattern, word, tol)
    if max_extra_twists > 0:
        base = best_rho
        for k in range(1, max_extra_twists + 1):
            for suffix in itertools.product(letters, repeat=k):
                extended = TwistWord(word.letters + suffix)
                rho = _float_spectral_radius(penner_product(pattern, extended))
                if rho < base - 1e-9:
                    raise InternalInconsistencyError(
                        "extra twists decreased the dilatation: %s" % extended
                    )
    return word, certified
