import itertools
import math
import random

import numpy as np
import pytest

from penner.coxeter import (
    LIMIT_DILATATION,
    MixedSignCoxeterGraph,
    action_spectral_radius,
    affine_alternating_dilatation,
    alexander_route_dilatation,
    alexander_torus_2_odd,
    bilinear_form,
    bipartite_order,
    classical_to_alternating,
    coxeter_transformation,
    dynkin_graph,
    homological_action,
    lambda_closed_form,
    reflection,
    unit_circle_roots,
)
from penner.errors import (
    InvalidParameterError,
    NoRealSolutionError,
    NotAffineError,
    NotBipartiteError,
)
from penner.exact import ExactMatrix, IntPolynomial, char_poly
from penner.search import connected_bipartite_graphs, contains_subgraph

PHI2 = (3 + math.sqrt(5)) / 2


def trees_up_to(max_vertices):
    return [
        g
        for g in connected_bipartite_graphs(max_vertices)
        if len(g.edges) == g.vertex_count - 1 and g.vertex_count >= 2
    ]


class TestGraphType:
    def test_rejects_loops_and_duplicates(self):
        with pytest.raises(InvalidParameterError):
            MixedSignCoxeterGraph(2, [(0, 0)], (1, 1))
        with pytest.raises(InvalidParameterError):
            MixedSignCoxeterGraph(2, [(0, 1), (1, 0)], (1, 1))

    def test_signs_validated(self):
        with pytest.raises(InvalidParameterError):
            MixedSignCoxeterGraph(2, [(0, 1)], (1, 0))

    def test_alternating_detection(self):
        assert dynkin_graph("A", 4).is_alternating()
        assert not dynkin_graph("A", 4, signs="plus").is_alternating()
        odd_cycle = MixedSignCoxeterGraph(3, [(0, 1), (1, 2), (0, 2)], (1, -1, 1))
        assert not odd_cycle.is_alternating()
        with pytest.raises(NotBipartiteError):
            odd_cycle.bipartition()


class TestBilinearForm:
    def test_single_plus_vertex(self):
        g = MixedSignCoxeterGraph(1, [], (1,))
        assert bilinear_form(g) == ExactMatrix([[-2]])

    def test_a2_mixed(self):
        g = dynkin_graph("A", 2)  # signs (+, -)
        assert bilinear_form(g) == ExactMatrix([[-2, 1], [1, 2]])

    def test_four_cycle_alternating(self):
        b = bilinear_form(dynkin_graph("cycle", 4))
        assert [b[i, i] for i in range(4)] == [-2, 2, -2, 2]
        assert b[0, 1] == b[1, 2] == b[2, 3] == b[0, 3] == 1
        assert b[0, 2] == b[1, 3] == 0


class TestReflections:
    def test_a2_reflection_matrices(self):
        g = dynkin_graph("A", 2)
        assert reflection(g, 0) == ExactMatrix([[-1, 1], [0, 1]])
        assert reflection(g, 1) == ExactMatrix([[1, 0], [-1, -1]])

    def test_diagonal_is_minus_one(self):
        g = dynkin_graph("E7")
        for i in range(g.vertex_count):
            assert reflection(g, i)[i, i] == -1

    def test_involution_and_form_preservation(self):
        rng = random.Random(5)
        for g in connected_bipartite_graphs(6):
            signs = tuple(rng.choice((1, -1)) for _ in range(g.vertex_count))
            signed = g.with_signs(signs)
            b = bilinear_form(signed)
            ident = ExactMatrix.identity(g.vertex_count)
            for i in range(g.vertex_count):
                s = reflection(signed, i)
                assert s * s == ident
                assert s.transpose() * b * s == b


class TestCoxeterTransformation:
    def test_a1(self):
        g = MixedSignCoxeterGraph(1, [], (1,))
        assert coxeter_transformation(g, (0,)) == ExactMatrix([[-1]])
        assert homological_action(g, (0,)) == ExactMatrix([[1]])

    def test_a2_worked_example(self):
        g = dynkin_graph("A", 2)
        # vertex 1 reflected first, then vertex 0
        assert coxeter_transformation(g, (1, 0)) == ExactMatrix([[-2, -1], [-1, -1]])
        assert homological_action(g, (1, 0)) == ExactMatrix([[2, 1], [1, 1]])

    def test_order_must_be_permutation(self):
        g = dynkin_graph("A", 3)
        with pytest.raises(InvalidParameterError):
            coxeter_transformation(g, (0, 1))
        with pytest.raises(InvalidParameterError):
            coxeter_transformation(g, (0, 1, 1))

    def test_tree_char_poly_order_independent(self):
        for g in trees_up_to(6):
            polys = {
                char_poly(coxeter_transformation(g, order))
                for order in itertools.permutations(range(g.vertex_count))
            }
            assert len(polys) == 1

    def test_tree_char_poly_order_independent_random_large(self):
        rng = random.Random(11)
        for g in trees_up_to(9):
            if g.vertex_count < 7:
                continue
            base = list(range(g.vertex_count))
            reference = char_poly(coxeter_transformation(g, tuple(base)))
            for _ in range(8):
                rng.shuffle(base)
                assert char_poly(coxeter_transformation(g, tuple(base))) == reference

    def test_sign_swap_preserves_action_char_poly(self):
        for g in [dynkin_graph("A", 5), dynkin_graph("D", 6), dynkin_graph("cycle", 6)]:
            order = bipartite_order(g)
            flipped = g.opposite_signs()
            assert char_poly(homological_action(g, order)) == char_poly(
                homological_action(flipped, bipartite_order(flipped))
            )


class TestBipartiteOrder:
    def test_a2(self):
        assert bipartite_order(dynkin_graph("A", 2)) == (1, 0)

    def test_four_cycle(self):
        assert bipartite_order(dynkin_graph("cycle", 4)) == (1, 3, 0, 2)

    def test_a4_path(self):
        assert bipartite_order(dynkin_graph("A", 4)) == (1, 3, 0, 2)

    def test_not_bipartite(self):
        odd = MixedSignCoxeterGraph(3, [(0, 1), (1, 2), (0, 2)], (1, 1, 1))
        with pytest.raises(NotBipartiteError):
            bipartite_order(odd)


class TestEigenvalueRelations:
    def test_classical_to_alternating_values(self):
        assert classical_to_alternating(1.0) == 1.0
        assert abs(classical_to_alternating(-1.0) - LIMIT_DILATATION) < 1e-15
        assert abs(classical_to_alternating(0.5) - PHI2) < 1e-15
        with pytest.raises(NoRealSolutionError):
            classical_to_alternating(1.5)

    def test_classical_relation_on_trees(self):
        # all-plus trees: adjacency eigenvalues squared match 2 + mu + 1/mu
        for g in trees_up_to(7):
            plus = g.all_plus()
            c = coxeter_transformation(plus, bipartite_order(plus))
            mus = np.linalg.eigvals(c.to_float_array())
            lhs = sorted(np.linalg.eigvalsh(plus.adjacency_matrix().to_float_array()) ** 2)
            rhs = sorted((2 + mus + 1 / mus).real)
            assert np.allclose(lhs, rhs, atol=1e-9)

    def test_alternating_relation_on_trees(self):
        # alternating trees: adjacency eigenvalues squared match -2 - lam - 1/lam
        for g in trees_up_to(7):
            c = coxeter_transformation(g, bipartite_order(g))
            lams = np.linalg.eigvals(c.to_float_array())
            lhs = sorted(np.linalg.eigvalsh(g.adjacency_matrix().to_float_array()) ** 2)
            rhs = sorted((-2 - lams - 1 / lams).real)
            assert np.allclose(lhs, rhs, atol=1e-9)


class TestAlexanderPolynomial:
    def test_small_cases_by_hand(self):
        assert alexander_torus_2_odd(1) == IntPolynomial([1, -1, 1])
        assert alexander_torus_2_odd(2) == IntPolynomial([1, -1, 1, -1, 1])

    def test_normalization_at_one(self):
        for g in range(1, 11):
            delta = alexander_torus_2_odd(g)
            assert delta(1) == 1
            assert delta.degree == 2 * g

    def test_all_roots_on_unit_circle(self):
        for g in (1, 2, 5):
            delta = alexander_torus_2_odd(g)
            roots = unit_circle_roots(delta, 4 * g + 2)
            assert len(roots) == delta.degree

    def test_invalid_genus(self):
        with pytest.raises(InvalidParameterError):
            alexander_torus_2_odd(0)


class TestClosedForm:
    def test_genus_one_is_golden_square(self):
        assert abs(lambda_closed_form(1) - PHI2) < 1e-12

    def test_table_values(self):
        assert abs(lambda_closed_form(3) - 5.049) < 1e-3
        assert abs(lambda_closed_form(4) - 5.345) < 1e-3

    def test_three_route_agreement_small(self):
        from penner.twists import mapping_class_dilatation

        for g in range(1, 5):
            closed = lambda_closed_form(g)
            alexander = alexander_route_dilatation(g)
            _, spectral = mapping_class_dilatation(dynkin_graph("A", 2 * g))
            assert abs(closed - alexander) < 1e-9
            assert abs(closed - spectral.value) < 1e-9


class TestDynkinShapes:
    def test_path(self):
        g = dynkin_graph("A", 2)
        assert g.vertex_count == 2 and g.edges == frozenset({(0, 1)})

    def test_affine_d4_is_star(self):
        g = dynkin_graph("affine_D", 4)
        degrees = sorted(g.degree(v) for v in range(g.vertex_count))
        assert degrees == [1, 1, 1, 1, 4]

    def test_enriched_contains_e7(self):
        assert contains_subgraph(
            dynkin_graph("enriched_6_cycle"), dynkin_graph("E7")
        ) is not None

    def test_sizes(self):
        assert dynkin_graph("E6").vertex_count == 6
        assert dynkin_graph("E7").vertex_count == 7
        assert dynkin_graph("E8").vertex_count == 8
        assert dynkin_graph("affine_E6").vertex_count == 7
        assert dynkin_graph("affine_E7").vertex_count == 8
        assert dynkin_graph("affine_E8").vertex_count == 9

    def test_invalid_parameters(self):
        with pytest.raises(InvalidParameterError):
            dynkin_graph("A", 0)
        with pytest.raises(InvalidParameterError):
            dynkin_graph("D", 3)
        with pytest.raises(InvalidParameterError):
            dynkin_graph("cycle", 5)
        with pytest.raises(InvalidParameterError):
            dynkin_graph("Z")

    def test_affine_adjacency_radius_is_two(self):
        for family, n in [("affine_D", 5), ("affine_E6", None), ("affine_E8", None)]:
            g = dynkin_graph(family, n)
            radius = max(abs(np.linalg.eigvalsh(g.adjacency_matrix().to_float_array())))
            assert abs(radius - 2.0) < 1e-9


class TestAffineDilatation:
    @pytest.mark.parametrize(
        "family,n",
        [("affine_D", 4), ("affine_D", 5), ("affine_D", 8), ("affine_E6", None),
         ("affine_E7", None), ("affine_E8", None)],
    )
    def test_value(self, family, n):
        value = affine_alternating_dilatation(dynkin_graph(family, n))
        assert abs(value - LIMIT_DILATATION) < 1e-12

    def test_rejects_non_affine(self):
        with pytest.raises(NotAffineError):
            affine_alternating_dilatation(dynkin_graph("E6"))
        with pytest.raises(NotAffineError):
            affine_alternating_dilatation(dynkin_graph("A", 5))

    def test_rejects_wrong_signs(self):
        with pytest.raises(NotAffineError):
            affine_alternating_dilatation(dynkin_graph("affine_D", 4, signs="plus"))


class TestActionSpectralRadius:
    def test_four_cycle_bipartite_exact(self):
        g = dynkin_graph("cycle", 4)
        root = action_spectral_radius(g, bipartite_order(g))
        assert abs(root.value - LIMIT_DILATATION) < 1e-12
        # the silver polynomial divides the action's characteristic polynomial
        action = homological_action(g, bipartite_order(g))
        quotient = char_poly(action).exact_div(IntPolynomial([1, -6, 1]))
        assert quotient == IntPolynomial([1, -2, 1])

    def test_single_vertex(self):
        g = MixedSignCoxeterGraph(1, [], (1,))
        assert action_spectral_radius(g, (0,)).value == 1.0
