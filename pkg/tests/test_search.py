import math
import random

import pytest

from penner.coxeter import LIMIT_DILATATION, MixedSignCoxeterGraph, dynkin_graph, lambda_closed_form
from penner.errors import InvalidGenusError, InvalidParameterError, NotBipartiteError
from penner.search import (
    AdmissibilityReport,
    classify,
    connected_bipartite_graphs,
    contains_subgraph,
    exclusion_certificate,
    minimal_dilatation,
    table1,
)
from penner.twists import IntersectionPattern, bipartite_word, dilatation


class TestContainsSubgraph:
    def test_enriched_contains_e7(self):
        witness = contains_subgraph(dynkin_graph("enriched_6_cycle"), dynkin_graph("E7"))
        assert witness is not None
        host = dynkin_graph("enriched_6_cycle")
        pat = dynkin_graph("E7")
        assert len(set(witness.values())) == pat.vertex_count
        for a, b in pat.edges:
            pair = tuple(sorted((witness[a], witness[b])))
            assert pair in host.edges

    def test_identity_embedding(self):
        g = dynkin_graph("A", 5)
        assert contains_subgraph(g, g) is not None

    def test_six_cycle_has_no_four_cycle(self):
        assert contains_subgraph(dynkin_graph("cycle", 6), dynkin_graph("cycle", 4)) is None

    def test_eight_cycle_with_pendant_contains_affine_e7(self):
        edges = [(i, (i + 1) % 8) for i in range(8)] + [(0, 8)]
        g = MixedSignCoxeterGraph(9, edges, (1,) * 9)
        assert contains_subgraph(g, dynkin_graph("affine_E7")) is not None


class TestClassify:
    def test_star_k14_is_affine(self):
        report = classify(dynkin_graph("affine_D", 4))
        assert report.excluded_by == "affine_subgraph"
        assert report.obstruction == "affine_D_4"

    def test_four_cycle_excluded(self):
        report = classify(dynkin_graph("cycle", 4))
        assert report.excluded_by == "four_cycle_subgraph"

    def test_survivors(self):
        assert classify(dynkin_graph("A", 7)).surviving_type == "A_n"
        assert classify(dynkin_graph("D", 5)).surviving_type == "D_n"
        assert classify(dynkin_graph("E6")).surviving_type == "E6"
        assert classify(dynkin_graph("E7")).surviving_type == "E7"
        assert classify(dynkin_graph("E8")).surviving_type == "E8"
        assert classify(dynkin_graph("cycle", 6)).surviving_type == "even_cycle"
        assert classify(dynkin_graph("cycle", 8)).surviving_type == "even_cycle"
        assert (
            classify(dynkin_graph("enriched_6_cycle")).surviving_type
            == "enriched_6_cycle"
        )

    def test_requires_connected_bipartite(self):
        disconnected = MixedSignCoxeterGraph(3, [(0, 1)], (1, -1, 1))
        with pytest.raises(InvalidParameterError):
            classify(disconnected)
        odd = MixedSignCoxeterGraph(3, [(0, 1), (1, 2), (0, 2)], (1, 1, 1))
        with pytest.raises(NotBipartiteError):
            classify(odd)

    def test_completeness_up_to_nine_vertices(self):
        # every connected bipartite graph is either excluded or classified;
        # the report carries exactly one of the two fields
        for g in connected_bipartite_graphs(9):
            report = classify(g)
            assert (report.excluded_by is None) != (report.surviving_type is None)

    def test_library_counts_match_known_sequence(self):
        # connected bipartite graphs per vertex count, up to isomorphism
        by_size = {}
        for g in connected_bipartite_graphs(9):
            by_size[g.vertex_count] = by_size.get(g.vertex_count, 0) + 1
        assert by_size == {1: 1, 2: 1, 3: 1, 4: 3, 5: 5, 6: 17, 7: 44, 8: 182, 9: 730}

    def test_survivor_census_up_to_nine(self):
        census = {}
        for g in connected_bipartite_graphs(9):
            report = classify(g)
            if report.surviving_type:
                census[report.surviving_type] = census.get(report.surviving_type, 0) + 1
        assert census == {
            "A_n": 9,  # A_1 .. A_9
            "D_n": 6,  # D_4 .. D_9
            "E6": 1,
            "E7": 1,
            "E8": 1,
            "even_cycle": 2,  # C_6, C_8
            "enriched_6_cycle": 1,
        }


class TestPruningSoundness:
    def test_excluded_graphs_lie_above_the_silver_bound(self):
        for g in connected_bipartite_graphs(7):
            if g.vertex_count < 2:
                continue
            report = classify(g)
            if report.excluded_by is None:
                continue
            pattern, _, _ = IntersectionPattern.from_graph(g)
            value = dilatation(pattern, bipartite_word(pattern), 1e-10).value
            assert value >= LIMIT_DILATATION - 1e-9

    def test_exclusion_certificate_variants(self):
        assert exclusion_certificate(dynkin_graph("A", 6)) is None
        cert = exclusion_certificate(dynkin_graph("affine_E7"))
        assert cert.excluded_by == "affine_subgraph"


class TestMinimalDilatation:
    def test_invalid_genus(self):
        with pytest.raises(InvalidGenusError):
            minimal_dilatation(0)
        with pytest.raises(InvalidParameterError):
            minimal_dilatation(2, mode="fancy")

    def test_closed_form_mode(self):
        result = minimal_dilatation(3, "closed_form")
        assert result.witness_name == "A_6"
        assert abs(result.value - lambda_closed_form(3)) < 1e-15

    @pytest.mark.parametrize("genus", [1, 2])
    def test_certified_small(self, genus):
        result = minimal_dilatation(genus, "certified_search")
        assert result.witness_name == "A_%d" % (2 * genus)
        assert abs(result.value - lambda_closed_form(genus)) < 1e-9
        assert result.certified is not None
        names = [e.name for e in result.audit]
        assert "A_%d" % (2 * genus + 1) in names

    def test_genus_one_audit(self):
        result = minimal_dilatation(1, "certified_search")
        entries = {e.name: e for e in result.audit}
        assert set(entries) == {"A_2", "A_3", "D_4"}
        assert abs(entries["D_4"].value - (5 + math.sqrt(21)) / 2) < 1e-9
        assert abs(entries["A_3"].value - (2 + math.sqrt(3))) < 1e-9

    def test_genus_three_audit_beats_e_diagrams(self):
        result = minimal_dilatation(3, "certified_search")
        entries = {e.name: e for e in result.audit}
        assert abs(entries["E6"].value - 5.552) < 1e-3
        assert abs(entries["E7"].value - 5.704) < 1e-3
        assert entries["A_6"].value < entries["E6"].value < entries["E7"].value
        assert "cycle_6" in entries and entries["cycle_6"].lower_bound is not None

    def test_genus_five_reduction(self):
        result = minimal_dilatation(5, "certified_search")
        assert result.witness_name == "A_10"
        assert abs(result.value - lambda_closed_form(5)) < 1e-9
        notes = " ".join(e.note for e in result.audit)
        assert "cannot fill" in notes


class TestTable:
    def test_rows(self):
        rows = {r.name: r for r in table1()}
        assert abs(rows["A_6"].dilatation - 5.049) < 1e-3
        assert abs(rows["A_8"].dilatation - 5.345) < 1e-3
        assert abs(rows["E_6"].dilatation - 5.552) < 1e-3
        assert abs(rows["E_7"].dilatation - 5.704) < 1e-3
        assert abs(rows["E_8"].dilatation - 5.783) < 1e-3
        assert rows["A_6"].genus_display == "3"
        assert rows["A_8"].genus_display == "4"
        assert rows["E_6"].genus_display == "3"
        assert rows["E_7"].genus_display == "3"
        assert rows["E_8"].genus_display == "4"
        enriched = rows["enriched_6_cycle"]
        assert enriched.genus_display == "<= 4"
        assert enriched.dilatation > 5.7


class TestSubgraphMonotonicity:
    def test_nested_trees(self):
        rng = random.Random(23)
        trees = [
            g
            for g in connected_bipartite_graphs(9)
            if 2 <= g.vertex_count <= 9 and len(g.edges) == g.vertex_count - 1
        ]
        checked = 0
        for g in trees:
            if g.vertex_count < 3:
                continue
            # remove a leaf to get a nested subtree
            degrees = [g.degree(v) for v in range(g.vertex_count)]
            leaf = degrees.index(1)
            keep = [v for v in range(g.vertex_count) if v != leaf]
            relabel = {v: i for i, v in enumerate(keep)}
            sub_edges = [
                (relabel[a], relabel[b]) for a, b in g.edges if leaf not in (a, b)
            ]
            sub = MixedSignCoxeterGraph(
                g.vertex_count - 1, sub_edges, tuple(1 for _ in keep)
            )
            if not sub.is_connected():
                continue
            big_pattern, _, _ = IntersectionPattern.from_graph(g)
            sub_pattern, _, _ = IntersectionPattern.from_graph(sub)
            big = dilatation(big_pattern, bipartite_word(big_pattern), 1e-10).value
            small = dilatation(sub_pattern, bipartite_word(sub_pattern), 1e-10).value
            assert small <= big + 1e-9
            checked += 1
            if checked >= 40:
                break
        assert checked >= 20
