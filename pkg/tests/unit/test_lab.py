"""
Unit tests for the property lab.
"""

import pytest

from src.core import finset
from src.core.egraph import is_e_hypergraph
from src.core.eqhyp import is_pb_mono, pushout_eqhyp
from src.core.errors import InvalidMorphism, SchemaError
from src.core.finset import FinFn, FinSet
from src.lab import campaigns
from src.lab import generators as gen
from src.lab.campaigns import (CampaignReport, TrialOutcome, check_counterexample, check_e_closure,
                               check_kernel_pair_lemmas, check_mono_characterizations, check_pb_stability,
                               check_regular_tg, check_star_pullbacks, check_universal_property, check_vk,
                               set_partitions, small_hypergraphs, small_term_graphs)
from src.lab.categories import get_category
from src.lab.fixtures import closure_gap_merge, closure_gap_source, counterexample_cube
from src.lab.squares import Square, certify_pullback, certify_pushout, check_vk_cube
from src.utils.serialization import FinFnDoc, finfn_from_doc


class TestSquares:
    """Test square certification."""

    def test_canonical_pushout_certifies(self):
        cat = get_category('finset')
        f = FinFn(FinSet.range(1), FinSet.range(2), (0,))
        g = FinFn(FinSet.range(1), FinSet.range(2), (1,))
        po = finset.pushout(f, g)
        assert certify_pushout(Square(f, g, po.leg1, po.leg2, cat))

    def test_coproduct_is_not_a_pushout_of_a_shared_point(self):
        cat = get_category('finset')
        point = FinSet.range(1)
        f = FinFn(point, point, (0,))
        leg1 = FinFn(point, FinSet.range(2), (0,))
        leg2 = FinFn(point, FinSet.range(2), (0,))
        square = Square(f, f, leg1, leg2, cat)
        assert not certify_pushout(square)
        assert certify_pullback(square)

    def test_non_commuting_square(self):
        cat = get_category('finset')
        f = FinFn(FinSet.range(1), FinSet.range(2), (0,))
        g = FinFn(FinSet.range(1), FinSet.range(2), (1,))
        ident = finset.identity(FinSet.range(2))
        with pytest.raises(InvalidMorphism):
            certify_pushout(Square(f, g, ident, ident, cat))

    def test_unknown_category_and_class(self):
        with pytest.raises(SchemaError):
            get_category('sets')
        f = finset.identity(FinSet.range(1))
        with pytest.raises(SchemaError):
            get_category('finset').in_class(f, 'epi')


class TestCounterexample:
    """Test the regular-mono counterexample cube."""

    def test_face_verdicts(self):
        verdicts = check_counterexample()
        assert verdicts['bottom_pushout']
        assert not verdicts['top_pushout']
        assert all(verdicts[f'{face}_pullback'] for face in ('back', 'left', 'front', 'right'))
        assert not verdicts['bottom_mono_in_pb']

    def test_vk_fails_for_regular_monos(self):
        verdict = check_vk_cube(counterexample_cube(), 'regular', 'regular')
        assert verdict.applicable
        assert not verdict.holds

    def test_not_applicable_for_pb(self):
        assert not check_vk_cube(counterexample_cube(), 'pb', 'regular').applicable


class TestClosureGaps:
    """Test gluings whose pushout leaves the e-hypergraphs."""

    @pytest.mark.parametrize('gap', [closure_gap_source, closure_gap_merge])
    def test_gap(self, gap):
        m, h = gap()
        assert is_pb_mono(m)
        assert is_e_hypergraph(m.cod) and is_e_hypergraph(h.cod)
        assert not is_e_hypergraph(pushout_eqhyp(m, h).apex)


class TestGenerators:
    """Test the seeded generators."""

    def test_trial_rng_is_reproducible(self):
        a = gen.trial_rng('vk', 3, 7).random()
        b = gen.trial_rng('vk', 3, 7).random()
        assert a == b
        assert gen.trial_rng('vk', 3, 8).random() != a

    def test_subobjects(self):
        for i in range(20):
            rng = gen.trial_rng('test', 0, i)
            G = gen.random_e_hypergraph(rng, 3)
            assert is_e_hypergraph(G)
            assert is_pb_mono(gen.pb_subobject(rng, G))
            assert is_pb_mono(gen.source_closed_subobject(rng, G))

    def test_set_partitions(self):
        assert len(list(set_partitions([0, 1, 2]))) == 5
        assert len(list(set_partitions([0, 1, 2], max_blocks=2))) == 4

    def test_small_term_graphs_are_term_graphs(self):
        from src.core.termgraph import is_term_graph
        graphs = list(small_term_graphs(2, 2))
        assert all(is_term_graph(G) for G in graphs)
        assert any(len(s) == 2 for G in graphs for s in G.base.src)

    def test_small_hypergraphs_cover_word_shapes(self):
        graphs = list(small_hypergraphs(1, 1, max_word=2))
        # one node: 3 words, 9 edge shapes, plus the empty graphs
        assert len(graphs) == 12
        shapes = {(G.src[0], G.tgt[0]) for G in graphs if len(G.edges)}
        assert ((0, 0), ()) in shapes
        assert ((), (0, 0)) in shapes


class TestCampaigns:
    """Test the campaigns on small bounds."""

    def test_report_bookkeeping(self):
        report = CampaignReport('x', 0, 3, {})
        report.record(TrialOutcome(0, 'pass', tags=('a',)))
        report.record(TrialOutcome(1, 'fail', {'trial': 1}, ('a',)))
        report.record(TrialOutcome(2, 'skip'))
        assert (report.passed, report.failed, report.skipped) == (1, 1, 1)
        assert not report.ok
        assert report.to_doc().details == {'a': 2}

    def test_pb_stability(self):
        report = check_pb_stability(trials=30, seed=1, max_size=2, workers=1)
        assert report.ok
        assert report.passed + report.skipped == 30

    def test_vk(self):
        report = check_vk(trials=20, seed=2, max_size=2, workers=1)
        assert report.ok

    def test_kernel_pairs(self):
        report = check_kernel_pair_lemmas(trials=30, seed=3, max_size=3, workers=1)
        assert report.ok
        assert report.details.get('kerset', 0) == 30

    def test_e_closure(self):
        report = check_e_closure(trials=30, seed=4, max_size=3, workers=1)
        assert report.ok

    def test_reports_are_reproducible(self):
        first = check_vk(trials=6, seed=5, max_size=2, workers=1).to_doc()
        second = check_vk(trials=6, seed=5, max_size=2, workers=2).to_doc()
        assert first == second

    def test_universal_property(self):
        report = check_universal_property(max_size=1, max_target=2)
        assert report.ok and report.trials > 0

    def test_star_pullbacks(self):
        assert check_star_pullbacks(max_size=2, max_len=2).ok

    def test_mono_characterizations(self):
        report = check_mono_characterizations(max_edges=1, max_nodes=2, max_classes=2, max_word=1)
        assert report.ok and report.trials > 0

    def test_mono_characterizations_with_long_words(self):
        report = check_mono_characterizations(max_edges=1, max_nodes=1, max_classes=1, max_word=2)
        assert report.ok and report.trials > 0
        assert report.bounds == {'max_edges': 1, 'max_nodes': 1, 'max_classes': 1, 'max_word': 2}

    def test_regular_tg(self):
        report = check_regular_tg(max_edges=1, max_nodes=2)
        assert report.ok and report.trials > 0

    def test_witnesses_encode_functions_as_documents(self):
        witness = next(w for _, w in campaigns._universal_instances(1, 1) if w['sizes'] == [1, 1, 1])
        f = finfn_from_doc(FinFnDoc.model_validate(witness['f']))
        assert f == FinFn(FinSet.range(1), FinSet.range(1), (0,))
        assert witness['f'] == {'dom': [0], 'cod': [0], 'map': [[0, 0]]}
