"""
Unit tests for rules, matching, rewriting, saturation and extraction.
"""

import math

import pytest

from src.core.dpo import (Match, Rule, apply_rule, collapse_links, extract, extract_with_cost, find_matches,
                          pushout_complement, saturate)
from src.core.egraph import EGraph, is_egg, term_to_egg
from src.core.eqhyp import (LabelledEqHypergraph, eq_morphism, free_eq, identity_eq, is_class_injective,
                            is_iso_eq, is_mono_eq, is_pb_mono, subobject)
from src.core.errors import (CarrierMismatch, CyclicGraph, DanglingCondition, ExtractionError,
                             IdentificationCondition, InvalidMorphism, LabelError, SchemaError,
                             SignatureMismatch)
from src.core.hypergraph import Hypergraph
from src.core.termgraph import Signature, term
from src.lab.fixtures import DEMO_TERM, aa_middle, aa_shared, demo_rules, div_self_rule
from src.utils.config import Config, set_config
from src.utils.sexpr import parse_rules, parse_term


def brute_force_cost(G, c, depth=6):
    """Least size of a term derivable from class c within the given depth."""
    if depth == 0:
        return math.inf
    best = math.inf
    for e in G.edges_by_class()[c]:
        children = [G.eq.q(v) for v in G.hyp.source(e)]
        best = min(best, 1 + sum(brute_force_cost(G, ch, depth - 1) for ch in children))
    return best


def demo_egraph(sig):
    return term_to_egg(parse_term(DEMO_TERM, sig), sig)


class TestRules:
    """Test rule compilation."""

    def test_div_self_shape(self):
        rule = div_self_rule()
        assert rule.lhs.eq.partition() == [[0, 1], [2]]
        assert rule.rhs.eq.partition() == [[0, 1], [2, 3]]
        assert rule.lhs_root == 2
        assert rule.variables == (('x', 0),)
        assert len(rule.nacs) == 1 and rule.nacs[0].target == rule.rhs

    def test_nested_lhs_links_slot_to_subterm(self, sig):
        assoc_div = demo_rules(sig)[0]
        assert assoc_div.links == ((0, 3),)
        assert div_self_rule().links == ()

    def test_bare_variable_rhs_merges_classes(self, sig):
        mul_one = parse_rules("(rule mul-one (* x 1) x)", sig)[0]
        assert is_mono_eq(mul_one.r)
        assert not is_class_injective(mul_one.r)

    def test_variable_lhs(self, sig):
        with pytest.raises(LabelError):
            Rule.from_patterns('bad', term('x'), term('1'), sig)

    def test_unbound_variable(self, sig):
        with pytest.raises(LabelError):
            Rule.from_patterns('bad', term('/', term('x'), term('x')), term('y'), sig)

    def test_explicit_nac(self, sig):
        rule = parse_rules("(rule div-self (/ x x) 1 :nac (* x x))", sig)[0]
        assert len(rule.nacs) == 1
        assert rule.nacs[0].target != rule.rhs


class TestMatching:
    """Test match enumeration per match class."""

    def test_middle_aa_has_one_pb_match(self):
        matches = find_matches(div_self_rule(), aa_middle(), 'pb')
        assert len(matches) == 1
        assert matches[0].morphism.h_V.images == (1, 2, 0)
        assert all(m.class_tag == 'pb' and m.rule == 'div-self' for m in matches)

    @pytest.mark.parametrize('match_class,expected', [('pb', 0), ('mono', 0), ('classinj', 1), ('any', 1)])
    def test_shared_aa(self, match_class, expected):
        assert len(find_matches(div_self_rule(), aa_shared(), match_class)) == expected

    def test_nested_lhs_matches_a_tree_under_pb(self, sig):
        G = term_to_egg(parse_term('(/ (* a b) 2)', sig), sig)
        assoc_div = demo_rules(sig)[0]
        matches = find_matches(assoc_div, G, 'pb')
        assert len(matches) == 1
        m = matches[0].morphism
        assert m.h_V.images == (1, 2, 3, 1, 4, 0)
        assert not is_mono_eq(m)
        glued = collapse_links(assoc_div, m)
        assert len(glued.dom.nodes) == 5
        assert is_pb_mono(glued)

    @pytest.mark.parametrize('match_class,expected', [('pb', 0), ('mono', 1), ('any', 1)])
    def test_repeated_leaf_is_not_a_pb_match(self, sig, match_class, expected):
        """Both 2 leaves of the demo term share a class, so y and z collide on classes."""
        assoc_div = demo_rules(sig)[0]
        assert len(find_matches(assoc_div, demo_egraph(sig), match_class)) == expected

    def test_default_match_class_from_config(self):
        set_config(Config(match_class='any'))
        assert len(find_matches(div_self_rule(), aa_shared())) == 1

    def test_nac_blocks_repeated_application(self):
        G = aa_middle()
        rule = div_self_rule()
        first = find_matches(rule, G, 'pb')[0]
        H = apply_rule(rule, first, G).result
        assert find_matches(rule, H, 'pb') == []

    def test_signature_mismatch(self):
        other = Signature.of({'a': 0, '1': 0, '/': 2})
        rule = div_self_rule(other)
        with pytest.raises(SignatureMismatch):
            find_matches(rule, aa_middle(), 'pb')


class TestApplyRule:
    """Test single rewrite steps."""

    def test_pb_match_needs_no_repair(self):
        G = aa_middle()
        rule = div_self_rule()
        outcome = apply_rule(rule, find_matches(rule, G, 'pb')[0], G)
        H = outcome.result
        assert not outcome.repaired
        assert is_egg(H.base)
        assert len(H.eq.nodes) == 4 and len(H.eq.edges) == 4
        assert H.labels[3] == '1'
        assert H.eq.partition() == [[0, 3], [1, 2]]
        assert outcome.tracking.h_V.images == (0, 1, 2)
        assert H.root == 0

    def test_shared_aa_with_classinj_match(self):
        G = aa_shared()
        rule = div_self_rule()
        outcome = apply_rule(rule, find_matches(rule, G, 'classinj')[0], G)
        assert len(outcome.result.eq.classes) == 2
        assert outcome.result.eq.q(0) == outcome.result.eq.q(outcome.comatch.h_V(3))

    def test_merging_classes_triggers_repair(self, sig):
        """x*1 → x merges a product with a; two quotients then share their sources."""
        G = term_to_egg(parse_term('(* (/ (* a 1) 2) (/ a 2))', sig), sig)
        mul_one = parse_rules("(rule mul-one (* x 1) x)", sig)[0]
        matches = find_matches(mul_one, G, 'any')
        assert len(matches) == 1
        outcome = apply_rule(mul_one, matches[0], G)
        H = outcome.result
        assert outcome.repaired
        assert is_egg(H.base)
        assert H.eq.q(2) == H.eq.q(3)
        assert H.eq.q(1) == H.eq.q(6)

    def test_debug_checks_complete_the_square(self):
        set_config(Config(debug_checks=True))
        G = aa_middle()
        rule = div_self_rule()
        outcome = apply_rule(rule, find_matches(rule, G, 'pb')[0], G)
        assert len(outcome.result.eq.edges) == 4

    def test_foreign_match(self):
        rule = div_self_rule()
        m = find_matches(rule, aa_middle(), 'pb')[0]
        with pytest.raises(CarrierMismatch):
            apply_rule(rule, Match(m.morphism), aa_shared())


class TestPushoutComplement:
    """Test the gluing conditions."""

    def test_identity_left_leg(self):
        G = aa_middle()
        rule = div_self_rule()
        m = find_matches(rule, G, 'pb')[0].morphism
        pc = pushout_complement(identity_eq(rule.lhs.eq), m)
        assert is_iso_eq(pc.inclusion)
        assert pc.k.h_V.images == m.h_V.images

    def test_dangling(self):
        L = free_eq(Hypergraph.build([0], {}))
        G = free_eq(Hypergraph.build([0], {0: ((), (0,))}))
        l = subobject(L, [])
        m = eq_morphism(L, G, {}, {0: 0})
        with pytest.raises(DanglingCondition):
            pushout_complement(l, m)

    def test_identification(self):
        L = free_eq(Hypergraph.build([0, 1], {}))
        G = free_eq(Hypergraph.build([0], {}))
        l = subobject(L, [0])
        m = eq_morphism(L, G, {}, {0: 0, 1: 0})
        with pytest.raises(IdentificationCondition):
            pushout_complement(l, m)

    def test_left_leg_must_be_mono(self):
        L = free_eq(Hypergraph.build([0], {}))
        K = free_eq(Hypergraph.build([0, 1], {}))
        l = eq_morphism(K, L, {}, {0: 0, 1: 0})
        with pytest.raises(InvalidMorphism):
            pushout_complement(l, identity_eq(L))


class TestSaturate:
    """Test the saturation loop."""

    def test_no_rules(self):
        G = aa_middle()
        H, report = saturate(G, [])
        assert H == G
        assert report.fixpoint and report.iterations == 0

    def test_div_self_on_middle_aa(self):
        H, report = saturate(aa_middle(), [div_self_rule()], match_class='pb')
        assert report.status == 'fixpoint'
        assert report.iterations == 1
        assert report.applications == 1
        assert report.repairs == 0
        assert report.to_dict()['per_rule'] == {'div-self': 1}
        assert extract(H) == term('1')

    def test_max_iters_zero(self):
        G = aa_middle()
        H, report = saturate(G, [div_self_rule()], max_iters=0, match_class='pb')
        assert report.status == 'max_iters'
        assert H == G

    def test_demo_saturates_to_a(self, sig):
        G = demo_egraph(sig)
        H, report = saturate(G, demo_rules(sig), match_class='any')
        assert report.fixpoint
        assert report.iterations <= 20
        assert report.per_rule == {'assoc-div': 1, 'div-self': 1, 'mul-one': 1}
        assert len(H.eq.edges) >= len(G.eq.edges)
        assert H.acyclic
        t, cost = extract_with_cost(H)
        assert t == term('a')
        assert cost == brute_force_cost(H, H.root_class)

    def test_demo_under_mono(self, sig):
        H, report = saturate(demo_egraph(sig), demo_rules(sig), match_class='mono')
        assert report.fixpoint
        assert report.per_rule == {'assoc-div': 1, 'div-self': 1, 'mul-one': 1}
        assert extract(H) == term('a')

    def test_nested_rule_under_default_class(self, sig):
        G = term_to_egg(parse_term('(/ (* a b) 2)', sig), sig)
        H, report = saturate(G, demo_rules(sig)[:1])
        assert report.fixpoint
        assert report.applications == 1
        assert report.repairs == 0
        assert extract(H) == parse_term('(* a (/ b 2))', sig)

    def test_pb_cannot_start_the_demo(self, sig):
        """The two 2 leaves share a class, which a Pb match of assoc-div cannot hit twice."""
        G = demo_egraph(sig)
        H, report = saturate(G, demo_rules(sig), match_class='pb')
        assert report.fixpoint and report.applications == 0
        assert H == G

    @pytest.mark.parametrize('limit,status', [({'max_edges': 5}, 'max_edges'), ({'max_classes': 4}, 'max_classes')])
    def test_size_limits(self, sig, limit, status):
        _, report = saturate(demo_egraph(sig), demo_rules(sig), match_class='any', **limit)
        assert report.status == status
        assert report.iterations == 1

    def test_deterministic(self, sig):
        first = saturate(demo_egraph(sig), demo_rules(sig), match_class='any')
        second = saturate(demo_egraph(sig), demo_rules(sig), match_class='any')
        assert first[0] == second[0]
        assert first[1].to_dict() == second[1].to_dict()

    def test_unknown_match_class(self):
        with pytest.raises(SchemaError):
            saturate(aa_middle(), [div_self_rule()], match_class='epi')


class TestExtract:
    """Test extraction."""

    def test_unsaturated_term_comes_back(self, sig):
        assert str(extract(demo_egraph(sig))) == DEMO_TERM

    def test_cost_table(self):
        H, _ = saturate(aa_middle(), [div_self_rule()], match_class='pb')
        t, cost = extract_with_cost(H, costs={'1': 10})
        assert str(t) == '(/ a a)'
        assert cost == 3

    def test_non_positive_cost(self):
        with pytest.raises(SchemaError):
            extract(aa_middle(), costs={'a': 0})

    def test_unknown_class(self):
        with pytest.raises(ExtractionError):
            extract(aa_middle(), root=99)

    def test_no_finite_derivation(self, sig):
        hyp = Hypergraph.build([0, 1], {0: ((1, 1), (0,))})
        G = EGraph(LabelledEqHypergraph.of(free_eq(hyp), {0: '*'}, sig), root=0)
        with pytest.raises(ExtractionError):
            extract(G)

    def test_cyclic(self, sig):
        hyp = Hypergraph.build([0], {0: ((0, 0), (0,))})
        G = EGraph(LabelledEqHypergraph.of(free_eq(hyp), {0: '*'}, sig), root=0)
        with pytest.raises(CyclicGraph):
            extract(G)
