from django.test import SimpleTestCase
from hypothesis import given, settings

from apps.core.exceptions import BudgetExceededError, InputError
from apps.core.models import TransitionNetwork
from apps.core.semantics import reachable_states, totalize_low
from apps.core.testing import transition_networks
from apps.core.unionfind import UnionFind
from apps.modellang.loaders import load_fixture
from apps.noninterference.checks import check_ni_exact
from apps.noninterference.rstar import compute_rstar

from .minimality import bell_number, check_minimality, set_partitions, strict_refinements
from .models import ObservationPartition, block_name
from .unification import (
    PTN, TOTAL, apply_unification, compute_ustar, high_awareness_warnings, idealize,
    literal_ustar,
)


def all_unifications(net):
    return [ObservationPartition(blocks) for blocks in set_partitions(sorted(net.observations))]


def ni_inducing(net, unification):
    return check_ni_exact(apply_unification(totalize_low(net), unification)).holds


def chain_network():
    obs = {('s0', 'L'): 'o0', ('s1', 'L'): 'o1', ('s2', 'L'): 'o2',
           ('s0', 'H'): 'h0', ('s1', 'H'): 'h1', ('s2', 'H'): 'h2'}
    return TransitionNetwork(
        name='Chain', states={'s0', 's1', 's2'}, initial='s0', high={'H'}, low={'L'},
        actions={'a', 'b'}, observations=set(obs.values()), obs=obs,
        transitions={('s0', 'H', 'a'): 's1', ('s1', 'L', 'b'): 's2', ('s0', 'L', 'b'): 's0'},
    )


class UnificationTestCase(SimpleTestCase):
    """
    Test cases for U* and its application.
    """

    def setUp(self):
        self.ma = load_fixture('Ma').network
        self.mb = load_fixture('Mb').network

    def test_fixture_blocks(self):
        """Test the names revealed by publication are unified with noObs."""
        ustar_a = compute_ustar(totalize_low(self.ma))
        self.assertTrue({'noObs', 'GNameC', 'GNameD'} <= ustar_a.block_of('noObs'))
        ustar_b = compute_ustar(totalize_low(self.mb))
        self.assertTrue({'noObs', 'MNameA', 'MNameB'} <= ustar_b.block_of('noObs'))

    def test_high_labels_untouched_on_fixture(self):
        ustar = compute_ustar(totalize_low(self.mb))
        self.assertEqual(ustar.block_of('mA_gC'), {'mA_gC'})

    def test_ni_net_has_identity_unification(self):
        ideal = idealize(self.ma).network
        self.assertTrue(compute_ustar(ideal).is_identity())

    def test_chain_against_brute_force(self):
        """Test U* is the finest unification making the chain noninterferent."""
        net = chain_network()
        ustar = compute_ustar(totalize_low(net))
        self.assertEqual(ustar.block_of('o0'), {'o0', 'o1', 'o2'})
        inducing = [part for part in all_unifications(net) if ni_inducing(net, part)]
        finest = [part for part in inducing if not any(
            other != part and other.refines(part) for other in inducing
        )]
        self.assertEqual(finest, [ustar])

    def test_apply_unification(self):
        """Test unifying noObs with the mothers' names blinds L between s4 and s12."""
        labels = {'noObs', 'MNameA', 'MNameB'}
        blocks = [labels] + [{label} for label in self.mb.observations - labels]
        applied = apply_unification(self.mb, ObservationPartition(blocks))
        self.assertEqual(applied.observe('s4', 'L'), applied.observe('s12', 'L'))
        self.assertEqual(applied.observe('s4', 'L'), '{MNameA+MNameB+noObs}')
        self.assertNotEqual(applied.observe('s0', 'L'), applied.observe('s4', 'L'))
        self.assertEqual(applied.transitions, self.mb.transitions)

    def test_apply_single_block(self):
        applied = apply_unification(self.mb, ObservationPartition.single_block(self.mb.observations))
        self.assertEqual(len(set(applied.obs.values())), 1)

    def test_apply_requires_cover(self):
        with self.assertRaises(InputError):
            apply_unification(self.mb, ObservationPartition.identity({'noObs'}))

    def test_block_names_flatten(self):
        self.assertEqual(block_name({'b', 'a'}), '{a+b}')
        self.assertEqual(block_name({'{a+b}', 'c'}), '{a+b+c}')
        self.assertEqual(block_name({'x'}), 'x')

    def test_block_name_collision(self):
        """Test a merged class cannot take the name of a label already in the model."""
        obs = {
            ('s0', 'H'): 'h', ('s1', 'H'): 'h', ('s2', 'H'): 'h',
            ('s0', 'L'): 'a', ('s1', 'L'): 'b', ('s2', 'L'): '{a+b}',
        }
        net = TransitionNetwork(
            name='Clash', states={'s0', 's1', 's2'}, initial='s0', high={'H'}, low={'L'},
            actions={'a'}, observations={'h', 'a', 'b', '{a+b}'}, obs=obs,
            transitions={('s0', 'H', 'a'): 's1', ('s1', 'H', 'a'): 's2'},
        )
        unification = ObservationPartition([{'a', 'b'}, {'{a+b}'}, {'h'}])
        with self.assertRaises(InputError) as caught:
            apply_unification(net, unification)
        self.assertIn("'{a+b}'", str(caught.exception))
        merged = ObservationPartition([{'a', 'b', '{a+b}'}, {'h'}])
        self.assertEqual(apply_unification(net, merged).observe('s2', 'L'), '{a+b}')

    def test_idealize_fixtures(self):
        for net in (self.ma, self.mb):
            with self.subTest(net=net.name):
                result = idealize(net)
                self.assertEqual(result.provenance, PTN)
                self.assertEqual(result.network.name, net.name)
                self.assertTrue(check_ni_exact(result.network).holds)
                self.assertEqual(high_awareness_warnings(result), [])

    def test_high_awareness_warning(self):
        """Test merging labels High shares with Low can break High's awareness."""
        obs = {('s0', 'H'): 'o0', ('s1', 'H'): 'o1', ('s0', 'L'): 'o0', ('s1', 'L'): 'o1'}
        net = TransitionNetwork(
            name='Shared', states={'s0', 's1'}, initial='s0', high={'H'}, low={'L'},
            actions={'a'}, observations={'o0', 'o1'}, obs=obs,
            transitions={('s0', 'H', 'a'): 's1'},
        )
        result = idealize(net)
        self.assertEqual(len(high_awareness_warnings(result)), 1)

    @settings(max_examples=100, deadline=None)
    @given(transition_networks(max_states=8))
    def test_idealized_is_noninterferent(self, net):
        result = idealize(net)
        self.assertTrue(check_ni_exact(result.network).holds)
        self.assertIn(result.provenance, (TOTAL, PTN))

    @settings(max_examples=100, deadline=None)
    @given(transition_networks())
    def test_idempotent(self, net):
        ideal = idealize(net).network
        self.assertTrue(idealize(ideal).unification.is_identity())

    @settings(max_examples=100, deadline=None)
    @given(transition_networks())
    def test_only_coarsens(self, net):
        ideal = idealize(net).network
        for agent in net.low:
            for first in net.states:
                for second in net.states:
                    if net.observe(first, agent) == net.observe(second, agent):
                        self.assertEqual(ideal.observe(first, agent), ideal.observe(second, agent))

    @settings(max_examples=100, deadline=None)
    @given(transition_networks())
    def test_contains_base_pairs(self, net):
        base = totalize_low(net)
        ustar = compute_ustar(base)
        scope = reachable_states(base)
        for block in compute_rstar(base).blocks:
            for agent in net.low:
                labels = {base.observe(state, agent) for state in block if state in scope}
                if labels:
                    self.assertTrue(labels <= ustar.block_of(next(iter(labels))))

    @settings(max_examples=100, deadline=None)
    @given(transition_networks())
    def test_literal_definition(self, net):
        """Test the four-state definition closes to the same unification."""
        base = totalize_low(net)
        ustar = compute_ustar(base)
        pairs = literal_ustar(base)
        self.assertTrue(pairs <= ustar.pairs())
        forest = UnionFind(sorted(base.observations))
        for left, right in pairs:
            forest.union(left, right)
        self.assertEqual(ObservationPartition(forest.groups()), ustar)

    @settings(max_examples=50, deadline=None)
    @given(transition_networks(max_states=5, max_labels=3))
    def test_ustar_is_least_inducing(self, net):
        """Test a unification induces noninterference iff U* refines it."""
        ustar = compute_ustar(totalize_low(net))
        for part in all_unifications(net):
            self.assertEqual(ni_inducing(net, part), ustar.refines(part))


class MinimalityTestCase(SimpleTestCase):
    """
    Test cases for the exhaustive minimality check.
    """

    def test_bell_numbers(self):
        self.assertEqual([bell_number(n) for n in range(6)], [1, 1, 2, 5, 15, 52])
        self.assertEqual(len(list(set_partitions('abcd'))), 15)

    def test_refinements_finest_first(self):
        refinements = strict_refinements(ObservationPartition.single_block('abc'))
        self.assertEqual(len(refinements), 4)
        self.assertTrue(refinements[0].is_identity())

    def test_fixtures_minimal(self):
        for name in ('Ma', 'Mb'):
            with self.subTest(name=name):
                net = load_fixture(name).network
                report = check_minimality(net, idealize(net).unification)
                self.assertTrue(report.minimal)
                self.assertEqual(report.checked, 51)

    def test_coarse_unification_not_minimal(self):
        """Test the all-in-one unification of a noninterferent net is refined by the identity."""
        net = idealize(chain_network()).network
        report = check_minimality(net, ObservationPartition.single_block(net.observations))
        self.assertFalse(report.minimal)
        self.assertTrue(report.witness.is_identity())

    def test_budget(self):
        net = load_fixture('Mb').network
        with self.assertRaises(BudgetExceededError):
            check_minimality(net, idealize(net).unification, budget=10)

    @settings(max_examples=25, deadline=None)
    @given(transition_networks(max_states=4, max_labels=4, max_agents_per_role=1))
    def test_agrees_with_brute_force(self, net):
        unifications = all_unifications(net)
        for part in unifications:
            finer_inducing = any(
                other != part and other.refines(part) and ni_inducing(net, other)
                for other in unifications
            )
            self.assertEqual(check_minimality(net, part).minimal, not finer_inducing)
