from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.core.models import PersonalizedAction, TransitionNetwork
from apps.core.semantics import reachable_states, totalize_low, totalize_with_sinks
from apps.core.testing import transition_networks
from apps.idealization.unification import idealize
from apps.modellang.loaders import load_fixture

from .checks import (
    check_ni_bounded, check_ni_exact, check_unwinding, iter_ni_violations, replay_witness,
)
from .models import SequenceWitness, StatePairWitness, StatePartition
from .rstar import compute_rstar


def naive_rstar(net):
    """Iterate the defining function from the High-step seed until nothing changes."""
    scope = reachable_states(net)
    related = {(state, state) for state in net.states}
    for (source, agent, _action), target in net.transitions.items():
        if source in scope and agent in net.high:
            related |= {(source, target), (target, source)}

    while True:
        grown = set(related)
        for first, second in related:
            if first not in scope:
                continue
            for agent in net.low:
                for action in net.actions:
                    left = net.transitions.get((first, agent, action))
                    right = net.transitions.get((second, agent, action))
                    if left is not None and right is not None:
                        grown |= {(left, right), (right, left)}
        for first, middle in list(grown):
            for other, last in list(grown):
                if middle == other:
                    grown.add((first, last))
        if grown == related:
            break
        related = grown

    blocks = {frozenset(second for first, second in related if first == state) for state in net.states}
    return StatePartition(blocks)


def two_state(transitions, low_obs=('x', 'x')):
    obs = {
        ('s0', 'H'): 'h', ('s1', 'H'): 'h',
        ('s0', 'L'): low_obs[0], ('s1', 'L'): low_obs[1],
    }
    return TransitionNetwork(
        name='Two', states={'s0', 's1'}, initial='s0', high={'H'}, low={'L'},
        actions={'a'}, observations=set(obs.values()), obs=obs, transitions=transitions,
    )


class RStarTestCase(SimpleTestCase):
    """
    Test cases for the R* congruence closure.
    """

    def test_single_high_edge(self):
        part = compute_rstar(two_state({('s0', 'H', 'a'): 's1'}))
        self.assertEqual(part.sorted_blocks(), [['s0', 's1']])

    def test_no_high_moves(self):
        part = compute_rstar(two_state({('s0', 'L', 'a'): 's1'}))
        self.assertTrue(part.is_identity())

    def test_totalized_mb_propagation(self):
        """Test publish relates s3 and s7, and chkWeb pulls s11 in."""
        part = compute_rstar(totalize_low(load_fixture('Mb').network))
        self.assertTrue(part.related('s3', 's7'))
        self.assertTrue(part.related('s3', 's11'))
        self.assertEqual(part, naive_rstar(totalize_low(load_fixture('Mb').network)))

    def test_fixtures_match_naive(self):
        for name in ('Ma', 'Mb'):
            with self.subTest(name=name):
                net = load_fixture(name).network
                self.assertEqual(compute_rstar(net), naive_rstar(net))

    def test_unreachable_states_stay_apart(self):
        net = two_state({('s1', 'H', 'a'): 's0'})
        self.assertTrue(compute_rstar(net).is_identity())
        self.assertFalse(compute_rstar(net, reachable_only=False).is_identity())

    @settings(max_examples=200, deadline=None)
    @given(transition_networks())
    def test_matches_naive_fixpoint(self, net):
        self.assertEqual(compute_rstar(net), naive_rstar(net))

    @settings(max_examples=100, deadline=None)
    @given(transition_networks())
    def test_step_consistent_and_locally_respectful(self, net):
        report = check_unwinding(net, compute_rstar(net))
        self.assertTrue(report.sc)
        self.assertTrue(report.lr)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_least_unwinding(self, data):
        """Test R* refines every unwinding relation."""
        net = data.draw(transition_networks(max_states=5))
        states = net.sorted_states()
        labels = data.draw(st.lists(st.integers(0, 2), min_size=len(states), max_size=len(states)))
        blocks = {}
        for state, label in zip(states, labels):
            blocks.setdefault(label, set()).add(state)
        part = StatePartition(blocks.values())
        if check_unwinding(net, part).is_unwinding:
            self.assertTrue(compute_rstar(net).refines(part))


class UnwindingTestCase(SimpleTestCase):
    """
    Test cases for output consistency, step consistency and local respect.
    """

    def test_mb_rstar(self):
        """Test R* of M_b is step consistent and respectful but not output consistent."""
        net = load_fixture('Mb').network
        part = compute_rstar(net)
        report = check_unwinding(net, part)
        self.assertTrue(report.sc)
        self.assertTrue(report.lr)
        self.assertFalse(report.oc)
        self.assertTrue(part.related('s3', 's11'))
        self.assertNotEqual(net.observe('s3', 'L'), net.observe('s11', 'L'))
        for first, second, agent in report.oc_counterexamples:
            self.assertNotEqual(net.observe(first, agent), net.observe(second, agent))

    def test_identity_breaks_local_respect(self):
        net = two_state({('s0', 'H', 'a'): 's1'})
        report = check_unwinding(net, StatePartition.identity(net.states))
        self.assertFalse(report.lr)
        self.assertEqual(report.lr_counterexamples, (('s0', 'H', 'a'),))

    def test_idealized_mb(self):
        ideal = idealize(load_fixture('Mb').network).network
        self.assertTrue(check_unwinding(ideal, compute_rstar(ideal)).is_unwinding)


class NoninterferenceTestCase(SimpleTestCase):
    """
    Test cases for the exact and bounded noninterference checks.
    """

    def setUp(self):
        self.ma = load_fixture('Ma').network
        self.mb = load_fixture('Mb').network

    def test_fixtures_violate(self):
        for net in (self.ma, self.mb):
            with self.subTest(net=net.name):
                verdict = check_ni_exact(net)
                self.assertFalse(verdict.holds)
                self.assertIsInstance(verdict.witness, StatePairWitness)
                self.assertTrue(replay_witness(net, verdict.witness))

    def test_no_high_moves_holds(self):
        net = two_state({('s0', 'L', 'a'): 's1'}, low_obs=('x', 'y'))
        self.assertTrue(check_ni_exact(net).holds)
        self.assertTrue(check_ni_bounded(net, 4).holds)

    def test_idealized_holds(self):
        self.assertTrue(check_ni_exact(idealize(self.ma).network).holds)

    def test_depth_zero(self):
        verdict = check_ni_bounded(self.ma, 0)
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.method, 'bounded(0)')

    def test_bounded_ma_shortest_witness(self):
        """Test the partial M_a is caught after the two Environ moves."""
        verdict = check_ni_bounded(self.ma, 4)
        self.assertFalse(verdict.holds)
        self.assertEqual(verdict.witness.alpha, (
            PersonalizedAction('Env', 'MnameA'), PersonalizedAction('Env', 'GnameC'),
        ))
        self.assertEqual(verdict.witness.observation, 'noObs')
        self.assertEqual(verdict.witness.purged_observation, 'init')
        self.assertTrue(replay_witness(self.ma, verdict.witness))

    def test_publication_witness_on_sink_reading(self):
        """Test the grandmother's name leaks after publication on the total reading."""
        padded = totalize_with_sinks(self.ma, sink_observations={('s_lerr', 'L'): 'noObs'})
        alpha = (
            PersonalizedAction('Env', 'MnameA'), PersonalizedAction('Env', 'GnameD'),
            PersonalizedAction('H', 'publish'), PersonalizedAction('L', 'chkWeb'),
        )
        witness = next(found for found in iter_ni_violations(padded, 4) if found.alpha == alpha)
        self.assertEqual(witness.observation, 'GNameD')
        self.assertEqual(witness.purged_observation, 'noObs')
        self.assertEqual(witness.purged, (PersonalizedAction('L', 'chkWeb'),))
        self.assertTrue(replay_witness(padded, witness))

    def test_bounded_mb(self):
        verdict = check_ni_bounded(self.mb, 4)
        self.assertFalse(verdict.holds)
        self.assertIsInstance(verdict.witness, SequenceWitness)
        self.assertTrue(replay_witness(self.mb, verdict.witness))

    def test_stream_is_consistent_with_bounded(self):
        first = next(iter_ni_violations(self.mb, 4))
        self.assertTrue(replay_witness(self.mb, first))

    def test_negative_depth(self):
        with self.assertRaises(ValueError):
            check_ni_bounded(self.ma, -1)

    @settings(max_examples=200, deadline=None)
    @given(transition_networks())
    def test_exact_agrees_with_bounded(self, net):
        exact = check_ni_exact(net)
        bounded = check_ni_bounded(net, 2 * len(net.states))
        self.assertEqual(exact.holds, bounded.holds)
        if not bounded.holds:
            self.assertTrue(replay_witness(net, bounded.witness))
            self.assertTrue(replay_witness(net, exact.witness))
