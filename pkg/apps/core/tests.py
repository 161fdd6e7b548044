from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.modellang.loaders import load_fixture

from .exceptions import InputError
from .models import UNDEFINED, PersonalizedAction, TransitionNetwork, natural_sorted
from .partitions import Partition
from .semantics import (
    available_actions, execute, is_total, purge, reachable_states, reduced_obs,
    totalize_low, totalize_with_sinks,
)
from .testing import transition_networks
from .unionfind import UnionFind
from .validation import validate_network


def make_network(states, obs, transitions, high=('H',), low=('L',), actions=None, name='N'):
    """Small helper building a network from compact literals."""
    actions = actions or {action for (_s, _a, action) in transitions} or {'a'}
    return TransitionNetwork(
        name=name,
        states=states,
        initial=natural_sorted(states)[0],
        high=high,
        low=low,
        actions=actions,
        observations=set(obs.values()),
        obs=obs,
        transitions=transitions,
    )


def walk(items):
    return [PersonalizedAction(agent, action) for agent, action in items]


class FixtureSemanticsTestCase(SimpleTestCase):
    """
    Test cases for execution semantics on the banking fixture.
    """

    def setUp(self):
        self.mb = load_fixture('Mb').network

    def test_fixture_is_well_formed(self):
        """Test the banking model passes validation."""
        self.assertTrue(validate_network(self.mb).ok)
        self.assertFalse(is_total(self.mb))

    def test_available_actions(self):
        """Test available actions come from defined transitions only."""
        self.assertEqual(available_actions(self.mb, 's3', 'H'), {'publish'})
        self.assertEqual(available_actions(self.mb, 's7', 'H'), frozenset())
        self.assertEqual(available_actions(self.mb, 's3', 'L'), {'auth_A', 'auth_B', 'chkWeb'})

    def test_available_actions_unknown_identifiers(self):
        """Test unknown states and agents are input errors."""
        with self.assertRaises(InputError):
            available_actions(self.mb, 's99', 'H')
        with self.assertRaises(InputError):
            available_actions(self.mb, 's0', 'Mallory')

    def test_execute_chain(self):
        """Test the publish-then-check chain ends in s12."""
        alpha = walk([('Env', 'MnameA'), ('Env', 'GnameD'), ('H', 'publish'), ('L', 'chkWeb')])
        self.assertEqual(execute(self.mb, 's0', alpha), 's12')

    def test_execute_empty_and_undefined(self):
        """Test the empty sequence and an undefined first step."""
        self.assertEqual(execute(self.mb, 's5', ()), 's5')
        self.assertIs(execute(self.mb, 's0', walk([('H', 'publish')])), UNDEFINED)

    def test_execute_malformed_sequence(self):
        """Test sequences naming unknown agents are rejected."""
        with self.assertRaises(InputError):
            execute(self.mb, 's0', [('Nobody', 'publish')])

    def test_purge(self):
        """Test purging High removes the initializers and the publication."""
        alpha = walk([('H', 'MnameA'), ('H', 'GnameD'), ('H', 'publish'), ('L', 'chkWeb')])
        self.assertEqual(purge(alpha, {'H'}), (PersonalizedAction('L', 'chkWeb'),))
        self.assertEqual(purge((), {'H'}), ())
        self.assertEqual(purge(alpha, {'H', 'L'}), ())

    def test_totalize_low(self):
        """Test Low totalization adds self-loops and nothing else."""
        total = totalize_low(self.mb)
        self.assertEqual(total.successor('s0', 'L', 'auth_A'), 's0')
        self.assertIs(total.successor('s0', 'H', 'publish'), UNDEFINED)
        for key, target in self.mb.transitions.items():
            self.assertEqual(total.transitions[key], target)
        self.assertEqual(total.obs, self.mb.obs)

    def test_totalize_unknown_agent(self):
        with self.assertRaises(InputError):
            totalize_low(self.mb, {'Nobody'})

    def test_reduced_obs(self):
        """Test stuttering observations collapse."""
        self.assertEqual(reduced_obs(self.mb, ['s0', 's1', 's4'], 'L'), ['init', 'noObs'])
        self.assertEqual(
            reduced_obs(self.mb, ['s0', 's1', 's4', 's8', 's12'], 'L'),
            ['init', 'noObs', 'MNameA'],
        )

    def test_reachable_states(self):
        self.assertEqual(reachable_states(self.mb), self.mb.states)

    def test_totalize_with_sinks(self):
        """Test the sink reading is total and keeps defined moves."""
        padded = totalize_with_sinks(self.mb, sink_observations={('s_lerr', 'L'): 'noObs'})
        self.assertTrue(is_total(padded))
        self.assertEqual(padded.successor('s0', 'H', 'publish'), 's_herr')
        self.assertEqual(padded.successor('s0', 'L', 'chkWeb'), 's_lerr')
        self.assertEqual(padded.successor('s_lerr', 'H', 'publish'), 's_lerr')
        self.assertEqual(padded.observe('s_lerr', 'L'), 'noObs')
        self.assertEqual(padded.observe('s_herr', 'L'), 's_herr')
        self.assertEqual(padded.successor('s3', 'H', 'publish'), 's7')

    def test_totalize_with_sinks_rejects_existing_state(self):
        with self.assertRaises(InputError):
            totalize_with_sinks(self.mb, high_sink='s0')


class ValidationTestCase(SimpleTestCase):
    """
    Test cases for well-formedness violations.
    """

    def test_role_overlap(self):
        """Test an agent in both roles is reported once."""
        net = make_network(
            {'s0'}, {('s0', 'A'): 'o'}, {}, high=('A',), low=('A',),
        )
        violations = validate_network(net).of_kind('role-partition')
        self.assertEqual(len(violations), 1)
        self.assertEqual(violations[0].items, ('A',))

    def test_availability_awareness(self):
        """Test two L-indistinguishable states with different actions are named."""
        obs = {('s0', 'H'): 'h0', ('s1', 'H'): 'h1', ('s0', 'L'): 'o', ('s1', 'L'): 'o'}
        net = make_network({'s0', 's1'}, obs, {('s0', 'L', 'a'): 's1'})
        violations = validate_network(net).of_kind('availability-awareness')
        self.assertEqual(len(violations), 1)
        self.assertEqual(violations[0].items, ('L', 's0', 's1'))

    def test_reports_every_violation(self):
        """Test validation does not stop at the first problem."""
        obs = {('s0', 'H'): 'h0', ('s0', 'L'): 'ghost'}
        net = TransitionNetwork(
            name='Broken',
            states={'s0'},
            initial='s9',
            high={'H'},
            low={'L'},
            actions={'a'},
            observations={'h0'},
            obs=obs,
            transitions={('s0', 'X', 'b'): 's3'},
        )
        kinds = {violation.kind for violation in validate_network(net).violations}
        self.assertEqual(kinds, {
            'unknown-initial', 'unknown-transition-state', 'unknown-agent',
            'unknown-action', 'unknown-observation',
        })


class UnionFindTestCase(SimpleTestCase):

    def test_union_and_groups(self):
        forest = UnionFind(['a', 'b', 'c', 'd'])
        self.assertTrue(forest.union('a', 'b'))
        self.assertFalse(forest.union('b', 'a'))
        forest.union('c', 'd')
        self.assertTrue(forest.connected('a', 'b'))
        self.assertFalse(forest.connected('a', 'c'))
        self.assertEqual(set(forest.groups()), {frozenset('ab'), frozenset('cd')})

    def test_accepts_generators(self):
        forest = UnionFind(name for name in 'xyz')
        self.assertEqual(len(forest.groups()), 3)


class PartitionTestCase(SimpleTestCase):

    def test_rejects_overlapping_blocks(self):
        with self.assertRaises(ValueError):
            Partition([{'a', 'b'}, {'b'}])

    def test_refines(self):
        fine = Partition.identity('abc')
        coarse = Partition([{'a', 'b'}, {'c'}])
        self.assertTrue(fine.refines(coarse))
        self.assertFalse(coarse.refines(fine))
        self.assertTrue(coarse.related('a', 'b'))


class SemanticsPropertyTestCase(SimpleTestCase):
    """
    Property tests over random well-formed networks.
    """

    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_purge_idempotent(self, data):
        net = data.draw(transition_networks())
        items = sorted((agent, action) for agent in net.agents for action in net.actions)
        alpha = walk(data.draw(st.lists(st.sampled_from(items), max_size=6)))
        once = purge(alpha, net.high)
        self.assertEqual(purge(once, net.high), once)

    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_execute_composes(self, data):
        net = data.draw(transition_networks())
        items = sorted((agent, action) for agent in net.agents for action in net.actions)
        alpha = walk(data.draw(st.lists(st.sampled_from(items), max_size=4)))
        beta = walk(data.draw(st.lists(st.sampled_from(items), max_size=4)))
        middle = execute(net, net.initial, alpha)
        if middle is not UNDEFINED:
            self.assertEqual(execute(net, net.initial, alpha + beta), execute(net, middle, beta))

    @settings(max_examples=50, deadline=None)
    @given(transition_networks())
    def test_totalize_low_extends(self, net):
        total = totalize_low(net)
        for key, target in net.transitions.items():
            self.assertEqual(total.transitions[key], target)
        for state in net.states:
            for agent in net.low:
                self.assertEqual(available_actions(total, state, agent), net.actions)

    @settings(max_examples=50, deadline=None)
    @given(transition_networks(total=True))
    def test_totalize_identity_on_total(self, net):
        self.assertIs(totalize_low(net), net)

    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_reduced_obs_has_no_stutter(self, data):
        net = data.draw(transition_networks())
        path = data.draw(st.lists(st.sampled_from(net.sorted_states()), min_size=1, max_size=8))
        for agent in net.agents:
            labels = reduced_obs(net, path, agent)
            self.assertTrue(labels)
            self.assertTrue(all(left != right for left, right in zip(labels, labels[1:])))

    @settings(max_examples=50, deadline=None)
    @given(transition_networks())
    def test_availability_constant_on_beliefs(self, net):
        """Test generated networks are aware: equal labels mean equal available actions."""
        self.assertTrue(validate_network(net).ok)
        for agent in net.low:
            by_label = {}
            for state in net.states:
                by_label.setdefault(net.observe(state, agent), set()).add(
                    available_actions(net, state, agent)
                )
            self.assertTrue(all(len(sets) == 1 for sets in by_label.values()))
