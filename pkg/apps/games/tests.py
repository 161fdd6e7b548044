import tempfile
from itertools import combinations, product
from pathlib import Path

from django.test import SimpleTestCase, override_settings
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from apps.core.exceptions import BudgetExceededError, InputError, UnsupportedGoalError
from apps.core.models import Goal, TransitionNetwork
from apps.core.semantics import available_actions, execute
from apps.core.testing import goals_for, transition_networks
from apps.idealization.unification import idealize
from apps.modellang.loaders import load_fixture

from .arena import build_belief_arena, stutter_closure
from .export import arena_to_graph, product_to_graph, write_dot
from .models import ABSTAIN, Semantics, Strategy
from .serializers import SolveResultSerializer, StrategySerializer
from .solvers import (
    expose_goal, is_observation_definable, search_strategies, solve, solve_fair, solve_strict,
)
from .verification import UncoveredBeliefError, verify_strategy

VERIFYING = {'VERIFY_WITNESSES': True}
REACH_ACCESS = Goal.reachability({'s15', 's16'})
SMALL_NETS = transition_networks(max_states=4, max_actions=2, max_labels=2, max_low=1)
SOLVER_SETTINGS = settings(
    max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


def one_state_network():
    obs = {('s0', 'H'): 'o', ('s0', 'L'): 'o'}
    return TransitionNetwork(
        name='One', states={'s0'}, initial='s0', high={'H'}, low={'L'}, actions={'a'},
        observations={'o'}, obs=obs,
        transitions={('s0', 'H', 'a'): 's0', ('s0', 'L', 'a'): 's0'},
    )


def solve_or_skip(net, goal, semantics, budget=20000):
    try:
        return solve(net, 'L0', goal, semantics, budget)
    except BudgetExceededError:
        assume(False)


class ArenaTestCase(SimpleTestCase):
    """
    Test cases for the attacker's belief arena.
    """

    def setUp(self):
        self.mb = load_fixture('Mb').network
        self.arena = build_belief_arena(self.mb, 'L')

    def test_initial_belief(self):
        self.assertEqual(self.arena.initial_node.belief, {'s0', 's1', 's2'})
        self.assertEqual(self.arena.initial_node.label, 'init')

    def test_no_obs_belief_absorbs_publication(self):
        node = self.arena.node_for(frozenset(f's{index}' for index in range(3, 11)))
        self.assertIsNotNone(node)
        self.assertEqual(node.label, 'noObs')
        self.assertEqual(self.arena.choices[node.index], ('auth_A', 'auth_B', 'chkWeb', ABSTAIN))

    def test_mother_name_belief(self):
        node = self.arena.node_for(frozenset({'s11', 's12'}))
        self.assertIsNotNone(node)
        self.assertEqual(node.label, 'MNameA')
        self.assertEqual(node.history, ('init', 'noObs', 'MNameA'))

    def test_beliefs_share_observation(self):
        for node in self.arena.nodes:
            self.assertEqual({self.mb.observe(state, 'L') for state in node.belief}, {node.label})

    def test_single_state(self):
        arena = build_belief_arena(one_state_network(), 'L')
        self.assertEqual(len(arena.nodes), 1)
        self.assertTrue(all(not outcomes for outcomes in arena.edges.values()))

    def test_attacker_must_be_low(self):
        with self.assertRaises(InputError):
            build_belief_arena(self.mb, 'H')

    def test_stutter_closure_respects_choice(self):
        closure = stutter_closure(self.mb, 'L', {'s3'}, 'chkWeb')
        self.assertEqual(closure, {'s3', 's7'})

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_simulation(self, data):
        """Test every execution, one attacker choice per observation, stays inside the arena."""
        net = data.draw(transition_networks(max_states=5, max_low=1))
        arena = build_belief_arena(net, 'L0')
        state, index = net.initial, arena.initial
        self.assertIn(state, arena.initial_node.belief)
        choice = data.draw(st.sampled_from(arena.choices[index]))
        for _step in range(data.draw(st.integers(0, 12))):
            moves = [
                (agent, action, target) for agent, action, target in net.outgoing[state]
                if arena.allows(agent, action, choice)
            ]
            if not moves:
                break
            _agent, _action, state = data.draw(st.sampled_from(moves))
            label = net.observe(state, 'L0')
            if label == arena.nodes[index].label:
                self.assertIn(state, arena.closures[(index, choice)])
                continue
            index = arena.successor(index, choice, label)
            self.assertIsNotNone(index)
            self.assertIn(state, arena.nodes[index].belief)
            choice = data.draw(st.sampled_from(arena.choices[index]))


@override_settings(EFFECTIVE_SECURITY=VERIFYING)
class FixtureGameTestCase(SimpleTestCase):
    """
    Test cases for the banking games under both semantics.
    """

    def setUp(self):
        self.ma = load_fixture('Ma').network
        self.mb = load_fixture('Mb').network

    def test_mb_fair_strategy(self):
        """Test the attacker checks the web, then answers with the published name."""
        result = solve(self.mb, 'L', REACH_ACCESS, Semantics.FAIR)
        self.assertTrue(result.winning)
        self.assertFalse(result.goal_exposed)
        plays = {history: choice for history, _belief, choice in result.strategy.items()}
        self.assertEqual(plays, {
            ('init',): ABSTAIN,
            ('init', 'noObs'): 'chkWeb',
            ('init', 'noObs', 'MNameA'): 'auth_A',
            ('init', 'noObs', 'MNameB'): 'auth_B',
        })
        self.assertTrue(verify_strategy(self.mb, result.strategy, REACH_ACCESS, Semantics.FAIR).ok)

    def test_mb_strict_has_no_winner(self):
        """Test an adversary withholding publication forever defeats the attacker."""
        result = solve_strict(build_belief_arena(self.mb, 'L'), REACH_ACCESS)
        self.assertFalse(result.winning)
        self.assertIn('losingNode', result.diagnostics)

    def test_ma_has_no_winner(self):
        for semantics in Semantics.values:
            with self.subTest(semantics=semantics):
                self.assertFalse(solve(self.ma, 'L', REACH_ACCESS, semantics).winning)

    def test_idealized_have_no_winner(self):
        for net in (self.ma, self.mb):
            ideal = idealize(net).network
            for semantics in Semantics.values:
                with self.subTest(net=net.name, semantics=semantics):
                    result = solve(ideal, 'L', REACH_ACCESS, semantics)
                    self.assertFalse(result.winning)
                    self.assertTrue(result.goal_exposed)

    def test_low_level_solvers_need_definable_targets(self):
        ideal = idealize(self.mb).network
        arena = build_belief_arena(ideal, 'L')
        with self.assertRaises(UnsupportedGoalError):
            solve_strict(arena, REACH_ACCESS)
        with self.assertRaises(UnsupportedGoalError):
            solve_fair(ideal, arena, REACH_ACCESS)

    def test_definability(self):
        self.assertTrue(is_observation_definable(self.mb, 'L', {'s15', 's16'}))
        self.assertFalse(is_observation_definable(self.mb, 'L', {'s15'}))
        exposed = expose_goal(self.mb, 'L', {'s15'})
        self.assertEqual(exposed.observe('s15', 'L'), 'accessL_reached')
        self.assertTrue(is_observation_definable(exposed, 'L', {'s15'}))

    def test_safety_goal_of_the_bank(self):
        """Test the attacker stays out by never answering once it has checked the web."""
        avoid = Goal.safety({'s15', 's16'})
        result = solve(self.mb, 'L', avoid, Semantics.STRICT)
        self.assertTrue(result.winning)
        self.assertTrue(verify_strategy(self.mb, result.strategy, avoid, Semantics.STRICT).ok)

    def test_trivial_targets(self):
        net = one_state_network()
        self.assertTrue(solve(net, 'L', Goal.reachability({'s0'}), Semantics.FAIR).winning)
        self.assertTrue(solve(self.mb, 'L', Goal.reachability(self.mb.states), Semantics.STRICT).winning)

    def test_unknown_goal_state(self):
        with self.assertRaises(InputError):
            solve(self.mb, 'L', Goal.reachability({'s99'}), Semantics.FAIR)

    def test_budget(self):
        arena = build_belief_arena(self.mb, 'L')
        with self.assertRaises(BudgetExceededError):
            search_strategies(arena, REACH_ACCESS, Semantics.FAIR, budget=2)


@override_settings(EFFECTIVE_SECURITY=VERIFYING)
class VerificationTestCase(SimpleTestCase):
    """
    Test cases for the independent strategy checker.
    """

    def setUp(self):
        self.mb = load_fixture('Mb').network
        self.strategy = solve(self.mb, 'L', REACH_ACCESS, Semantics.FAIR).strategy

    def swapped(self):
        choices = {
            belief: {'auth_A': 'auth_B', 'auth_B': 'auth_A'}.get(choice, choice)
            for belief, choice in self.strategy.choices.items()
        }
        return Strategy(attacker='L', choices=choices)

    def test_swapped_answers_loop(self):
        """Test answering with the wrong name stutters forever."""
        result = verify_strategy(self.mb, self.swapped(), REACH_ACCESS, Semantics.FAIR)
        self.assertFalse(result.ok)
        self.assertIsNotNone(result.loop_start)
        self.assertEqual(result.path[result.loop_start], result.path[-1])
        self.assertIn(self.mb.observe(result.path[-1], 'L'), {'MNameA', 'MNameB'})
        self.assertEqual(execute(self.mb, self.mb.initial, result.moves), result.path[-1])

    def test_strict_counterexample_replays(self):
        result = verify_strategy(self.mb, self.strategy, REACH_ACCESS, Semantics.STRICT)
        self.assertFalse(result.ok)
        self.assertEqual(execute(self.mb, self.mb.initial, result.moves), result.path[-1])

    def test_everything_is_target(self):
        strategy = Strategy(attacker='L', choices={})
        self.assertTrue(verify_strategy(self.mb, strategy, Goal.reachability(self.mb.states), 'fair').ok)

    def test_uncovered_belief(self):
        with self.assertRaises(UncoveredBeliefError) as caught:
            verify_strategy(self.mb, Strategy(attacker='L', choices={}), REACH_ACCESS, 'fair')
        self.assertEqual(caught.exception.belief, {'s0', 's1', 's2'})

    def test_unknown_belief(self):
        strategy = Strategy(attacker='L', choices={frozenset({'s99'}): 'chkWeb'})
        with self.assertRaises(InputError):
            verify_strategy(self.mb, strategy, REACH_ACCESS, 'fair')

    def test_unknown_action(self):
        strategy = Strategy(attacker='L', choices={frozenset({'s0', 's1', 's2'}): 'dance'})
        with self.assertRaises(InputError):
            verify_strategy(self.mb, strategy, REACH_ACCESS, 'fair')


@override_settings(EFFECTIVE_SECURITY=VERIFYING)
class SolverPropertyTestCase(SimpleTestCase):
    """
    Property tests of the solvers on small random networks.
    """

    @SOLVER_SETTINGS
    @given(st.data())
    def test_strict_win_implies_fair_win(self, data):
        net = data.draw(SMALL_NETS)
        goal = data.draw(goals_for(net))
        strict = solve_or_skip(net, goal, Semantics.STRICT)
        fair = solve_or_skip(net, goal, Semantics.FAIR)
        if strict.winning:
            self.assertTrue(fair.winning)

    @SOLVER_SETTINGS
    @given(st.data())
    def test_winning_strategies_verify(self, data):
        net = data.draw(SMALL_NETS)
        goal = data.draw(goals_for(net))
        for semantics in Semantics.values:
            result = solve_or_skip(net, goal, semantics)
            if result.winning:
                checked = verify_strategy(result.arena.network, result.strategy, goal, semantics)
                self.assertTrue(checked.ok, checked.reason)

    @SOLVER_SETTINGS
    @given(st.data())
    def test_exhaustive_positional_strategies(self, data):
        """Test no belief-positional strategy verifies where the solvers find no winner."""
        net = data.draw(SMALL_NETS)
        goal = data.draw(goals_for(net))
        semantics = data.draw(st.sampled_from(Semantics.values))
        assume(goal.is_safety or is_observation_definable(net, 'L0', goal.states))
        arena = build_belief_arena(net, 'L0')
        assume(len(arena.nodes) <= 4)
        if solve_or_skip(net, goal, semantics).winning:
            return

        for picks in product(*(arena.choices[node.index] for node in arena.nodes)):
            strategy = Strategy(
                attacker='L0', choices={node.belief: pick for node, pick in zip(arena.nodes, picks)},
            )
            self.assertFalse(verify_strategy(net, strategy, goal, semantics).ok)

    @SOLVER_SETTINGS
    @given(st.data())
    def test_set_valued_strategies_add_no_wins(self, data):
        """Test letting the scheduler pick among several attacker actions never wins where the solvers lose."""
        net = data.draw(SMALL_NETS)
        goal = data.draw(goals_for(net))
        semantics = data.draw(st.sampled_from(Semantics.values))
        assume(goal.is_safety or is_observation_definable(net, 'L0', goal.states))
        if solve_or_skip(net, goal, semantics).winning:
            return

        checked = 0

        def options(belief):
            actions = sorted(set().union(*(available_actions(net, state, 'L0') for state in belief)))
            for size in range(len(actions) + 1):
                for picked in combinations(actions, size):
                    if not picked:
                        yield ABSTAIN
                    else:
                        yield picked[0] if size == 1 else frozenset(picked)

        def winner_exists(choices):
            nonlocal checked
            checked += 1
            assume(checked <= 2000)
            try:
                return verify_strategy(net, Strategy(attacker='L0', choices=dict(choices)), goal, semantics).ok
            except UncoveredBeliefError as exc:
                belief = frozenset(exc.belief)
            return any(winner_exists({**choices, belief: choice}) for choice in options(belief))

        self.assertFalse(winner_exists({}))

    @SOLVER_SETTINGS
    @given(st.data())
    def test_search_is_deterministic(self, data):
        net = data.draw(SMALL_NETS)
        goal = data.draw(goals_for(net))
        first = solve_or_skip(net, goal, Semantics.FAIR)
        second = solve_or_skip(net, goal, Semantics.FAIR)
        self.assertEqual(first.winning, second.winning)
        self.assertEqual(first.strategy, second.strategy)


@override_settings(EFFECTIVE_SECURITY=VERIFYING)
class ExportTestCase(SimpleTestCase):
    """
    Test cases for DOT and JSON output of games.
    """

    def setUp(self):
        self.mb = load_fixture('Mb').network
        self.result = solve(self.mb, 'L', REACH_ACCESS, Semantics.FAIR)

    def test_arena_graph(self):
        graph = arena_to_graph(self.result.arena)
        self.assertEqual(graph.number_of_nodes(), len(self.result.arena.nodes))

    def test_product_graph(self):
        graph = product_to_graph(self.result.arena, self.result.strategy, REACH_ACCESS, Semantics.FAIR)
        self.assertIn('s0_n0', graph)
        self.assertTrue(any(node.startswith('s15_') for node in graph))

    def test_write_dot(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'arena.dot'
            write_dot(arena_to_graph(self.result.arena), str(path))
            self.assertIn('digraph', path.read_text())

    def test_strategy_json(self):
        data = StrategySerializer(self.result.strategy).data
        self.assertEqual(data['attacker'], 'L')
        rows = {row['history']: row['action'] for row in data['choices']}
        self.assertEqual(rows['init>noObs'], 'chkWeb')
        self.assertIsNone(rows['init'])

    def test_result_json(self):
        data = SolveResultSerializer(self.result).data
        self.assertTrue(data['winning'])
        self.assertEqual(data['semantics'], 'fair')
        self.assertFalse(data['goalExposed'])
