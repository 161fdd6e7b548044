import json

from django.test import SimpleTestCase, override_settings
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from apps.core.exceptions import BudgetExceededError, InputError
from apps.core.models import Goal, GoalKind, TransitionNetwork
from apps.core.testing import goals_for, transition_networks
from apps.games.models import ABSTAIN, Semantics
from apps.games.solvers import expose_goal, solve
from apps.games.verification import verify_strategy
from apps.idealization.unification import idealize
from apps.modellang.loaders import load_fixture

from .analysis import (
    HYPOTHESIS_NONE, HYPOTHESIS_SAFETY, HYPOTHESIS_TOTAL, check_ideal_dominance, compare,
    dominance_hypothesis, effective_info_security, effective_security, negate_goal,
)
from .models import ComparisonVerdict, ESVerdict
from .serializers import ComparisonSerializer, InfoSecReportSerializer, render_json

VERIFYING = {'VERIFY_WITNESSES': True}
SMALL_NETS = transition_networks(max_states=4, max_actions=2, max_labels=2, max_low=1)
ANALYSIS_SETTINGS = settings(
    max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


def secure(flag, name='N'):
    goal = Goal.safety({'s0'})
    strategy = None if flag else object()
    return ESVerdict(
        effectively_secure=flag, model=name, goal=goal, semantics=Semantics.FAIR,
        attack_strategy=strategy,
    )


class GoalTestCase(SimpleTestCase):

    def test_negate_goal(self):
        goal = Goal.safety({'s15', 's16'})
        negated = negate_goal(goal)
        self.assertEqual(negated.kind, GoalKind.REACHABILITY)
        self.assertEqual(negated.states, goal.states)
        self.assertEqual(negate_goal(negated), goal)

    def test_unknown_goal_states(self):
        with self.assertRaises(InputError):
            effective_security(load_fixture('Mb').network, 'L', Goal.safety({'s99'}))


class ComparisonVerdictTestCase(SimpleTestCase):
    """
    Test cases for the relations derived from two verdicts.
    """

    def test_relations(self):
        comparison = ComparisonVerdict(first=secure(False), second=secure(True))
        self.assertTrue(comparison.a_preceq_b)
        self.assertFalse(comparison.b_preceq_a)
        self.assertTrue(comparison.a_less_b)
        self.assertFalse(comparison.b_less_a)
        self.assertFalse(comparison.equivalent)

    def test_all_combinations(self):
        for first in (True, False):
            for second in (True, False):
                with self.subTest(first=first, second=second):
                    comparison = ComparisonVerdict(first=secure(first), second=secure(second))
                    self.assertEqual(
                        comparison.equivalent, comparison.a_preceq_b and comparison.b_preceq_a,
                    )
                    self.assertEqual(
                        comparison.a_less_b, comparison.a_preceq_b and not comparison.b_preceq_a,
                    )
                    self.assertTrue(comparison.a_preceq_b or comparison.b_preceq_a)

    def test_strategy_required_when_insecure(self):
        with self.assertRaises(ValueError):
            ESVerdict(
                effectively_secure=False, model='N', goal=Goal.safety({'s0'}),
                semantics=Semantics.FAIR,
            )


@override_settings(EFFECTIVE_SECURITY=VERIFYING)
class BankingTestCase(SimpleTestCase):
    """
    Test cases for effective security of the two banking models.
    """

    def setUp(self):
        self.ma_doc = load_fixture('Ma')
        self.mb_doc = load_fixture('Mb')
        self.ma = self.ma_doc.network
        self.mb = self.mb_doc.network
        self.goal = self.mb_doc.goal('Gsys')

    def test_es_verdicts(self):
        """Test publishing the mother's name makes M_b insecure while M_a holds."""
        ma = effective_security(self.ma, 'L', self.ma_doc.goal('Gsys'))
        mb = effective_security(self.mb, 'L', self.goal)
        self.assertTrue(ma.effectively_secure)
        self.assertFalse(mb.effectively_secure)
        self.assertEqual(mb.semantics, Semantics.FAIR)
        self.assertTrue(mb.strict_secure)
        self.assertFalse(mb.goal_exposed)

    def test_strict_semantics(self):
        for net in (self.ma, self.mb):
            with self.subTest(net=net.name):
                verdict = effective_security(net, 'L', self.goal, Semantics.STRICT)
                self.assertTrue(verdict.effectively_secure)
                self.assertTrue(verdict.strict_secure)

    def test_attack_strategy(self):
        """Test the attack strategy on M_b forces access under fair scheduling."""
        verdict = effective_security(self.mb, 'L', self.goal)
        plays = {history: choice for history, _belief, choice in verdict.attack_strategy.items()}
        self.assertEqual(plays[('init',)], ABSTAIN)
        self.assertEqual(plays[('init', 'noObs')], 'chkWeb')
        checked = verify_strategy(self.mb, verdict.attack_strategy, negate_goal(self.goal), Semantics.FAIR)
        self.assertTrue(checked.ok)

    def test_mb_strictly_less_secure_than_ma(self):
        comparison = compare(self.mb, self.ma, 'L', self.goal, goal_b=self.ma_doc.goal('Gsys'))
        self.assertTrue(comparison.a_less_b)
        self.assertTrue(comparison.a_preceq_b)
        self.assertFalse(comparison.b_preceq_a)
        self.assertFalse(comparison.equivalent)

    def test_compare_rejects_foreign_goal(self):
        with self.assertRaises(InputError):
            compare(self.mb, self.ma, 'L', self.goal, goal_b=Goal.safety({'s42'}))

    def test_effective_information_security(self):
        """Test M_a matches its idealized variant and M_b does not."""
        ma = effective_info_security(self.ma, 'L', self.goal)
        self.assertTrue(ma.secure)
        self.assertTrue(ma.es_ideal.effectively_secure)
        self.assertTrue(ma.es_ideal.goal_exposed)
        self.assertEqual(set(ma.timings), {'idealize', 'es', 'esIdeal'})

        mb = effective_info_security(self.mb, 'L', self.goal)
        self.assertFalse(mb.secure)
        self.assertTrue(mb.comparison.a_less_b)
        self.assertIsNotNone(mb.es.attack_strategy)
        self.assertIsNone(mb.es_ideal.attack_strategy)

    def test_dominance_on_fixtures(self):
        for net in (self.ma, self.mb):
            for semantics in Semantics.values:
                with self.subTest(net=net.name, semantics=semantics):
                    report = check_ideal_dominance(net, 'L', self.goal, semantics)
                    self.assertEqual(report.hypothesis, HYPOTHESIS_SAFETY)
                    self.assertTrue(report.hypotheses_met)
                    self.assertTrue(report.dominated)

    def test_dominance_hypothesis(self):
        self.assertEqual(dominance_hypothesis(self.mb, self.goal), HYPOTHESIS_SAFETY)
        self.assertEqual(dominance_hypothesis(self.mb, negate_goal(self.goal)), HYPOTHESIS_NONE)

    def test_report_json(self):
        report = effective_info_security(self.mb, 'L', self.goal)
        data = InfoSecReportSerializer(report, context={'goal_name': 'Gsys'}).data
        self.assertEqual(data['model'], 'Mb')
        self.assertEqual(data['idealizedModel'], 'Ideal_Mb')
        self.assertEqual(data['goal'], {'name': 'Gsys', 'kind': 'safety', 'states': ['s15', 's16']})
        self.assertEqual(data['semantics'], 'fair')
        self.assertIn(['MNameA', 'MNameB', 'accessL', 'init', 'noObs'], data['unification'])
        self.assertFalse(data['verdict']['effectivelyInformationSecure'])
        self.assertTrue(data['relation']['modelLessIdeal'])
        self.assertIsNone(data['strategies']['idealizedModel'])
        self.assertEqual(data['strategies']['model']['attacker'], 'L')
        self.assertIs(json.loads(render_json(data))['verdict']['effectivelyInformationSecure'], False)

    def test_comparison_json(self):
        comparison = compare(self.mb, self.ma, 'L', self.goal, goal_b=self.ma_doc.goal('Gsys'))
        data = ComparisonSerializer(comparison, context={'goal_name': 'Gsys'}).data
        self.assertEqual(data['first']['model'], 'Mb')
        self.assertFalse(data['first']['effectivelySecure'])
        self.assertTrue(data['second']['effectivelySecure'])
        self.assertTrue(data['relation']['firstLessSecond'])


@override_settings(EFFECTIVE_SECURITY=VERIFYING)
class EffectiveSecurityPropertyTestCase(SimpleTestCase):
    """
    Property tests of the analyses on small random networks.
    """

    def analyse(self, net, goal, semantics):
        try:
            return effective_security(net, 'L0', goal, semantics, budget=20000)
        except BudgetExceededError:
            assume(False)

    @ANALYSIS_SETTINGS
    @given(st.data())
    def test_attack_strategies_force_the_negated_goal(self, data):
        net = data.draw(SMALL_NETS)
        goal = data.draw(goals_for(net))
        semantics = data.draw(st.sampled_from(Semantics.values))
        verdict = self.analyse(net, goal, semantics)
        if verdict.effectively_secure:
            return
        played_on = expose_goal(net, 'L0', goal.states) if verdict.goal_exposed else net
        checked = verify_strategy(played_on, verdict.attack_strategy, negate_goal(goal), semantics)
        self.assertTrue(checked.ok, checked.reason)

    @ANALYSIS_SETTINGS
    @given(st.data())
    def test_fair_security_implies_strict_security(self, data):
        net = data.draw(SMALL_NETS)
        goal = data.draw(goals_for(net))
        fair = self.analyse(net, goal, Semantics.FAIR)
        strict = self.analyse(net, goal, Semantics.STRICT)
        self.assertEqual(fair.strict_secure, strict.effectively_secure)
        if fair.effectively_secure:
            self.assertTrue(strict.effectively_secure)

    @ANALYSIS_SETTINGS
    @given(st.data())
    def test_idealized_network_is_its_own_ideal(self, data):
        """Test a noninterferent total network is effectively information-secure."""
        net = data.draw(transition_networks(max_states=4, max_actions=2, max_labels=2, max_low=1, total=True))
        ideal = idealize(net).network
        goal = data.draw(goals_for(ideal))
        try:
            report = effective_info_security(ideal, 'L0', goal, budget=20000)
        except BudgetExceededError:
            assume(False)
        self.assertTrue(report.idealization.unification.is_identity())
        self.assertTrue(report.secure)

    @ANALYSIS_SETTINGS
    @given(transition_networks(max_states=4, max_actions=2, max_labels=2, max_low=1, total=True))
    def test_total_networks_meet_the_hypotheses(self, net):
        goal = Goal.reachability(net.states)
        self.assertEqual(dominance_hypothesis(net, goal), HYPOTHESIS_TOTAL)

    @ANALYSIS_SETTINGS
    @given(st.data())
    def test_networks_dominated_by_their_ideal(self, data):
        """Test coarsening the attacker's view never helps it when the hypotheses hold."""
        net = data.draw(SMALL_NETS)
        goal = data.draw(goals_for(net))
        assume(dominance_hypothesis(net, goal) != HYPOTHESIS_NONE)
        for semantics in Semantics.values:
            try:
                report = check_ideal_dominance(net, 'L0', goal, semantics, budget=20000)
            except BudgetExceededError:
                continue
            self.assertTrue(report.hypotheses_met)
            self.assertTrue(report.dominated, semantics)

    @ANALYSIS_SETTINGS
    @given(st.data())
    def test_duality(self, data):
        """Test security for a goal is exactly losing the game for its complement."""
        net = data.draw(SMALL_NETS)
        goal = data.draw(goals_for(net))
        semantics = data.draw(st.sampled_from(Semantics.values))
        try:
            attack = solve(net, 'L0', goal, semantics, budget=20000)
        except BudgetExceededError:
            assume(False)
        verdict = self.analyse(net, negate_goal(goal), semantics)
        self.assertEqual(verdict.effectively_secure, not attack.winning)


class UnreachableGoalTestCase(SimpleTestCase):

    def test_unreachable_avoid_set(self):
        obs = {('s0', 'H'): 'h', ('s1', 'H'): 'h', ('s0', 'L'): 'x', ('s1', 'L'): 'y'}
        net = TransitionNetwork(
            name='Island', states={'s0', 's1'}, initial='s0', high={'H'}, low={'L'},
            actions={'a'}, observations={'h', 'x', 'y'}, obs=obs,
            transitions={('s0', 'L', 'a'): 's0'},
        )
        for semantics in Semantics.values:
            with self.subTest(semantics=semantics):
                self.assertTrue(effective_security(net, 'L', Goal.safety({'s1'}), semantics).effectively_secure)
