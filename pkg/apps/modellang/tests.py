from django.test import SimpleTestCase
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from apps.core.exceptions import InputError, ParseError
from apps.core.models import Goal, TransitionNetwork
from apps.core.testing import transition_networks
from apps.idealization.unification import idealize

from .loaders import FIXTURES_DIR, load_document, load_fixture
from .models import ModelDocument
from .parser import parse_model
from .writer import serialize_model

HEADER = """
network T
agents { H : high  L : low }
actions { a b }
observations { x y }
state s0 { H = x  L = x }
state s1 { H = y  L = y }
state s2 { H = y  L = y }
init s0
"""


class FixtureParsingTestCase(SimpleTestCase):
    """
    Test cases for the shipped banking fixtures.
    """

    def test_mb_structure(self):
        """Test M_b has 17 states, 3 agents and its system goal."""
        doc = load_fixture('Mb')
        net = doc.network
        self.assertEqual(net.name, 'Mb')
        self.assertEqual(net.states, {f's{index}' for index in range(17)})
        self.assertEqual(net.agents, {'Env', 'H', 'L'})
        self.assertEqual(net.low, {'L'})
        self.assertEqual(doc.goal('Gsys'), Goal.safety({'s15', 's16'}))
        self.assertEqual(doc.warnings, ())

    def test_ma_labels(self):
        """Test M_a reveals the grandmother's name after checking the web."""
        net = load_fixture('Ma').network
        self.assertEqual(net.observe('s11', 'L'), 'GNameC')
        self.assertEqual(net.observe('s12', 'L'), 'GNameD')

    def test_unknown_goal(self):
        with self.assertRaises(InputError):
            load_fixture('Mb').goal('Nope')

    def test_missing_file(self):
        with self.assertRaises(InputError):
            load_document('/nonexistent/model.tn')

    def test_line_endings(self):
        """Test CR-only and CRLF sources parse like the LF original."""
        source = (FIXTURES_DIR / 'Mb.tn').read_bytes().decode('utf-8')
        expected = serialize_model(parse_model(source))
        for newline in ('\r', '\r\n'):
            with self.subTest(newline=repr(newline)):
                doc = parse_model(source.replace('\n', newline))
                self.assertEqual(serialize_model(doc), expected)


class ParseErrorTestCase(SimpleTestCase):
    """
    Test cases for positioned parse errors.
    """

    def test_empty_input(self):
        with self.assertRaises(ParseError) as caught:
            parse_model('')
        self.assertIn("expected 'network'", str(caught.exception))
        self.assertEqual(caught.exception.line, 1)

    def test_duplicate_transition_key(self):
        """Test two targets for one key are rejected by name."""
        text = HEADER + "s0 -> s1 on H.a\ns0 -> s2 on H.a\n"
        with self.assertRaises(ParseError) as caught:
            parse_model(text)
        self.assertIn('duplicate transition key (s0, H, a)', str(caught.exception))
        self.assertEqual(caught.exception.line, 11)

    def test_undeclared_references(self):
        """Test undeclared states, agents and actions are parse errors."""
        for line in ('s0 -> s9 on H.a', 's0 -> s1 on X.a', 's0 -> s1 on H.zz'):
            with self.subTest(line=line):
                with self.assertRaises(ParseError):
                    parse_model(HEADER + line + '\n')

    def test_missing_observation(self):
        text = HEADER.replace('state s2 { H = y  L = y }', 'state s2 { H = y }')
        with self.assertRaises(ParseError) as caught:
            parse_model(text)
        self.assertIn("lacks an observation for agent 'L'", str(caught.exception))

    def test_expected_tokens(self):
        with self.assertRaises(ParseError) as caught:
            parse_model('network T\nagents { H : medium }\n')
        self.assertEqual(caught.exception.expected, {"'high'", "'low'"})
        self.assertEqual((caught.exception.line, caught.exception.column), (2, 14))

    def test_positions_with_carriage_returns(self):
        with self.assertRaises(ParseError) as caught:
            parse_model('network T # name\ragents { H : medium }\r')
        self.assertEqual((caught.exception.line, caught.exception.column), (2, 14))

    def test_empty_reachability_goal(self):
        with self.assertRaises(ParseError):
            parse_model(HEADER + 'goal G reachability reach { }\n')

    def test_awareness_breach_is_a_warning(self):
        """Test availability-awareness violations are attached, not raised."""
        doc = parse_model(HEADER + 's1 -> s0 on L.a\n')
        self.assertEqual(len(doc.warnings), 1)
        self.assertIn('different available actions', doc.warnings[0])

    @settings(max_examples=200, deadline=None)
    @given(st.binary(max_size=200))
    def test_fuzz_bytes(self, data):
        """Test arbitrary bytes yield a document or a positioned error."""
        try:
            doc = parse_model(data)
        except ParseError as error:
            self.assertGreaterEqual(error.line, 1)
            self.assertGreaterEqual(error.column, 1)
        else:
            self.assertIsInstance(doc, ModelDocument)

    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.lists(
        st.sampled_from(['network', 'T', 'agents', '{', '}', 'H', ':', 'high', 'low', 'state',
                         's0', '=', 'x', 'init', '->', 'on', '.', 'a', 'goal', 'safety',
                         'avoid', 'actions', 'observations', '\n', '#']),
        max_size=40,
    ))
    def test_fuzz_tokens(self, words):
        try:
            parse_model(' '.join(words))
        except ParseError:
            pass


class RoundTripTestCase(SimpleTestCase):
    """
    Test cases for canonical serialization.
    """

    def assertRoundTrip(self, doc):
        again = parse_model(serialize_model(doc))
        self.assertEqual(again, doc)
        self.assertEqual(serialize_model(again), serialize_model(doc))

    def test_fixture_round_trip(self):
        self.assertRoundTrip(load_fixture('Ma'))
        self.assertRoundTrip(load_fixture('Mb'))

    def test_idealized_round_trip(self):
        """Test unified class labels survive as single tokens."""
        doc = load_fixture('Mb')
        ideal = ModelDocument(network=idealize(doc.network).network, goals=doc.goals)
        self.assertIn('{MNameA+MNameB+', serialize_model(ideal))
        self.assertRoundTrip(ideal)

    def test_single_state(self):
        net = TransitionNetwork(
            name='One', states={'s0'}, initial='s0', high={'H'}, low={'L'}, actions={'a'},
            observations={'o'}, obs={('s0', 'H'): 'o', ('s0', 'L'): 'o'},
        )
        self.assertRoundTrip(ModelDocument(network=net))

    @settings(max_examples=100, deadline=None)
    @given(transition_networks())
    def test_random_round_trip(self, net):
        goals = {'G': Goal.safety({net.initial}), 'R': Goal.reachability(net.states)}
        self.assertRoundTrip(ModelDocument(network=net, goals=goals))
