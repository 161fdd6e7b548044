"""
Parser for the `.tn` model language.

    network <Name>
    agents { <name> : high|low ... }
    actions { <name> ... }
    observations { <name> ... }
    state <name> { <agent> = <obs> ... }
    init <state>
    <src> -> <dst> on <agent>.<action>
    goal <Name> safety avoid { <state> ... }
    goal <Name> reachability reach { <state> ... }

`#` starts a comment running to the end of the line. Unified observation
classes are single tokens of the form `{a+b+c}`.
"""
import logging
import re
from dataclasses import dataclass

from apps.core.exceptions import ParseError
from apps.core.models import Goal, GoalKind, Role, TransitionNetwork
from apps.core.validation import validate_network

from .models import ModelDocument

logger = logging.getLogger(__name__)

IDENT = 'identifier'
CLASS = 'class'
EOF = 'end of input'

_TOKEN_PATTERNS = [
    ('comment', r'\#[^\r\n]*'),
    ('newline', r'\r\n|\r|\n'),
    ('space', r'[ \t\f\v]+'),
    (CLASS, r'\{[A-Za-z0-9_]+(?:\+[A-Za-z0-9_]+)+\}'),
    ('->', r'->'),
    ('{', r'\{'),
    ('}', r'\}'),
    (':', r':'),
    ('=', r'='),
    ('.', r'\.'),
    (IDENT, r'[A-Za-z0-9_]+'),
]
_TOKEN_RE = re.compile('|'.join(f'(?P<t{index}>{pattern})' for index, (_, pattern) in enumerate(_TOKEN_PATTERNS)))

STATEMENT_KEYWORDS = ('agents', 'actions', 'observations', 'state', 'init', 'goal')


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def describe(self):
        if self.kind == EOF:
            return EOF
        return f"'{self.text}'"


def tokenize(text):
    """Split `text` into tokens, dropping whitespace and comments."""
    tokens = []
    line, line_start, position = 1, 0, 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise ParseError(
                f"unexpected character {text[position]!r}", line, position - line_start + 1,
            )
        kind = _TOKEN_PATTERNS[int(match.lastgroup[1:])][0]
        if kind == 'newline':
            line, line_start = line + 1, match.end()
        elif kind not in ('comment', 'space'):
            tokens.append(Token(kind, match.group(), line, position - line_start + 1))
        position = match.end()
    tokens.append(Token(EOF, '', line, position - line_start + 1))
    return tokens


class _Parser:
    """Recursive-descent parser collecting declarations, then resolving references"""

    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0
        self.name = None
        self.agents = {}
        self.actions = {}
        self.observations = {}
        self.states = {}
        self.state_entries = {}
        self.initial = None
        self.transitions = []
        self.goals = {}

    # -- token helpers -------------------------------------------------

    @property
    def current(self):
        return self.tokens[self.index]

    def peek(self, offset=1):
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def error(self, expected, token=None):
        token = token or self.current
        expected = tuple(expected)
        message = f"expected {' or '.join(expected)}, found {token.describe()}"
        return ParseError(message, token.line, token.column, expected)

    def expect(self, kind, text=None):
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            raise self.error([f"'{text}'" if text else (f"'{kind}'" if kind not in (IDENT, CLASS) else kind)])
        self.index += 1
        return token

    def at_keyword(self, word):
        return self.current.kind == IDENT and self.current.text == word

    def declare(self, table, token, what):
        if token.text in table:
            raise ParseError(f"duplicate {what} '{token.text}'", token.line, token.column)
        table[token.text] = token

    # -- grammar -------------------------------------------------------

    def parse(self):
        self.expect(IDENT, 'network')
        self.name = self.expect(IDENT).text
        while self.current.kind != EOF:
            self.statement()
        return self.resolve()

    def statement(self):
        token = self.current
        is_keyword = token.kind == IDENT and token.text in STATEMENT_KEYWORDS
        if is_keyword and self.peek().kind != '->':
            getattr(self, f"parse_{token.text}")()
        elif token.kind == IDENT:
            self.parse_transition()
        else:
            raise self.error([f"'{word}'" for word in STATEMENT_KEYWORDS] + ['transition'])

    def block(self, item):
        self.expect('{')
        while self.current.kind != '}':
            if self.current.kind == EOF:
                raise self.error(["'}'"])
            item()
        self.expect('}')

    def parse_agents(self):
        self.expect(IDENT, 'agents')

        def agent():
            name = self.expect(IDENT)
            self.expect(':')
            role = self.current
            if role.kind != IDENT or role.text not in Role.values:
                raise self.error(["'high'", "'low'"])
            self.index += 1
            self.declare(self.agents, name, 'agent')
            self.agents[name.text] = (name, Role(role.text))

        self.block(agent)

    def parse_actions(self):
        self.expect(IDENT, 'actions')
        self.block(lambda: self.declare(self.actions, self.expect(IDENT), 'action'))

    def label(self):
        if self.current.kind == CLASS:
            return self.expect(CLASS)
        if self.current.kind == IDENT:
            return self.expect(IDENT)
        raise self.error([IDENT, CLASS])

    def parse_observations(self):
        self.expect(IDENT, 'observations')
        self.block(lambda: self.declare(self.observations, self.label(), 'observation'))

    def parse_state(self):
        self.expect(IDENT, 'state')
        name = self.expect(IDENT)
        self.declare(self.states, name, 'state')
        entries = {}

        def entry():
            agent = self.expect(IDENT)
            self.expect('=')
            label = self.label()
            if agent.text in entries:
                raise ParseError(
                    f"duplicate observation for agent '{agent.text}' in state '{name.text}'",
                    agent.line, agent.column,
                )
            entries[agent.text] = (agent, label)

        self.block(entry)
        self.state_entries[name.text] = entries

    def parse_init(self):
        keyword = self.expect(IDENT, 'init')
        if self.initial is not None:
            raise ParseError("duplicate 'init' declaration", keyword.line, keyword.column)
        self.initial = self.expect(IDENT)

    def parse_goal(self):
        self.expect(IDENT, 'goal')
        name = self.expect(IDENT)
        kind_token = self.current
        if self.at_keyword(GoalKind.SAFETY):
            self.index += 1
            self.expect(IDENT, 'avoid')
        elif self.at_keyword(GoalKind.REACHABILITY):
            self.index += 1
            self.expect(IDENT, 'reach')
        else:
            raise self.error(["'safety'", "'reachability'"])
        members = []
        self.block(lambda: members.append(self.expect(IDENT)))
        if name.text in self.goals:
            raise ParseError(f"duplicate goal '{name.text}'", name.line, name.column)
        self.goals[name.text] = (name, GoalKind(kind_token.text), members)

    def parse_transition(self):
        source = self.expect(IDENT)
        self.expect('->')
        target = self.expect(IDENT)
        self.expect(IDENT, 'on')
        agent = self.expect(IDENT)
        self.expect('.')
        action = self.expect(IDENT)
        self.transitions.append((source, target, agent, action))

    # -- reference resolution ------------------------------------------

    def require(self, table, token, what):
        if token.text not in table:
            raise ParseError(f"undeclared {what} '{token.text}'", token.line, token.column)

    def resolve(self):
        end = self.current
        if self.initial is None:
            raise ParseError("missing 'init' declaration", end.line, end.column, ("'init'",))
        self.require(self.states, self.initial, 'state')

        obs = {}
        for state, entries in self.state_entries.items():
            for agent, label in entries.values():
                self.require(self.agents, agent, 'agent')
                self.require(self.observations, label, 'observation')
                obs[(state, agent.text)] = label.text
            for agent in self.agents:
                if agent not in entries:
                    token = self.states[state]
                    raise ParseError(
                        f"state '{state}' lacks an observation for agent '{agent}'",
                        token.line, token.column,
                    )

        transitions = {}
        for source, target, agent, action in self.transitions:
            self.require(self.states, source, 'state')
            self.require(self.states, target, 'state')
            self.require(self.agents, agent, 'agent')
            self.require(self.actions, action, 'action')
            key = (source.text, agent.text, action.text)
            if key in transitions:
                raise ParseError(
                    f"duplicate transition key ({', '.join(key)})", source.line, source.column,
                )
            transitions[key] = target.text

        goals = {}
        for goal_name, (token, kind, members) in self.goals.items():
            for member in members:
                self.require(self.states, member, 'state')
            if kind == GoalKind.REACHABILITY and not members:
                raise ParseError(
                    f"reachability goal '{goal_name}' needs at least one target state",
                    token.line, token.column,
                )
            goals[goal_name] = Goal(kind, {member.text for member in members})

        roles = {name: role for name, (_token, role) in self.agents.items()}
        network = TransitionNetwork(
            name=self.name,
            states=set(self.states),
            initial=self.initial.text,
            high={name for name, role in roles.items() if role == Role.HIGH},
            low={name for name, role in roles.items() if role == Role.LOW},
            actions=set(self.actions),
            observations=set(self.observations),
            obs=obs,
            transitions=transitions,
        )
        report = validate_network(network)
        for violation in report.violations:
            logger.warning(f"{network.name}: {violation.message}")
        return ModelDocument(
            network=network,
            goals=goals,
            warnings=tuple(violation.message for violation in report.violations),
        )


def parse_model(text):
    """Parse `.tn` source (str or UTF-8 bytes) into a ModelDocument."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode('utf-8')
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8 ({exc.reason})", 1, exc.start + 1) from None
    return _Parser(tokenize(text)).parse()
