"""
Exceptions shared by all analysis apps.
"""


class EffsecError(Exception):
    """Base class for analysis failures"""


class InputError(EffsecError, ValueError):
    """Malformed input: unknown identifiers, ill-formed sequences or partitions"""


class ParseError(InputError):
    """Syntax or reference error in a `.tn` document, with its position"""

    def __init__(self, message, line=1, column=1, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        super().__init__(str(self))

    def __str__(self):
        text = f"{self.line}:{self.column}: {self.message}"
        if self.expected:
            text += f" (expected one of: {', '.join(sorted(self.expected))})"
        return text


class UnsupportedGoalError(InputError):
    """Reachability target the attacker cannot tell apart from the rest"""


class BudgetExceededError(EffsecError):
    """An exhaustive search would exceed its configured bound"""

    def __init__(self, what, bound):
        self.what = what
        self.bound = bound
        super().__init__(f"{what} exceeds the configured budget of {bound}")


class ConsistencyError(EffsecError):
    """Two independent computations of the same verdict disagree"""
