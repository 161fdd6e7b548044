"""
Shared plumbing for the analysis commands: loading models, resolving goals
and attackers, and the exit-code contract.

Exit codes are listed in `apps.management.cli`.
"""
import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from apps.core.conf import effsec_settings
from apps.core.exceptions import BudgetExceededError, EffsecError, InputError
from apps.effsec.serializers import render_json
from apps.games.models import Semantics
from apps.modellang.loaders import load_document

from .cli import EXIT_BUDGET, EXIT_HOLDS, EXIT_INPUT, EXIT_INTERNAL, EXIT_VIOLATED

logger = logging.getLogger(__name__)


class AnalysisCommand(BaseCommand):
    requires_system_checks = []
    exit_code = EXIT_HOLDS

    def add_json_argument(self, parser):
        parser.add_argument(
            '--json',
            action='store_true',
            help='Emit a single JSON document on standard output'
        )

    def add_game_arguments(self, parser):
        parser.add_argument(
            '--goal',
            type=str,
            help='Name of a goal declared in the model (optional if it declares one)'
        )
        parser.add_argument(
            '--attacker',
            type=str,
            help='Low agent playing the attacker (optional if there is only one)'
        )
        parser.add_argument(
            '--semantics',
            choices=Semantics.values,
            default=None,
            help='Scheduling semantics (default from settings, normally fair)'
        )
        parser.add_argument(
            '--budget',
            type=int,
            default=None,
            help='Cap on the number of strategy-search steps'
        )

    def execute(self, *args, **options):
        self.exit_code = EXIT_HOLDS
        try:
            return super().execute(*args, **options)
        except BudgetExceededError as exc:
            raise CommandError(str(exc), returncode=EXIT_BUDGET)
        except InputError as exc:
            raise CommandError(str(exc), returncode=EXIT_INPUT)
        except EffsecError as exc:
            logger.error(f"Analysis failed: {exc}")
            raise CommandError(str(exc), returncode=EXIT_INTERNAL)

    def run_from_argv(self, argv):
        super().run_from_argv(argv)
        if self.exit_code:
            sys.exit(self.exit_code)

    def verdict(self, holds):
        self.exit_code = EXIT_HOLDS if holds else EXIT_VIOLATED

    def load(self, path):
        return load_document(path)

    def resolve_goal(self, doc, name):
        if name:
            return name, doc.goal(name)
        if len(doc.goals) == 1:
            return next(iter(doc.goals.items()))
        raise InputError(f"{doc.network.name} declares {len(doc.goals)} goals; pick one with --goal")

    def resolve_attacker(self, net, name):
        if name:
            if name not in net.low:
                raise InputError(f"Attacker '{name}' is not a Low agent of {net.name}")
            return name
        if len(net.low) == 1:
            return next(iter(net.low))
        raise InputError(f"{net.name} has {len(net.low)} Low agents; pick one with --attacker")

    def resolve_semantics(self, value):
        return Semantics(value or effsec_settings('DEFAULT_SEMANTICS'))

    def emit_json(self, data):
        self.stdout.write(render_json(data))

    def yes_no(self, flag):
        return self.style.SUCCESS('yes') if flag else self.style.ERROR('no')
