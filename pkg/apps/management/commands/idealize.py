"""
Django management command to build the idealized (noninterferent) variant of a model.
"""
from pathlib import Path

from apps.core.exceptions import InputError
from apps.idealization.minimality import check_minimality
from apps.idealization.unification import high_awareness_warnings, idealize
from apps.management.base import AnalysisCommand
from apps.modellang.models import ModelDocument
from apps.modellang.writer import serialize_model
from apps.noninterference.checks import check_ni_exact


class Command(AnalysisCommand):
    help = 'Unify observations with U* and write the idealized model'

    def add_arguments(self, parser):
        parser.add_argument('model', help='Path to a .tn model')
        parser.add_argument(
            '-o', '--output',
            type=str,
            help='Write the idealized .tn model here instead of standard output'
        )
        parser.add_argument(
            '--check-minimality',
            action='store_true',
            help='Also confirm no strictly finer unification suffices'
        )
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        doc = self.load(options['model'])
        net = doc.network
        result = idealize(net)
        ideal = result.network.with_changes(name=f'Ideal_{net.name}')
        holds = check_ni_exact(ideal).holds
        minimality = None
        if options['check_minimality']:
            minimality = check_minimality(net, result.unification)
        self.verdict(holds and (minimality is None or minimality.minimal))

        for warning in high_awareness_warnings(result):
            self.stderr.write(f'warning: {warning}')

        text = serialize_model(ModelDocument(network=ideal, goals=doc.goals))
        if options['output']:
            try:
                Path(options['output']).write_text(text, encoding='utf-8')
            except OSError as exc:
                raise InputError(f"Cannot write {options['output']}: {exc.strerror or exc}") from None

        if options['json']:
            self.emit_json({
                'model': net.name,
                'idealizedModel': ideal.name,
                'provenance': result.provenance,
                'unification': [block for block in result.unification.sorted_blocks() if len(block) > 1],
                'noninterference': holds,
                'minimal': None if minimality is None else minimality.minimal,
                'output': options['output'],
            })
            return

        if not options['output']:
            self.stdout.write(text, ending='')
            return
        self.stdout.write(f'{ideal.name} ({result.provenance}) written to {options["output"]}')
        for block in result.unification.sorted_blocks():
            if len(block) > 1:
                self.stdout.write(f'  unified: {", ".join(block)}')
        if minimality is not None:
            self.stdout.write(f'minimal: {self.yes_no(minimality.minimal)} ({minimality.checked} checked)')
