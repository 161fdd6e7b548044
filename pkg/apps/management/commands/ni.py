"""
Django management command to decide noninterference of a model.
"""
import logging

from apps.core.conf import effsec_settings
from apps.core.exceptions import ConsistencyError
from apps.management.base import AnalysisCommand
from apps.noninterference.checks import check_ni_bounded, check_ni_exact, replay_witness

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = -1


class Command(AnalysisCommand):
    help = 'Decide noninterference exactly and optionally cross-check with the bounded oracle'

    def add_arguments(self, parser):
        parser.add_argument('model', help='Path to a .tn model')
        parser.add_argument(
            '--depth',
            type=int,
            nargs='?',
            const=DEFAULT_DEPTH,
            default=None,
            help='Also run the bounded oracle up to this sequence length'
        )
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        net = self.load(options['model']).network
        exact = check_ni_exact(net)
        verdicts = [exact]

        depth = options['depth']
        if depth is not None:
            if depth == DEFAULT_DEPTH:
                depth = min(2 * len(net.states), effsec_settings('NI_DEPTH_CAP'))
            bounded = check_ni_bounded(net, depth)
            verdicts.append(bounded)
            if bounded.witness is not None and not replay_witness(net, bounded.witness):
                raise ConsistencyError(f"Bounded witness does not replay: {bounded.witness}")
            if exact.holds and not bounded.holds:
                raise ConsistencyError(f"Exact and bounded checks disagree on {net.name}")
            if not exact.holds and bounded.holds:
                logger.info(f"No violation of {net.name} within depth {depth}")

        self.verdict(exact.holds)
        if options['json']:
            self.emit_json({
                'model': net.name,
                'noninterference': exact.holds,
                'checks': [
                    {
                        'method': verdict.method,
                        'holds': verdict.holds,
                        'witness': str(verdict.witness) if verdict.witness else None,
                    }
                    for verdict in verdicts
                ],
            })
            return

        for verdict in verdicts:
            status = self.style.SUCCESS('holds') if verdict.holds else self.style.ERROR('violated')
            self.stdout.write(f'{net.name} [{verdict.method}]: noninterference {status}')
            if verdict.witness:
                self.stdout.write(f'  witness: {verdict.witness}')
