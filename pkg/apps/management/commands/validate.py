"""
Django management command to check a `.tn` model for well-formedness.
"""
from apps.core.semantics import is_total
from apps.core.validation import validate_network
from apps.management.base import AnalysisCommand


class Command(AnalysisCommand):
    help = 'Parse a model and report well-formedness violations'

    def add_arguments(self, parser):
        parser.add_argument('model', help='Path to a .tn model')
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        net = self.load(options['model']).network
        report = validate_network(net)
        self.verdict(report.ok)

        if options['json']:
            self.emit_json({
                'model': net.name,
                'states': len(net.states),
                'transitions': len(net.transitions),
                'total': is_total(net),
                'ok': report.ok,
                'violations': [
                    {'kind': violation.kind, 'message': violation.message}
                    for violation in report.violations
                ],
            })
            return

        self.stdout.write(f'{net} ({"total" if is_total(net) else "partial"})')
        for violation in report.violations:
            self.stdout.write(f'  [{violation.kind}] {violation.message}')
        if report.ok:
            self.stdout.write(self.style.SUCCESS('Model is well-formed'))
        else:
            self.stdout.write(self.style.ERROR(f'{len(report.violations)} violation(s)'))
