"""
Django management command to print the least candidate unwinding R*.
"""
from apps.management.base import AnalysisCommand
from apps.noninterference.checks import check_unwinding
from apps.noninterference.rstar import compute_rstar


class Command(AnalysisCommand):
    help = 'Compute R* and report which unwinding conditions it satisfies'

    def add_arguments(self, parser):
        parser.add_argument('model', help='Path to a .tn model')
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        net = self.load(options['model']).network
        part = compute_rstar(net)
        report = check_unwinding(net, part)
        self.verdict(report.is_unwinding)

        if options['json']:
            self.emit_json({
                'model': net.name,
                'blocks': part.sorted_blocks(),
                'outputConsistent': report.oc,
                'stepConsistent': report.sc,
                'locallyRespectful': report.lr,
                'unwinding': report.is_unwinding,
            })
            return

        self.stdout.write(f'R* of {net.name}: {len(part)} block(s)')
        for block in part.sorted_blocks():
            self.stdout.write(f'  {{{", ".join(block)}}}')
        self.stdout.write(
            f'output consistency: {self.yes_no(report.oc)}, '
            f'step consistency: {self.yes_no(report.sc)}, '
            f'local respect: {self.yes_no(report.lr)}'
        )
        for first, second, agent in report.oc_counterexamples[:5]:
            self.stdout.write(
                f'  {agent} tells {first} ({net.observe(first, agent)}) '
                f'from {second} ({net.observe(second, agent)})'
            )
