"""
Django management command to report effective (information) security of a model.
"""
from apps.effsec.analysis import effective_info_security
from apps.effsec.serializers import InfoSecReportSerializer
from apps.management.base import AnalysisCommand


class Command(AnalysisCommand):
    help = 'Effective security of a model and of its idealized variant'

    def add_arguments(self, parser):
        parser.add_argument('model', help='Path to a .tn model')
        self.add_game_arguments(parser)
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        doc = self.load(options['model'])
        net = doc.network
        goal_name, goal = self.resolve_goal(doc, options['goal'])
        attacker = self.resolve_attacker(net, options['attacker'])
        semantics = self.resolve_semantics(options['semantics'])

        report = effective_info_security(net, attacker, goal, semantics, options['budget'])
        self.verdict(report.es.effectively_secure and report.secure)

        if options['json']:
            self.emit_json(InfoSecReportSerializer(report, context={'goal_name': goal_name}).data)
            return

        self.stdout.write(f'{net.name}, attacker {attacker}, goal {goal_name}: {goal.describe()}')
        for title, verdict in (('model', report.es), ('idealized', report.es_ideal)):
            self.stdout.write(
                f'  {title:<10} effectively secure: {self.yes_no(verdict.effectively_secure)} '
                f'({semantics.value}; strict: {self.yes_no(verdict.strict_secure)})'
            )
            if verdict.attack_strategy is not None:
                self.stdout.write(f'             attack: {verdict.attack_strategy.describe()}')
        for block in report.idealization.unification.sorted_blocks():
            if len(block) > 1:
                self.stdout.write(f'  unified observations: {", ".join(block)}')
        self.stdout.write(
            f'Effectively information-secure: {self.yes_no(report.secure)}'
        )
