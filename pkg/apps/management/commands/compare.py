"""
Django management command to compare the effective security of two models.
"""
from apps.core.exceptions import InputError
from apps.effsec.analysis import compare
from apps.effsec.serializers import ComparisonSerializer
from apps.management.base import AnalysisCommand


class Command(AnalysisCommand):
    help = 'Compare two models for one attacker and a goal declared in both'

    def add_arguments(self, parser):
        parser.add_argument('first', help='Path to the first .tn model')
        parser.add_argument('second', help='Path to the second .tn model')
        self.add_game_arguments(parser)
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        first_doc = self.load(options['first'])
        second_doc = self.load(options['second'])
        goal_name, goal = self.resolve_goal(first_doc, options['goal'])
        goal_b = second_doc.goal(goal_name)
        attacker = self.resolve_attacker(first_doc.network, options['attacker'])
        if attacker not in second_doc.network.low:
            raise InputError(f"Attacker '{attacker}' is not a Low agent of {second_doc.network.name}")
        semantics = self.resolve_semantics(options['semantics'])

        verdict = compare(
            first_doc.network, second_doc.network, attacker, goal, semantics,
            goal_b=goal_b, budget=options['budget'],
        )
        self.verdict(verdict.equivalent)

        if options['json']:
            self.emit_json(ComparisonSerializer(verdict, context={'goal_name': goal_name}).data)
            return

        first, second = first_doc.network.name, second_doc.network.name
        for es in (verdict.first, verdict.second):
            self.stdout.write(f'  {es.model}: effectively secure {self.yes_no(es.effectively_secure)}')
        if verdict.a_less_b:
            self.stdout.write(f'{first} is strictly less effectively secure than {second}')
        elif verdict.b_less_a:
            self.stdout.write(f'{second} is strictly less effectively secure than {first}')
        else:
            self.stdout.write(self.style.SUCCESS(f'{first} and {second} are equally effectively secure'))
