"""
Django management command to solve the attacker's game for one goal.
"""
from apps.effsec.analysis import negate_goal
from apps.effsec.serializers import goal_data
from apps.games.export import arena_to_graph, product_to_graph, write_dot
from apps.games.serializers import SolveResultSerializer
from apps.games.solvers import solve
from apps.management.base import AnalysisCommand


class Command(AnalysisCommand):
    help = "Search a surely winning strategy of the attacker for a goal of the model"

    def add_arguments(self, parser):
        parser.add_argument('model', help='Path to a .tn model')
        self.add_game_arguments(parser)
        parser.add_argument(
            '--negate',
            action='store_true',
            help='Play for the complement of the goal (the attack on a system goal)'
        )
        parser.add_argument('--dot', type=str, help='Write the belief arena as DOT')
        parser.add_argument(
            '--dot-product',
            type=str,
            help='Write the strategy-trimmed product graph as DOT when the attacker wins'
        )
        self.add_json_argument(parser)

    def handle(self, *args, **options):
        doc = self.load(options['model'])
        net = doc.network
        goal_name, goal = self.resolve_goal(doc, options['goal'])
        if options['negate']:
            goal = negate_goal(goal)
        attacker = self.resolve_attacker(net, options['attacker'])
        semantics = self.resolve_semantics(options['semantics'])

        result = solve(net, attacker, goal, semantics, options['budget'])
        self.verdict(result.winning)

        if options['dot']:
            write_dot(arena_to_graph(result.arena), options['dot'])
        if options['dot_product'] and result.winning:
            write_dot(product_to_graph(result.arena, result.strategy, goal, semantics), options['dot_product'])

        if options['json']:
            data = {'model': net.name, 'attacker': attacker, 'goal': goal_data(goal, goal_name)}
            data.update(SolveResultSerializer(result).data)
            self.emit_json(data)
            return

        self.stdout.write(
            f'{net.name}: {attacker} playing for {goal.describe()} under {semantics.value} scheduling'
        )
        if result.goal_exposed:
            self.stdout.write('  (target made observable to the attacker)')
        if result.winning:
            self.stdout.write(self.style.SUCCESS('Winning strategy found'))
            self.stdout.write(f'  {result.strategy.describe()}')
        else:
            self.stdout.write(self.style.ERROR('No winning strategy'))
            self.stdout.write(f'  {result.diagnostics.get("reason", "")}')
