"""
Django management command to write random well-formed models for experimentation.
"""
import random
import re
from pathlib import Path

from django.core.management.base import BaseCommand
from faker import Faker

from apps.core.models import Goal, TransitionNetwork
from apps.core.validation import validate_network
from apps.modellang.models import ModelDocument
from apps.modellang.writer import serialize_model


def _identifier(text):
    return re.sub(r'[^A-Za-z0-9_]', '', text) or 'net'


class Command(BaseCommand):
    help = 'Create random availability-aware transition networks as .tn files'
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument(
            '--count',
            type=int,
            default=10,
            help='Number of networks to create'
        )
        parser.add_argument(
            '--states',
            type=int,
            default=6,
            help='Maximum number of states per network'
        )
        parser.add_argument(
            '--actions',
            type=int,
            default=3,
            help='Maximum number of actions per network'
        )
        parser.add_argument(
            '--seed',
            type=int,
            default=0,
            help='Random seed, for reproducible samples'
        )
        parser.add_argument(
            '--output-dir',
            type=str,
            default='samples',
            help='Directory receiving the .tn files'
        )

    def handle(self, *args, **options):
        rng = random.Random(options['seed'])
        fake = Faker()
        fake.seed_instance(options['seed'])
        output = Path(options['output_dir'])
        output.mkdir(parents=True, exist_ok=True)

        self.stdout.write('Creating sample networks...')
        for index in range(options['count']):
            name = f"{_identifier(fake.word()).capitalize()}{index}"
            net = self.create_network(rng, name, options['states'], options['actions'])
            avoid = rng.sample(net.sorted_states(), rng.randint(1, len(net.states)))
            doc = ModelDocument(network=net, goals={'G': Goal.safety(avoid)})
            path = output / f"{name}.tn"
            path.write_text(serialize_model(doc), encoding='utf-8')
            self.stdout.write(f'  {path}: {net}')

        self.stdout.write(
            self.style.SUCCESS(f"Successfully created {options['count']} sample networks in {output}")
        )

    def create_network(self, rng, name, max_states, max_actions):
        """Random network whose available actions depend only on what each agent observes"""
        states = [f"s{index}" for index in range(rng.randint(1, max_states))]
        high = [f"H{index}" for index in range(rng.randint(1, 2))]
        low = [f"L{index}" for index in range(rng.randint(1, 2))]
        actions = [f"a{index}" for index in range(rng.randint(1, max_actions))]
        labels = [f"o{index}" for index in range(rng.randint(1, 3))]

        obs = {(state, agent): rng.choice(labels) for state in states for agent in high + low}
        transitions = {}
        for agent in high + low:
            for label in sorted({obs[(state, agent)] for state in states}):
                enabled = [action for action in actions if rng.random() < 0.6]
                for state in states:
                    if obs[(state, agent)] != label:
                        continue
                    for action in enabled:
                        transitions[(state, agent, action)] = rng.choice(states)

        net = TransitionNetwork(
            name=name,
            states=states,
            initial='s0',
            high=high,
            low=low,
            actions=actions,
            observations=set(obs.values()),
            obs=obs,
            transitions=transitions,
        )
        report = validate_network(net)
        if not report.ok:
            self.stderr.write(f'{name}: {len(report.violations)} well-formedness warning(s)')
        return net
