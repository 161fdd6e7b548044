"""
JSON reports for effective security analyses.
"""
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from apps.core.models import natural_sorted
from apps.games.serializers import StrategySerializer


def render_json(data) -> str:
    """One JSON document, indented, keys in serializer order."""
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8')


def goal_data(goal, name=''):
    return {
        'name': name,
        'kind': goal.kind.value,
        'states': natural_sorted(goal.states),
    }


class ESVerdictSerializer(serializers.Serializer):
    model = serializers.CharField()
    effectivelySecure = serializers.BooleanField(source='effectively_secure')
    strictSecure = serializers.BooleanField(source='strict_secure', allow_null=True)
    goalExposed = serializers.BooleanField(source='goal_exposed')
    attackStrategy = serializers.SerializerMethodField()

    def get_attackStrategy(self, obj):
        if obj.attack_strategy is None:
            return None
        return StrategySerializer(obj.attack_strategy).data


class ComparisonSerializer(serializers.Serializer):
    """Serializer for two-model comparisons"""
    goal = serializers.SerializerMethodField()
    semantics = serializers.SerializerMethodField()
    first = ESVerdictSerializer()
    second = ESVerdictSerializer()
    relation = serializers.SerializerMethodField()

    def get_goal(self, obj):
        return goal_data(obj.first.goal, self.context.get('goal_name', ''))

    def get_semantics(self, obj):
        return obj.first.semantics.value

    def get_relation(self, obj):
        return {
            'firstPreceqSecond': obj.a_preceq_b,
            'secondPreceqFirst': obj.b_preceq_a,
            'firstLessSecond': obj.a_less_b,
            'secondLessFirst': obj.b_less_a,
            'equivalent': obj.equivalent,
        }


class InfoSecReportSerializer(serializers.Serializer):
    """
    Full evidence chain of an effective information security verdict:
    the unification, both verdicts, the relation and the attack strategies.
    """
    model = serializers.SerializerMethodField()
    idealizedModel = serializers.SerializerMethodField()
    unification = serializers.SerializerMethodField()
    goal = serializers.SerializerMethodField()
    semantics = serializers.SerializerMethodField()
    es = serializers.SerializerMethodField()
    esIdeal = serializers.SerializerMethodField()
    relation = serializers.SerializerMethodField()
    verdict = serializers.SerializerMethodField()
    strategies = serializers.SerializerMethodField()
    timingsMs = serializers.SerializerMethodField()

    def get_model(self, obj):
        return obj.es.model

    def get_idealizedModel(self, obj):
        return f"Ideal_{obj.es_ideal.model}"

    def get_unification(self, obj):
        return [
            block for block in obj.idealization.unification.sorted_blocks() if len(block) > 1
        ]

    def get_goal(self, obj):
        return goal_data(obj.es.goal, self.context.get('goal_name', ''))

    def get_semantics(self, obj):
        return obj.es.semantics.value

    def _verdict(self, verdict):
        return {
            'effectivelySecure': verdict.effectively_secure,
            'strictSecure': verdict.strict_secure,
            'goalExposed': verdict.goal_exposed,
        }

    def get_es(self, obj):
        return self._verdict(obj.es)

    def get_esIdeal(self, obj):
        return self._verdict(obj.es_ideal)

    def get_relation(self, obj):
        comparison = obj.comparison
        return {
            'modelPreceqIdeal': comparison.a_preceq_b,
            'idealPreceqModel': comparison.b_preceq_a,
            'modelLessIdeal': comparison.a_less_b,
            'idealLessModel': comparison.b_less_a,
            'equivalent': comparison.equivalent,
        }

    def get_verdict(self, obj):
        return {
            'effectivelyInformationSecure': obj.secure,
            'attacker': obj.attacker,
        }

    def get_strategies(self, obj):
        return {
            'model': ESVerdictSerializer(obj.es).data['attackStrategy'],
            'idealizedModel': ESVerdictSerializer(obj.es_ideal).data['attackStrategy'],
        }

    def get_timingsMs(self, obj):
        return dict(obj.timings)
