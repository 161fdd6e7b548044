"""
Serializers for attacker strategies and solver results.
"""
from rest_framework import serializers

from apps.core.models import natural_sorted


class StrategyRowSerializer(serializers.Serializer):
    """One belief of a strategy, keyed by the observation history reaching it"""
    history = serializers.SerializerMethodField()
    belief = serializers.SerializerMethodField()
    action = serializers.SerializerMethodField()

    def get_history(self, obj):
        return '>'.join(obj[0])

    def get_belief(self, obj):
        return natural_sorted(obj[1])

    def get_action(self, obj):
        return obj[2]


class StrategySerializer(serializers.Serializer):
    attacker = serializers.CharField()
    choices = serializers.SerializerMethodField()

    def get_choices(self, obj):
        return StrategyRowSerializer(obj.items(), many=True).data


class SolveResultSerializer(serializers.Serializer):
    winning = serializers.BooleanField()
    semantics = serializers.CharField()
    goalExposed = serializers.BooleanField(source='goal_exposed')
    strategy = serializers.SerializerMethodField()
    diagnostics = serializers.SerializerMethodField()

    def get_strategy(self, obj):
        return StrategySerializer(obj.strategy).data if obj.strategy else None

    def get_diagnostics(self, obj):
        return dict(sorted(obj.diagnostics.items()))
