from django.apps import AppConfig


class IdealizationConfig(AppConfig):
    name = 'apps.idealization'
    verbose_name = 'Idealization & Unification'
