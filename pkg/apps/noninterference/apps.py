from django.apps import AppConfig


class NoninterferenceConfig(AppConfig):
    name = 'apps.noninterference'
    verbose_name = 'Noninterference'
