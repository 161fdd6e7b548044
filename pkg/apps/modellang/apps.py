from django.apps import AppConfig


class ModellangConfig(AppConfig):
    name = 'apps.modellang'
    verbose_name = 'Model Language'
