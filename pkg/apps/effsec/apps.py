from django.apps import AppConfig


class EffsecConfig(AppConfig):
    name = 'apps.effsec'
    verbose_name = 'Effective Security Analysis'
