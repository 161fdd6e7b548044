from django.apps import AppConfig


class GamesConfig(AppConfig):
    name = 'apps.games'
    verbose_name = 'Strategy Games'
