# Effective Security apps
