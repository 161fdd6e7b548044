# Effective Security App
