# Idealization App
