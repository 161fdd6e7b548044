# Games App
