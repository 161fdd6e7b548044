# Noninterference App
