import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'effective_security.settings')
django.setup()
