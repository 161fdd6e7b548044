"""
Django settings for the Effective Security toolkit.

The project has no web surface and no database: it is a set of Django apps
driven through management commands (`manage.py` or the `effsec` script).
"""

import os
from pathlib import Path
import environ

# Base directory
BASE_DIR = Path(__file__).resolve().parent.parent

# Initialize environment variables
env = environ.Env(
    DEBUG=(bool, False),
    SECRET_KEY=(str, ''),
    LOG_LEVEL=(str, 'WARNING'),
    EFFSEC_DEFAULT_SEMANTICS=(str, 'fair'),
    EFFSEC_STRATEGY_BUDGET=(int, 200000),
    EFFSEC_REFINEMENT_BUDGET=(int, 5000),
    EFFSEC_NI_DEPTH_CAP=(int, 12),
    EFFSEC_VERIFY_WITNESSES=(bool, False),
)

# Load .env if exists (for local dev)
environ.Env.read_env(os.path.join(BASE_DIR, '.env'))

# Security
SECRET_KEY = env('SECRET_KEY', default='unsafe-secret-key')
DEBUG = env('DEBUG', default=False)
ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    # Third-party
    'rest_framework',

    # Local apps
    'apps',
    'apps.core',
    'apps.modellang',
    'apps.noninterference',
    'apps.idealization',
    'apps.games',
    'apps.effsec',
]

# ===========================
# DATABASE CONFIGURATION
# ===========================
DATABASES = {}

# ===========================
# INTERNATIONALIZATION
# ===========================
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# ===========================
# REST FRAMEWORK
# ===========================
REST_FRAMEWORK = {
    'UNICODE_JSON': True,
    'COMPACT_JSON': True,
    'STRICT_JSON': True,
}

# ===========================
# ANALYSIS
# ===========================
EFFECTIVE_SECURITY = {
    'DEFAULT_SEMANTICS': env('EFFSEC_DEFAULT_SEMANTICS'),
    'STRATEGY_BUDGET': env('EFFSEC_STRATEGY_BUDGET'),
    'REFINEMENT_BUDGET': env('EFFSEC_REFINEMENT_BUDGET'),
    'NI_DEPTH_CAP': env('EFFSEC_NI_DEPTH_CAP'),
    'VERIFY_WITNESSES': env('EFFSEC_VERIFY_WITNESSES'),
}

# ===========================
# LOGGING
# ===========================
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'plain'},
    },
    'root': {'handlers': ['console'], 'level': env('LOG_LEVEL')},
}
