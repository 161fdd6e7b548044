"""
Access to the EFFECTIVE_SECURITY settings dict with defaults filled in.
"""
from django.conf import settings

DEFAULTS = {
    'DEFAULT_SEMANTICS': 'fair',
    'STRATEGY_BUDGET': 200000,
    'REFINEMENT_BUDGET': 5000,
    'NI_DEPTH_CAP': 12,
    'VERIFY_WITNESSES': False,
}


def effsec_settings(name):
    """Return one analysis setting, falling back to its default."""
    if name not in DEFAULTS:
        raise KeyError(f"Unknown analysis setting: {name}")
    configured = getattr(settings, 'EFFECTIVE_SECURITY', {}) or {}
    return configured.get(name, DEFAULTS[name])
