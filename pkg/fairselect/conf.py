from django.conf import settings

SETTINGS_PREFIX = "FAIRSELECT"
SETTINGS_DEFAULTS = {
    "CONDITION_LIMIT": 1e12,
    "CHOLESKY_JITTER": 1e-10,
    "PAIRWISE_WEIGHT_CUTOFF": 1e-5,
    "GRID_POINTS": 4096,
    "GRID_WIDTH": 12.0,
    "QUANTILE_TOLERANCE": 1e-8,
    "EXACT_QUANTILE_METHOD": "search",
    "FAILURE_BUDGET": 0.01,
    "THREADS": 1,
    "SIGNIFICANT_DIGITS": 6,
    "ENABLE_BUILTIN_STRATEGIES": True,
    "ENABLED_STRATEGIES": (
        "max",
        "fair",
        "percentile",
        "pairwise",
        "group_mean",
        "ideal",
        "oracle_max",
    ),
}


def get_setting(name):
    default = SETTINGS_DEFAULTS[name]
    # plain library use, no django project around us
    if not settings.configured:
        return default
    setting_key = "{}_{}".format(SETTINGS_PREFIX, name)
    return getattr(settings, setting_key, default)
