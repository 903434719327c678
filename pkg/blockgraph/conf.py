"""Typed access to the BLOCKGRAPH settings dict with defaults."""

from django.conf import settings

DEFAULTS = {
    "ORACLE_MAX_VERTICES_BVD": 16,
    "ORACLE_MAX_VERTICES_WFVS": 14,
    "ORACLE_MAX_VERTICES_APATHS": 14,
    "APATH_EXACT_THRESHOLD": 15,
    "HITTING_SET_TARGET_FACTOR": 7,
    "KERNEL_MAX_STEPS": 10000,
    "PARITY_MAX_PAIRS_SLACK": 2,
    "BENCH_CONFIG_PATH": None,
}


def get_setting(name: str):
    """
    Look up a BLOCKGRAPH setting, falling back to the package default.

    Raises:
        KeyError: If the name is not a known setting
    """
    if name not in DEFAULTS:
        raise KeyError(f"Unknown BLOCKGRAPH setting: {name}")
    overrides = getattr(settings, "BLOCKGRAPH", {})
    return overrides.get(name, DEFAULTS[name])
