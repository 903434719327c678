"""
Input validation for command-line parameters.

Each validator follows the same pattern:
- Takes the raw value (any type, usually a string from argparse)
- Returns a tuple of (is_valid: bool, error_message: str)
- Returns (True, "") when valid

Validation Functions:
    validate_budget(): k must be a non-negative integer
    validate_vertex_count(): n must be a non-negative integer
    validate_probability(): p must lie in [0, 1]
    validate_format(): output format must be json or text
    validate_profile(): generator profile must be known

The management commands collect the messages and turn them into a
CommandError with exit code 2.
"""

from .generators import PROFILES

FORMATS = ("json", "text")


def validate_budget(value) -> tuple[bool, str]:
    """
    Validate a deletion budget k.

    Args:
        value: Budget to validate

    Returns:
        Tuple of (is_valid, error_message)
    """
    try:
        budget = int(value)
    except (ValueError, TypeError):
        return False, "k must be a valid integer"
    if budget < 0:
        return False, "k must be non-negative"
    return True, ""


def validate_vertex_count(value, maximum: int | None = None) -> tuple[bool, str]:
    try:
        count = int(value)
    except (ValueError, TypeError):
        return False, "n must be a valid integer"
    if count < 0:
        return False, "n must be non-negative"
    if maximum is not None and count > maximum:
        return False, f"n must be at most {maximum}"
    return True, ""


def validate_probability(value) -> tuple[bool, str]:
    """
    Validate an edge probability.

    Returns:
        Tuple of (is_valid, error_message)
    """
    try:
        p = float(value)
    except (ValueError, TypeError):
        return False, "p must be a valid number"
    if not 0.0 <= p <= 1.0:
        return False, "p must be between 0 and 1"
    return True, ""


def validate_format(value) -> tuple[bool, str]:
    if value in FORMATS:
        return True, ""
    return False, f"format must be one of {', '.join(FORMATS)}"


def validate_profile(value) -> tuple[bool, str]:
    if value in PROFILES:
        return True, ""
    return False, f"profile must be one of {', '.join(PROFILES)}"
