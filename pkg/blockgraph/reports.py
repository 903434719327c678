"""
Result records shared by every command.

Witnesses are certified with the independent recognizer before a record is
built; an uncertified witness is an invariant violation, never a result.
Vertex ids in records are 1-based, matching the instance files.
"""

import json
import logging
from fractions import Fraction

from .exceptions import InvariantViolation
from .graphs import MultiGraph, is_forest
from .models import ResultRecord
from .oracle import recognize_block_graph

logger = logging.getLogger(__name__)

TIMING_FIELDS = ("elapsed_seconds",)


def certify_block_deletion(graph: MultiGraph, witness) -> bool:
    return recognize_block_graph(graph.remove_vertices(witness))


def certify_feedback_set(graph: MultiGraph, witness) -> bool:
    return is_forest(graph.remove_vertices(witness))


def format_weight(weight: Fraction) -> str:
    return f"{weight.numerator}/{weight.denominator}"


def build_record(
    instance: str,
    command: str,
    parameters: dict,
    verdict: str,
    witness=None,
    certified: bool = True,
    statistics: dict | None = None,
) -> ResultRecord:
    """
    Assemble a record, refusing uncertified witnesses.

    Raises:
        InvariantViolation: if `certified` is False
    """
    if not certified:
        logger.error(f"Uncertified witness for {command} on {instance}")
        raise InvariantViolation(f"{command}: witness failed independent certification")
    return ResultRecord(
        instance=instance,
        command=command,
        parameters=parameters,
        verdict=verdict,
        witness=sorted(v + 1 for v in witness or ()),
        certified=certified,
        statistics=statistics or {},
    )


def render_json(record: ResultRecord) -> str:
    return json.dumps(record.as_dict(), sort_keys=True, default=str)


def render_text(record: ResultRecord) -> str:
    lines = [
        f"instance:  {record.instance}",
        f"command:   {record.command}",
        f"verdict:   {record.verdict}",
        f"witness:   {' '.join(map(str, record.witness)) or '-'}",
        f"certified: {'yes' if record.certified else 'no'}",
    ]
    lines += [f"{name}: {value}" for name, value in sorted(record.parameters.items())]
    lines += [f"{name}: {value}" for name, value in sorted(record.statistics.items())]
    return "\n".join(lines)


def without_timing(payload: dict) -> dict:
    """Copy of a record dict with timing statistics dropped, for determinism checks."""
    statistics = {k: v for k, v in payload.get("statistics", {}).items() if k not in TIMING_FIELDS}
    return {**payload, "statistics": statistics}
