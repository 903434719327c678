"""
Shared plumbing for the blockgraph management commands.

Input errors (the ValueError family, missing files) leave with exit code 2
and invariant violations with exit code 3; the message is the diagnostic.
"""

import logging
import time

from django.core.management.base import BaseCommand, CommandError

from blockgraph.exceptions import InvariantViolation
from blockgraph.instances import Instance, read_instance
from blockgraph.models import ResultRecord
from blockgraph.reports import render_json, render_text
from blockgraph.validators import validate_budget, validate_format

logger = logging.getLogger(__name__)

INPUT_ERROR = 2
INVARIANT_ERROR = 3


class BlockGraphCommand(BaseCommand):
    """Base command: common flags, error mapping and record output."""

    takes_input = True

    def add_arguments(self, parser):
        if self.takes_input:
            parser.add_argument("--input", default="-", help="Instance file, or - for stdin")
        parser.add_argument("--k", dest="k", default=None, help="Deletion budget")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--format", dest="output_format", default="json")

    def handle(self, *args, **options):
        started = time.perf_counter()
        try:
            self.check_options(options)
            return self.run(options, started)
        except CommandError:
            raise
        except InvariantViolation as e:
            logger.error(f"{self.command_name()}: invariant violation: {e}")
            raise CommandError(f"invariant violation: {e}", returncode=INVARIANT_ERROR) from e
        except (ValueError, OSError) as e:
            raise CommandError(str(e), returncode=INPUT_ERROR) from e

    def check_options(self, options) -> None:
        errors = []
        valid, message = validate_format(options["output_format"])
        if not valid:
            errors.append(message)
        if options.get("k") is not None:
            valid, message = validate_budget(options["k"])
            if not valid:
                errors.append(message)
        if errors:
            raise CommandError("; ".join(errors), returncode=INPUT_ERROR)

    def run(self, options, started: float):
        raise NotImplementedError

    def command_name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    def budget(self, options, instance: Instance | None = None) -> int:
        if options.get("k") is not None:
            return int(options["k"])
        if instance is not None and instance.budget is not None:
            return instance.budget
        raise CommandError("--k is required for this instance", returncode=INPUT_ERROR)

    def load(self, options, kind: str | None = None) -> Instance:
        instance = read_instance(options["input"])
        if kind is not None and instance.kind != kind:
            raise CommandError(
                f"{self.command_name()} needs a {kind} instance, got {instance.kind}",
                returncode=INPUT_ERROR,
            )
        return instance

    def emit(self, record: ResultRecord, options, started: float) -> None:
        record.statistics["elapsed_seconds"] = round(time.perf_counter() - started, 4)
        if options["output_format"] == "text":
            self.stdout.write(render_text(record))
        else:
            self.stdout.write(render_json(record))
