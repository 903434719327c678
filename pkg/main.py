"""Console entry point: `python main.py solve --k 1 --input graph.txt` and friends."""

import os
import sys


def run(argv: list[str] | None = None) -> int:
    """Run one blockgraph subcommand; returns the process exit code."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
    from django.core.management import execute_from_command_line

    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        execute_from_command_line(["blockgraph", *argv])
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
