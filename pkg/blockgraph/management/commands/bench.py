import json

from django.core.management.base import CommandError

from blockgraph.bench import BenchReport, load_bench_config, run_suite

from ._base import INPUT_ERROR, BlockGraphCommand


class Command(BlockGraphCommand):
    help = "Run benchmark suites and compare counters with their ceilings"

    takes_input = False

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--config", default=None, help="Bench suites JSON file")
        parser.add_argument(
            "--suite", action="append", default=None, help="Suite name (repeatable)"
        )
        parser.add_argument("--tolerance", type=float, default=0.1)

    def run(self, options, started):
        config = load_bench_config(options["config"])
        suites = config.get("suites", {})
        names = options["suite"] or sorted(suites)
        unknown = [name for name in names if name not in suites]
        if unknown:
            raise CommandError(f"unknown suite(s): {', '.join(unknown)}", returncode=INPUT_ERROR)

        report = BenchReport(
            baseline=config.get("kernel_ratio_baseline"), tolerance=options["tolerance"]
        )
        for name in names:
            report.rows += run_suite(suites[name], report.baseline, report.tolerance).rows

        if options["output_format"] == "text":
            self.stdout.write(report.table())
        else:
            self.stdout.write(json.dumps(report.as_dict(), sort_keys=True, default=str))
