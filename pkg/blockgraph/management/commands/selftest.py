import json

from django.core.management.base import CommandError

from blockgraph.selftest import CHECKS, run_selftest

from ._base import INPUT_ERROR, INVARIANT_ERROR, BlockGraphCommand


class Command(BlockGraphCommand):
    help = "Run the randomised invariant suite against the brute-force oracles"

    takes_input = False

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--trials", type=int, default=20)
        parser.add_argument("--check", action="append", default=None, choices=sorted(CHECKS))

    def run(self, options, started):
        if options["trials"] < 0:
            raise CommandError("trials must be non-negative", returncode=INPUT_ERROR)
        report = run_selftest(options["trials"], options["seed"], options["check"])
        failed = sum(result["failed"] for result in report.values())
        if options["output_format"] == "text":
            for name, result in report.items():
                self.stdout.write(
                    f"{name:<26} passed {result['passed']:>5}  failed {result['failed']:>5}"
                )
        else:
            self.stdout.write(json.dumps({"checks": report, "failed": failed}, sort_keys=True))
        if failed:
            raise CommandError(f"{failed} selftest trial(s) failed", returncode=INVARIANT_ERROR)
