from django.core.management.base import CommandError

from blockgraph.oracle import brute_max_apaths, brute_min_bvd, brute_min_wfvs
from blockgraph.reports import (
    build_record,
    certify_block_deletion,
    certify_feedback_set,
    format_weight,
)

from ._base import INPUT_ERROR, BlockGraphCommand


class Command(BlockGraphCommand):
    help = "Brute-force reference answers for small instances"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            "--anchors",
            nargs="+",
            type=int,
            default=None,
            help="Count disjoint A-paths between these 1-based vertices instead",
        )

    def run(self, options, started):
        instance = self.load(options)
        if options["anchors"]:
            self.apaths(instance, options, started)
        elif instance.kind == "bgvd":
            self.block_deletion(instance, options, started)
        else:
            self.feedback_set(instance, options, started)

    def block_deletion(self, instance, options, started):
        optimum, witness = brute_min_bvd(instance.graph)
        parameters, verdict = {}, "optimal"
        if options["k"] is not None:
            k = self.budget(options)
            parameters, verdict = {"k": k}, "yes" if optimum <= k else "no"
        record = build_record(
            instance=instance.name,
            command="oracle",
            parameters=parameters,
            verdict=verdict,
            witness=witness,
            certified=certify_block_deletion(instance.graph, witness),
            statistics={"optimum": optimum},
        )
        self.emit(record, options, started)

    def feedback_set(self, instance, options, started):
        k = self.budget(options, instance)
        found = brute_min_wfvs(instance.weighted, k)
        weight, witness = found if found is not None else (None, None)
        record = build_record(
            instance=instance.name,
            command="oracle",
            parameters={"k": k},
            verdict="no" if found is None else "yes",
            witness=witness,
            certified=found is None or certify_feedback_set(instance.graph, witness),
            statistics={"weight": None if weight is None else format_weight(weight)},
        )
        self.emit(record, options, started)

    def apaths(self, instance, options, started):
        n = len(instance.graph)
        if any(not 1 <= a <= n for a in options["anchors"]):
            raise CommandError(f"anchors must lie in 1..{n}", returncode=INPUT_ERROR)
        anchors = [a - 1 for a in options["anchors"]]
        count = brute_max_apaths(instance.graph, anchors)
        record = build_record(
            instance=instance.name,
            command="oracle",
            parameters={"anchors": sorted(options["anchors"])},
            verdict="optimal",
            statistics={"apaths": count},
        )
        self.emit(record, options, started)
