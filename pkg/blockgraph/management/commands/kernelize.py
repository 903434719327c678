import json
from pathlib import Path

from blockgraph.graphs import WeightedGraph
from blockgraph.instances import Instance, serialize_instance
from blockgraph.kernel import kernelize
from blockgraph.reports import build_record

from ._base import BlockGraphCommand


class Command(BlockGraphCommand):
    help = "Polynomial kernel for block graph vertex deletion, with a replayable trace"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--trace", default=None, help="Write RULE lines to this file")
        parser.add_argument("--trace-json", default=None, help="Write the trace as JSON")
        parser.add_argument("--output", default=None, help="Write the reduced instance here")

    def run(self, options, started):
        instance = self.load(options, "bgvd")
        k = self.budget(options)
        result = kernelize(instance.graph, k)

        if options["trace"]:
            Path(options["trace"]).write_text("\n".join(result.trace.lines()) + "\n")
        if options["trace_json"]:
            Path(options["trace_json"]).write_text(
                json.dumps(result.trace.as_dict(), sort_keys=True, indent=2)
            )
        if options["output"]:
            reduced = Instance(kind="bgvd", weighted=WeightedGraph.uniform(result.graph))
            comment = f"kernel of {instance.name}, k={result.budget}"
            Path(options["output"]).write_text(serialize_instance(reduced, comments=(comment,)))

        record = build_record(
            instance=instance.name,
            command="kernelize",
            parameters={"k": k, "k_reduced": result.budget},
            verdict=result.verdict.value,
            statistics=result.statistics,
        )
        self.emit(record, options, started)
