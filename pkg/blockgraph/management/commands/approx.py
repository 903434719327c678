from blockgraph.approx import approx_bgvd_4
from blockgraph.reports import build_record, certify_block_deletion

from ._base import BlockGraphCommand


class Command(BlockGraphCommand):
    help = "Factor-4 approximation for block graph vertex deletion"

    def run(self, options, started):
        instance = self.load(options, "bgvd")
        found = approx_bgvd_4(instance.graph)
        record = build_record(
            instance=instance.name,
            command="approx",
            parameters={},
            verdict="approximate",
            witness=found,
            certified=certify_block_deletion(instance.graph, found),
            statistics={"solution_size": len(found)},
        )
        self.emit(record, options, started)
