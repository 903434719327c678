from blockgraph.bgvd import BranchStats, solve_bgvd
from blockgraph.reports import build_record, certify_block_deletion

from ._base import BlockGraphCommand


class Command(BlockGraphCommand):
    help = "Exact block graph vertex deletion with budget k"

    def run(self, options, started):
        instance = self.load(options, "bgvd")
        k = self.budget(options)
        stats = BranchStats()
        found = solve_bgvd(instance.graph, k, stats)
        record = build_record(
            instance=instance.name,
            command="solve",
            parameters={"k": k},
            verdict="no" if found is None else "yes",
            witness=found,
            certified=found is None or certify_block_deletion(instance.graph, found),
            statistics={"solution_size": None if found is None else len(found), **stats.as_dict()},
        )
        self.emit(record, options, started)
