from blockgraph.models import SolverStats
from blockgraph.reports import build_record, certify_feedback_set, format_weight
from blockgraph.wfvs import solve_wfvs

from ._base import BlockGraphCommand


class Command(BlockGraphCommand):
    help = "Minimum-weight feedback vertex set of size at most k (k from --k or the header)"

    def run(self, options, started):
        instance = self.load(options)
        k = self.budget(options, instance)
        stats = SolverStats()
        found = solve_wfvs(instance.weighted, k, stats)
        witness, weight = found if found is not None else (None, None)
        record = build_record(
            instance=instance.name,
            command="wfvs",
            parameters={"k": k},
            verdict="no" if found is None else "yes",
            witness=witness,
            certified=found is None or certify_feedback_set(instance.graph, witness),
            statistics={
                "weight": None if weight is None else format_weight(weight),
                **stats.as_dict(),
            },
        )
        self.emit(record, options, started)
