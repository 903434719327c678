from pathlib import Path

from django.core.management.base import CommandError

from blockgraph.generators import generate
from blockgraph.instances import Instance, serialize_instance
from blockgraph.validators import validate_probability, validate_profile, validate_vertex_count

from ._base import INPUT_ERROR, BlockGraphCommand

# Generated graphs above this size are not useful for any solver here.
MAX_GENERATED_VERTICES = 10000


class Command(BlockGraphCommand):
    help = "Generate a seeded instance file"

    takes_input = False

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--profile", required=True)
        parser.add_argument("--n", default=None)
        parser.add_argument("--p", default=None)
        parser.add_argument("--m", default=None)
        parser.add_argument("--petals", default=None)
        parser.add_argument("--count", default=None)
        parser.add_argument("--output", default=None, help="Write here instead of stdout")

    def check_options(self, options):
        super().check_options(options)
        checks = [validate_profile(options["profile"])]
        for name in ("n", "m", "petals", "count"):
            if options[name] is not None:
                valid, message = validate_vertex_count(options[name], MAX_GENERATED_VERTICES)
                checks.append((valid, message.replace("n must", f"{name} must", 1)))
        if options["p"] is not None:
            checks.append(validate_probability(options["p"]))
        errors = [message for valid, message in checks if not valid]
        if errors:
            raise CommandError("; ".join(errors), returncode=INPUT_ERROR)

    def run(self, options, started):
        profile = options["profile"]
        params = {
            name: int(options[name])
            for name in ("n", "m", "k", "petals", "count")
            if options[name] is not None
        }
        if options["p"] is not None:
            params["p"] = float(options["p"])
        weighted = generate(profile, options["seed"], **params)

        kind = "wfvs" if profile == "random-wfvs" else "bgvd"
        instance = Instance(kind=kind, weighted=weighted, budget=params.get("k", 0))
        described = " ".join(f"{name}={value}" for name, value in sorted(params.items()))
        text = serialize_instance(
            instance, comments=(f"profile={profile} seed={options['seed']} {described}".rstrip(),)
        )
        if options["output"]:
            Path(options["output"]).write_text(text)
        else:
            self.stdout.write(text, ending="")
