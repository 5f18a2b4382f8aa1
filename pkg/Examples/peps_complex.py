from CodedTN.utils.spec_io import load_spec
import CodedTN as ctn
from pathlib import Path


# a 2x2 grid with physical indices, complex entries and two non-adjacent sliced bonds
spec = load_spec(Path(__file__).parent / "specs" / "peps_2x2.json")
report = ctn.validate(spec.network, spec.slice)
print("\n".join(report.lines()) or "the plan is valid")

plan = spec.plan()
scheme = ctn.plan_best(plan, 1)
print(f"{scheme.name} with {ctn.f_resilient(scheme, 1)} workers")

coded = ctn.make_scheme(ctn.CodeKind.TWO_NODE, plan)
result = ctn.run_experiment(spec.network, coded, 1, ctn.FailurePattern.random(1, seed=spec.seed))
print(f"decoded with relative error {result.max_rel_error:.2e}")
