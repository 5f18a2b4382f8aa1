import CodedTN as ctn


# a 3-node index and a 4-node index, both with L = 2
net, plan = ctn.hyperedge_example_network()
scheme = ctn.make_scheme(ctn.CodeKind.HYPEREDGE, plan)

geometry = ctn.desired_positions(scheme)
print(f"degree {geometry.degree}, the wanted products sit at:")
for values, exponent in sorted(geometry.by_assignment.items()):
    print(f"    slice {values} -> x^{exponent}")

for f in (1, 2):
    report = ctn.run_experiment(net, scheme, f, ctn.FailurePattern.adversarial(f))
    print(f"f = {f}: {report.workers_provisioned} workers, {report.subsets_checked} subsets, success: {report.success}")

# the symbolic check does not depend on any data
print(ctn.check_alignment(scheme).message)

# replication is cheaper for this plan
print(f"plan_best for f = 2: {ctn.plan_best(plan, 2).name}")
