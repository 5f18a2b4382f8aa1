import CodedTN as ctn


# only one index joins two tensors, the other one joins three
net, plan = ctn.star_network([(2, 2), (3, 2)])

for scheme in ctn.applicable_schemes(plan):
    print(f"{scheme.name:<18}{ctn.f_resilient(scheme, 2):>6} workers for f = 2")

best = ctn.plan_best(plan, 2)
print(f"best: {best.name}, coded {best.coded_labels}, uncoded {best.uncoded_labels}")

for group in best.groups():
    encoded = ctn.encode(net, best, 2, group).network
    sliced = ctn.slice_network(net, best.plan, (1,) * best.k + tuple(group))
    same = ctn.topology_fingerprint(encoded) == ctn.topology_fingerprint(sliced)
    print(f"group {group}: same topology as a sliced partition: {same}")

report = ctn.run_experiment(net, best, 2, ctn.FailurePattern.adversarial(2))
print(f"success: {report.success}")
