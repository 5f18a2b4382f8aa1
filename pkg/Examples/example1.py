import CodedTN as ctn
import logging


logging.basicConfig(level=logging.INFO, format="[%(levelname)s] %(name)s: %(message)s")

# two 2-node indices a (L = 4) and b (L = 3) around a hub tensor
net, plan = ctn.two_node_example_network()
scheme = ctn.make_scheme(ctn.CodeKind.TWO_NODE, plan)

print(f"plan {plan}, N = {plan.N}")
print(f"degree of the worker output: {ctn.degree(scheme)}")
for f in range(6):
    print(f"f = {f}: {ctn.f_resilient(scheme, f)} workers, {ctn.gain(scheme, f)} less than replication")

# every subset of 3 failed workers out of 26
report = ctn.run_experiment(net, scheme, 3, ctn.FailurePattern.adversarial(3))
print(f"{report.subsets_checked} failure subsets decoded, exact match: {report.exact_match}")
