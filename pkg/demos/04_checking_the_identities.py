# # Checking the bracket identities
#
# Each verification suite returns a Verdict with the number of inputs checked,
# how many gave a nonzero intermediate result, and the first counterexample if
# any. The same suites back the `graphcx verify` command.

from graphcx.verify import (find_reducible_counterexample, suite_dsquare, suite_phi1,
                            suite_theorem1, suite_theorem3)

print(suite_dsquare(max_loops=3).to_dict())
print(suite_phi1(max_loops=3).to_dict())


# Anticommutation of the fusion brackets on a handful of seeded tensors.

print(suite_theorem1(trials=6, seed=1).to_dict())


# The compatibility of fusion with fission holds on irreducible graphs...

v = suite_theorem3(trials=12, seed=7)
print(v.passed, v.checked, v.nontrivial)


# ...but not on the full complex. Here is a pair with a bridge where it fails.

ce = find_reducible_counterexample()
print(ce["X"], ce["Y"], ce["terms"], "nonzero terms")
