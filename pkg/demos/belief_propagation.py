"""
Message passing on a polytree
=============================

One collect/distribute sweep computes every node's posterior at once,
plus the probability of the evidence itself.
"""

from pathlib import Path

from beliefnet import Evidence, HardEvidence, SoftEvidence, fixed_point_delta, load_network, propagate

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

net = load_network(FIXTURES / "serial.bn")

store = propagate(net, Evidence({"X": HardEvidence(0)}))
print("beliefs after observing X=true:")
for v in net.variables:
    print(" ", v.id, store.beliefs[v.id].probabilities)
print("P(evidence) =", store.evidence_mass)

# every message the sweep sent, in schedule order
print("\nmessage log:")
for line in store.trace:
    print(" ", line)

# soft evidence slots into the same sweep: a likelihood over Y's states
soft = Evidence({"Y": SoftEvidence([0.5, 0.2])})
store = propagate(net, soft)
print("\nwith a 0.5:0.2 likelihood on Y:")
print("  P(X) =", store.beliefs["X"].probabilities)
print("  P(evidence) =", store.evidence_mass)

# the sweep is a fixed point: recomputing any message changes nothing
print("fixed point residual:", fixed_point_delta(net, soft, store))

# and the answers do not depend on where the schedule is rooted
for pivot in ("X", "Y", "Z"):
    s = propagate(net, soft, pivot=pivot)
    print(f"  pivot {pivot}: P(Z) = {s.beliefs['Z'].probabilities}")
