"""
Building a network in code and asking it questions
==================================================

A three-node chain: a component fails, a sensor trips, an alarm rings.
"""

from beliefnet import (
    BayesianNetwork,
    Cpt,
    Evidence,
    HardEvidence,
    SoftEvidence,
    Variable,
    infer,
    marginal_joint,
    most_probable_assignment,
    posterior,
    validate,
)

net = BayesianNetwork(
    variables=(
        Variable("Fault", ("yes", "no")),
        Variable("Sensor", ("trip", "quiet")),
        Variable("Alarm", ("ring", "silent")),
    ),
    cpts=(
        Cpt("Fault", (), [0.02, 0.98]),
        # rows follow the parent's states: first Fault=yes, then Fault=no
        Cpt("Sensor", ("Fault",), [[0.97, 0.03], [0.05, 0.95]]),
        Cpt("Alarm", ("Sensor",), [[0.99, 0.01], [0.001, 0.999]]),
    ),
    name="alarm-chain",
)

problems = validate(net)
print("violations:", problems if problems else "none")

# prior belief in a fault, then after hearing the alarm
print("P(Fault) =", posterior(net, "Fault").probabilities)
heard = Evidence({"Alarm": HardEvidence(0)})
print("P(Fault | Alarm=ring) =", posterior(net, "Fault", heard).probabilities)

# a flaky witness: "pretty sure it rang" as a likelihood ratio of 4:1
maybe = Evidence({"Alarm": SoftEvidence([0.8, 0.2])})
print("P(Fault | witness) =", posterior(net, "Fault", maybe).probabilities)

# the front door picks the engine by structure; a chain is a polytree
result = infer(net, "Fault", heard)
print("engine:", result.method.value, "query class:", result.classification.kind.value)

# joint shape questions: table over two variables, and the single
# most probable full assignment
print("P(Fault, Alarm) =")
print(marginal_joint(net, ["Fault", "Alarm"]))
assignment, p = most_probable_assignment(net, heard)
print("most probable world given the alarm:", assignment, "p =", p)
