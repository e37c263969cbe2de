"""Query classification and the method-dispatching front door.

A posterior query is classified by where its evidence sits relative to
the target: evidence among the target's ancestors pushes belief forward
(predictive), evidence among descendants pulls it backward
(diagnostic), evidence elsewhere acts between causes of a shared
effect.  Evidence nodes that are d-separated from the target given the
rest contribute nothing and are skipped; disagreeing directions make
the query mixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import cutset as _cutset
from . import enumeration as _enumeration
from . import propagation as _propagation
from .errors import InvalidQueryError
from .model import BayesianNetwork, Belief, Evidence
from .structure import d_separated, is_polytree


class QueryClass(Enum):
    FORWARD = "Forward"
    BACKWARD = "Backward"
    INTERCAUSAL = "Intercausal"
    MIXED = "Mixed"


@dataclass(frozen=True)
class QueryClassification:
    """The aggregate class plus the per-evidence-node sub-verdicts.

    Sub-verdicts only list evidence nodes that actually influence the
    target; an influencing node is Forward when it is an ancestor of
    the target, Backward when a descendant, Intercausal otherwise.
    """

    kind: QueryClass
    sub_verdicts: dict[str, QueryClass]


def classify_query(net: BayesianNetwork, target: str, e: Evidence) -> QueryClassification:
    """Name the direction of reasoning a query performs."""
    net.var(target)
    if e.is_empty():
        raise InvalidQueryError("classification needs at least one evidence entry")
    if e.is_hard(target):
        raise InvalidQueryError(f"target {target!r} carries hard evidence")

    anc = net.ancestors(target)
    desc = net.descendants(target)
    subs: dict[str, QueryClass] = {}
    for v in net.variables:
        if v.id not in e.entries or v.id == target:
            continue
        rest = e.without(v.id)
        if d_separated(net, v.id, target, rest):
            continue
        if v.id in anc:
            subs[v.id] = QueryClass.FORWARD
        elif v.id in desc:
            subs[v.id] = QueryClass.BACKWARD
        else:
            subs[v.id] = QueryClass.INTERCAUSAL

    kinds = set(subs.values())
    if len(kinds) == 1:
        kind = kinds.pop()
    else:
        kind = QueryClass.MIXED
    return QueryClassification(kind, subs)


class Method(Enum):
    AUTO = "auto"
    ENUMERATION = "enum"
    POLYTREE = "bp"
    CUTSET = "cutset"


@dataclass(frozen=True, eq=False)
class InferResult:
    """A posterior plus how it was computed and what kind of query it was."""

    belief: Belief
    method: Method
    classification: QueryClassification | None


def infer(net: BayesianNetwork, target: str, e: Evidence = Evidence.empty(),
          method: Method = Method.AUTO) -> InferResult:
    """Answer a posterior query with the requested engine.

    AUTO picks message passing on polytrees and cutset conditioning on
    loopy networks.  The classification is attached whenever evidence
    is present.
    """
    net.var(target)
    if e.is_hard(target):
        raise InvalidQueryError(f"target {target!r} carries hard evidence")
    resolved = method
    if method is Method.AUTO:
        resolved = Method.POLYTREE if is_polytree(net) else Method.CUTSET
    if resolved is Method.ENUMERATION:
        belief = _enumeration.posterior(net, target, e)
    elif resolved is Method.POLYTREE:
        belief = _propagation.propagate(net, e).beliefs[target]
    else:
        belief = _cutset.conditioned_posterior(net, target, e)
    classification = None if e.is_empty() else classify_query(net, target, e)
    return InferResult(belief, resolved, classification)
