import numpy as np
import pytest

from beliefnet import (
    Evidence,
    HardEvidence,
    InvalidQueryError,
    Method,
    NotAPolytreeError,
    QueryClass,
    SoftEvidence,
    classify_query,
    infer,
    posterior,
)


def test_forward_serial(serial_net):
    c = classify_query(serial_net, "Z", Evidence({"X": HardEvidence(0)}))
    assert c.kind is QueryClass.FORWARD
    assert c.sub_verdicts == {"X": QueryClass.FORWARD}


def test_backward_diverging(diverging_net):
    # evidence below the target pulls belief against the arrows
    c = classify_query(diverging_net, "Y", Evidence({"X": HardEvidence(0)}))
    assert c.kind is QueryClass.BACKWARD
    assert c.sub_verdicts == {"X": QueryClass.BACKWARD}


def test_intercausal_diverging(diverging_net):
    # X and Z share the unobserved parent Y; X is neither ancestor
    # nor descendant of Z yet still moves it
    c = classify_query(diverging_net, "Z", Evidence({"X": HardEvidence(0)}))
    assert c.kind is QueryClass.INTERCAUSAL
    assert c.sub_verdicts == {"X": QueryClass.INTERCAUSAL}


def test_mixed_sprinkler(sprinkler_net):
    e = Evidence({"X2": HardEvidence(0), "X5": HardEvidence(0)})
    c = classify_query(sprinkler_net, "X3", e)
    assert c.kind is QueryClass.MIXED
    assert c.sub_verdicts == {"X2": QueryClass.INTERCAUSAL,
                              "X5": QueryClass.BACKWARD}


def test_separated_evidence_is_skipped(sprinkler_net):
    # X4 screens X1 off from X5, so only X4 is counted
    e = Evidence({"X4": HardEvidence(0), "X1": HardEvidence(0)})
    c = classify_query(sprinkler_net, "X5", e)
    assert c.kind is QueryClass.FORWARD
    assert c.sub_verdicts == {"X4": QueryClass.FORWARD}


def test_screened_descendant_is_skipped(serial_net):
    e = Evidence({"Y": HardEvidence(0), "Z": HardEvidence(0)})
    c = classify_query(serial_net, "X", e)
    assert c.kind is QueryClass.BACKWARD
    assert c.sub_verdicts == {"Y": QueryClass.BACKWARD}


def test_all_evidence_separated_is_mixed(converging_net):
    # the collider is unobserved, so the other parent carries nothing
    c = classify_query(converging_net, "X", Evidence({"Z": HardEvidence(0)}))
    assert c.kind is QueryClass.MIXED
    assert c.sub_verdicts == {}


def test_soft_evidence_participates(serial_net):
    c = classify_query(serial_net, "X", Evidence({"Z": SoftEvidence([0.9, 0.1])}))
    assert c.kind is QueryClass.BACKWARD


def test_classify_argument_checks(serial_net):
    with pytest.raises(InvalidQueryError):
        classify_query(serial_net, "Z", Evidence.empty())
    with pytest.raises(InvalidQueryError):
        classify_query(serial_net, "Z", Evidence({"Z": HardEvidence(0)}))
    with pytest.raises(ValueError):
        classify_query(serial_net, "nope", Evidence({"X": HardEvidence(0)}))


def test_infer_auto_on_polytree(serial_net):
    r = infer(serial_net, "Z", Evidence({"X": HardEvidence(0)}))
    assert r.method is Method.POLYTREE
    assert r.belief[0] == pytest.approx(0.809, abs=1e-12)
    assert r.classification.kind is QueryClass.FORWARD


def test_infer_auto_on_loopy(sprinkler_net):
    r = infer(sprinkler_net, "X3", Evidence({"X4": HardEvidence(0)}))
    assert r.method is Method.CUTSET
    assert r.belief[0] == pytest.approx(0.41380598176216116, abs=1e-12)


def test_infer_explicit_methods_agree(sprinkler_net):
    e = Evidence({"X5": HardEvidence(0)})
    by_enum = infer(sprinkler_net, "X2", e, Method.ENUMERATION)
    by_cut = infer(sprinkler_net, "X2", e, Method.CUTSET)
    assert by_enum.method is Method.ENUMERATION
    assert by_cut.method is Method.CUTSET
    assert np.allclose(by_enum.belief.probabilities,
                       by_cut.belief.probabilities, atol=1e-9)


def test_infer_polytree_method_rejects_loops(sprinkler_net):
    with pytest.raises(NotAPolytreeError):
        infer(sprinkler_net, "X3", Evidence({"X4": HardEvidence(0)}),
              Method.POLYTREE)


def test_infer_without_evidence(serial_net):
    r = infer(serial_net, "Y")
    assert r.classification is None
    assert np.allclose(r.belief.probabilities,
                       posterior(serial_net, "Y").probabilities, atol=1e-12)


def test_infer_rejects_hard_target(serial_net):
    with pytest.raises(InvalidQueryError):
        infer(serial_net, "Z", Evidence({"Z": HardEvidence(0)}))
