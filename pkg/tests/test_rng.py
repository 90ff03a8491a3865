import numpy as np

from satlab import RngHandle


def test_same_handle_same_draws():
    a = RngHandle(12345).generator().random(100)
    b = RngHandle(12345).generator().random(100)
    assert np.array_equal(a, b)


def test_streams_and_children_differ():
    base = RngHandle(1)
    draws = {
        "base": base.generator().random(8).tolist(),
        "stream1": base.stream(1).generator().random(8).tolist(),
        "child0": base.child(0).generator().random(8).tolist(),
        "child1": base.child(1).generator().random(8).tolist(),
        "nested": base.stream(1).child(0).generator().random(8).tolist(),
    }
    seen = [tuple(v) for v in draws.values()]
    assert len(set(seen)) == len(seen)


def test_handles_are_value_objects():
    assert RngHandle(7).child(2) == RngHandle(7).child(2)
    assert RngHandle(7).stream(1) != RngHandle(7).stream(2)


def test_fingerprint_stable():
    h = RngHandle(99).stream(3).child(1)
    assert h.fingerprint() == h.fingerprint()
    assert h.fingerprint() != RngHandle(99).stream(3).child(2).fingerprint()
