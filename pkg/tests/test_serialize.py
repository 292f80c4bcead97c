"""File-format round trips.

Everything the tool writes it must parse back to an equal object, and a trace
file must itself be loadable as a complex file.
"""

import json

import pytest

from ghrv.errors import ParseError
from ghrv.fields import make_extension
from ghrv.pipelines import (
    RealizationTrace,
    TraceStage,
    complete_resolution_of_k,
    fixture_k,
    fixture_rank_one,
    realize,
    worked_ring,
)
from ghrv.serialize import (
    complex_from_obj,
    complex_to_obj,
    load_complex,
    load_ring,
    ring_from_obj,
    ring_to_obj,
    save_complex,
    save_ring,
    save_trace,
    trace_to_obj,
    variety_to_obj,
)
from ghrv.variety import IdealGens, ZeroSetUnion, proj_point, rank_variety


def test_ring_round_trip(ring5, ringq, tmp_path):
    for i, ring in enumerate((ring5, ringq, worked_ring(make_extension(3, 2)))):
        assert ring_from_obj(ring_to_obj(ring)) == ring
        path = tmp_path / f"ring{i}.json"
        save_ring(ring, path)
        assert load_ring(path) == ring


def test_ring_obj_wants_all_keys(ring5):
    with pytest.raises(ParseError):
        ring_from_obj({})
    obj = ring_to_obj(ring5)
    del obj["f"]
    with pytest.raises(ParseError):
        ring_from_obj(obj)


def test_complex_round_trip(ring5, tmp_path):
    for i, c in enumerate((fixture_rank_one(ring5), fixture_k(ring5), complete_resolution_of_k(ring5))):
        path = tmp_path / f"c{i}.json"
        save_complex(c, path)
        loaded = load_complex(path)
        assert loaded == c
        assert loaded.certified == c.certified
        assert loaded.degrees0 == c.degrees0
        assert loaded.degrees1 == c.degrees1


def test_complex_with_ring_by_path(ring5, tmp_path):
    save_ring(ring5, tmp_path / "ring.json")
    obj = complex_to_obj(fixture_k(ring5))
    obj["ring"] = "ring.json"
    path = tmp_path / "complex.json"
    path.write_text(json.dumps(obj))
    assert load_complex(path) == fixture_k(ring5)


def test_complex_obj_wants_all_keys(ring5):
    with pytest.raises(ParseError):
        complex_from_obj({})
    obj = complex_to_obj(fixture_k(ring5))
    del obj["periodic"]["B"]
    with pytest.raises(ParseError):
        complex_from_obj(obj)
    with pytest.raises(ParseError):
        complex_from_obj({"ring": ring_to_obj(ring5), "periodic": "nope"})


def test_variety_obj(ring5):
    v = rank_variety(fixture_rank_one(ring5))
    obj = variety_to_obj(v)
    assert obj["components"] == [
        {"generators": ["x1", "x2"]},
        {"generators": ["x1", "x2"]},
    ]
    assert "points" not in obj

    pts = [proj_point(ring5.field, (1, 0)), proj_point(ring5.field, (0, 1))]
    obj = variety_to_obj(v, points=pts)
    assert obj["points"] == {"field": "GF(5)", "members": [[1, 0], [0, 1]]}


def test_variety_obj_extension_points():
    f9 = make_extension(3, 2)
    ring = worked_ring(f9)
    v = rank_variety(fixture_k(ring))
    pt = proj_point(f9, (f9.one, f9.generator()))
    obj = variety_to_obj(v, points=[pt])
    assert obj["points"]["field"] == "GF(9)"
    assert obj["points"]["members"] == [[1, [0, 1]]]


def test_trace_file_is_a_complex_file(ring5, tmp_path):
    trace = realize(ring5, ["x1", "x2"])
    path = tmp_path / "trace.json"
    save_trace(trace, path)
    assert load_complex(path) == trace.final

    obj = json.loads(path.read_text())
    assert obj["requested-zero-set"] == ["x1", "x2"]
    records = obj["trace"]
    assert [r["size"] for r in records] == [8, 16, 32]
    assert records[0]["p"] is None
    assert records[1]["p"] == "x1"
    assert all(r["variety-summary"] == "contractible at every GF(5) point" for r in records)


def test_trace_summaries(ring5):
    skipped = realize(ring5, ["x1"], verify=False)
    obj = trace_to_obj(skipped)
    assert all(r["variety-summary"] == "pointwise data not enumerated" for r in obj["trace"])

    pts = (proj_point(ring5.field, (1, 0)), proj_point(ring5.field, (0, 1)))
    hand = RealizationTrace(
        ring5,
        [TraceStage(None, fixture_k(ring5), noncontractible=pts)],
        ZeroSetUnion(ring5.kx, (IdealGens(ring5.kx, ()),)),
    )
    obj = trace_to_obj(hand)
    assert obj["trace"][0]["variety-summary"] == "noncontractible over GF(5): (1:0), (0:1)"
    assert obj["requested-zero-set"] == []
