import json

import pytest

import aqtoda


def cp():
    return aqtoda.Presentation([("x", 1)], ["[x,x]"], 6)


def test_flag_counts():
    r = aqtoda.flag_report([0, 1], 2)
    assert r["f_vector"] == [4, 5, 2]
    assert r["base"]["f_vector"] == [3, 2]
    assert r["sphere"]
    assert aqtoda.flag_report([0, 1, 2], 2)["base"]["top_count"] == 6


def test_bad_flag_is_a_value_error():
    with pytest.raises(ValueError):
        aqtoda.flag_report([1, 0], 2)


def test_face_words():
    assert aqtoda.normalize_face_word([3, 3, 2]) == [2, 4, 5]


def test_hall_dims_match_oracle():
    gens = [("x", 1), ("y", 2)]
    dims = aqtoda.hall_basis_dims(gens, 6)
    assert dims == [aqtoda.lie_dim_oracle(gens, d) for d in range(1, 7)]


def test_resolution_round_trip():
    X = aqtoda.resolve(cp(), 3)
    assert X.top == 3 and X.identities_hold()
    dump = X.dump()
    assert aqtoda.Resolution.parse(dump).dump() == dump
    report = aqtoda.resolution_report(X, cp())
    assert report["pi0_matches"] and report["vanishing"]


def test_presentation_json():
    p = aqtoda.Presentation.from_json(json.dumps(cp().to_json()))
    assert [p.dim(d) for d in range(1, 4)] == [1, 0, 0]
    with pytest.raises(ValueError):
        aqtoda.Presentation.from_json("{\"generators\": [")


def test_cohomology_and_obstruction():
    X = aqtoda.resolve(cp(), 3)
    assert aqtoda.cohomology_dims(cp(), X, 2, "ones")[2] == 1
    beta = aqtoda.obstruction(cp(), X, 1)
    assert beta["vanishes"]


def test_existence_correspondence():
    r = aqtoda.verify_existence(cp(), aqtoda.resolve(cp(), 3), 1)
    assert r["pass"] and r["witnesses"]


def test_toda_matches_oracle():
    r = aqtoda.toda(5, oracle=True)
    assert r["total_dim"] <= 12
    assert r["oracle"] == {"sound": True, "complete": True}
