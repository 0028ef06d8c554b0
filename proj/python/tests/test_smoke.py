import json
import math

import pytest

import coarsebox as cb


def cycle_band(space, n, s):
    pairs = [(x, y) for x in range(n) for y in range(n) if min(abs(x - y), n - abs(x - y)) <= s]
    return cb.Relation(space, [pairs])


def test_relation_algebra():
    sp = cb.BoxSpace([6])
    t = cycle_band(sp, 6, 1)
    assert cb.compose(t, t) == cycle_band(sp, 6, 2)
    assert cb.inverse(t) == t
    assert cb.ball(t, 0, [2]) == [1, 2, 3]
    assert len(cb.Relation.diagonal(sp)) == 6


def test_label_and_norm():
    sp = cb.BoxSpace([12])
    t = cycle_band(sp, 12, 1)
    label = cb.build_label(t)
    assert cb.verify_label(label)
    adj = cb.PropagationOperator.adjacency(t)
    assert cb.operator_norm(adj, 0) == pytest.approx(2.0, rel=1e-12)
    report = cb.localization_ratio(adj, t, 0)
    assert report.best_ratio == pytest.approx(math.sqrt(3) / 2, rel=1e-12)


def test_boundary_ratio_and_folner():
    sp = cb.BoxSpace([20])
    t = cycle_band(sp, 20, 1)
    r = cb.min_boundary_ratio(t, cycle_band(sp, 20, 2), 0)
    assert r.min_ratio == pytest.approx(7 / 5, rel=1e-14)
    assert r.exact
    search = cb.folner_search(t, 0, 0.3, max_radius=4)
    assert search.certified
    assert search.ratio == pytest.approx(9 / 7, rel=1e-14)


def test_ball_average_epsilon():
    sp = cb.BoxSpace([30])
    t = cycle_band(sp, 30, 1)
    assert cb.ball_average_epsilon(t, t, 0, 3) == pytest.approx(math.sqrt(2 / 7), abs=1e-12)


def test_space_files_and_cli(tmp_path):
    text = cb.gen("cycles", [6])
    ws = cb.parse_space(text)
    assert len(ws.relation) == 18
    assert ws.weights[0] == pytest.approx([1 / 6] * 6)
    path = tmp_path / "c.txt"
    path.write_text(cb.gen("cycles", [100]))
    code, out, _ = cb.run_cli(["folner", str(path), "--eps", "0.1"])
    assert code == 0
    assert json.loads(out)["per_component"][0]["band"] == 10


def test_errors_are_python_exceptions():
    with pytest.raises(cb.CoarseboxError):
        cb.parse_space("format coarse-space 9\n")
    with pytest.raises(ValueError):
        cb.BoxSpace([0])
