"""Tests for the append-only snapshot store."""

import json
import random
from datetime import datetime, timedelta, timezone

import pytest

from excellence.errors import CorruptionError, MissingFileError, OrderingError
from excellence.history import (
    QualitySnapshot,
    Trajectory,
    append_snapshot,
    load_trajectory,
)
from excellence.scanner import SourceStats

T0 = datetime(2026, 3, 1, 9, 30, 15, 123456, tzinfo=timezone.utc)


def make_stats(loc=100, comments=10, blanks=5, fors=2, whiles=1, name="mod.c"):
    return SourceStats(
        file_name=name,
        total_lines=loc + comments,
        comment_lines=comments,
        blank_lines=blanks,
        loc=loc,
        for_count=fors,
        while_count=whiles,
    )


def make_snapshot(project="alpha", t=0.0, errors=3, loc=100, **kwargs):
    return QualitySnapshot.create(
        project_id=project,
        wall_clock=T0 + timedelta(hours=t),
        t_hours=t,
        stats=make_stats(loc=loc, **kwargs),
        error_count=errors,
    )


def test_round_trip_preserves_everything(tmp_path):
    store = str(tmp_path / "store.jsonl")
    written = [make_snapshot(t=float(i), errors=i, loc=3) for i in range(4)]
    for snap in written:
        append_snapshot(store, snap)
    loaded = load_trajectory(store, "alpha")
    assert loaded.snapshots == tuple(written)


def test_loaded_floats_are_bit_identical(tmp_path):
    store = str(tmp_path / "store.jsonl")
    snap = make_snapshot(errors=2, loc=3)  # 66.666... exercises repr round-trip
    append_snapshot(store, snap)
    (loaded,) = load_trajectory(store, "alpha").snapshots
    assert loaded.metrics.error_level_percent == snap.metrics.error_level_percent
    assert loaded.metrics.degree_of_excellence == snap.metrics.degree_of_excellence
    assert loaded.t_hours == snap.t_hours
    assert loaded.wall_clock == snap.wall_clock


def test_store_is_one_json_object_per_line(tmp_path):
    store = tmp_path / "store.jsonl"
    append_snapshot(str(store), make_snapshot(t=0.0))
    append_snapshot(str(store), make_snapshot(t=1.0))
    lines = store.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2
    expected_fields = {
        "project", "wall_clock", "t_hours", "file", "total_lines",
        "comment_lines", "blank_lines", "loc", "for_count", "while_count",
        "errors", "el_percent", "x",
    }
    for line in lines:
        assert set(json.loads(line)) == expected_fields


def test_append_rejects_non_advancing_time(tmp_path):
    store = str(tmp_path / "store.jsonl")
    append_snapshot(store, make_snapshot(t=2.0))
    with pytest.raises(OrderingError) as err:
        append_snapshot(store, make_snapshot(t=2.0))
    assert err.value.exit_code == 7
    with pytest.raises(OrderingError):
        append_snapshot(store, make_snapshot(t=1.0))
    append_snapshot(store, make_snapshot(t=2.5))  # still appendable afterwards


def test_projects_are_ordered_independently(tmp_path):
    store = str(tmp_path / "store.jsonl")
    append_snapshot(store, make_snapshot(project="alpha", t=5.0))
    append_snapshot(store, make_snapshot(project="beta", t=1.0))
    append_snapshot(store, make_snapshot(project="alpha", t=6.0))
    append_snapshot(store, make_snapshot(project="beta", t=2.0))
    alpha = load_trajectory(store, "alpha")
    beta = load_trajectory(store, "beta")
    assert [s.t_hours for s in alpha.snapshots] == [5.0, 6.0]
    assert [s.t_hours for s in beta.snapshots] == [1.0, 2.0]


def test_unknown_project_loads_empty(tmp_path):
    store = str(tmp_path / "store.jsonl")
    append_snapshot(store, make_snapshot())
    assert len(load_trajectory(store, "nope")) == 0


def test_missing_store_raises(tmp_path):
    with pytest.raises(MissingFileError):
        load_trajectory(str(tmp_path / "absent.jsonl"), "alpha")


def test_blank_lines_are_skipped(tmp_path):
    store = tmp_path / "store.jsonl"
    append_snapshot(str(store), make_snapshot(t=0.0))
    store.write_text(store.read_text(encoding="utf-8") + "\n\n", encoding="utf-8")
    append_snapshot(str(store), make_snapshot(t=1.0))
    assert len(load_trajectory(str(store), "alpha")) == 2


def test_truncated_record_reports_line_number(tmp_path):
    store = tmp_path / "store.jsonl"
    append_snapshot(str(store), make_snapshot(t=0.0))
    append_snapshot(str(store), make_snapshot(t=1.0))
    text = store.read_text(encoding="utf-8").splitlines()
    store.write_text(text[0] + "\n" + text[1][: len(text[1]) // 2] + "\n",
                     encoding="utf-8")
    with pytest.raises(CorruptionError) as err:
        load_trajectory(str(store), "alpha")
    assert err.value.line_number == 2
    assert "line 2" in str(err.value)
    assert err.value.exit_code == 7


def test_tampered_metrics_detected(tmp_path):
    store = tmp_path / "store.jsonl"
    append_snapshot(str(store), make_snapshot(errors=2, loc=3))
    record = json.loads(store.read_text(encoding="utf-8"))
    record["x"] += 0.001
    store.write_text(json.dumps(record) + "\n", encoding="utf-8")
    with pytest.raises(CorruptionError) as err:
        load_trajectory(str(store), "alpha")
    assert "re-derive" in str(err.value)


def test_missing_and_extra_fields_detected(tmp_path):
    store = tmp_path / "store.jsonl"
    append_snapshot(str(store), make_snapshot())
    record = json.loads(store.read_text(encoding="utf-8"))
    dropped = dict(record)
    del dropped["loc"]
    store.write_text(json.dumps(dropped) + "\n", encoding="utf-8")
    with pytest.raises(CorruptionError) as err:
        load_trajectory(str(store), "alpha")
    assert "loc" in str(err.value)

    extra = dict(record)
    extra["bogus"] = 1
    store.write_text(json.dumps(extra) + "\n", encoding="utf-8")
    with pytest.raises(CorruptionError) as err:
        load_trajectory(str(store), "alpha")
    assert "bogus" in str(err.value)


def test_inconsistent_loc_detected(tmp_path):
    store = tmp_path / "store.jsonl"
    append_snapshot(str(store), make_snapshot())
    record = json.loads(store.read_text(encoding="utf-8"))
    record["total_lines"] += 1
    store.write_text(json.dumps(record) + "\n", encoding="utf-8")
    with pytest.raises(CorruptionError):
        load_trajectory(str(store), "alpha")


def test_out_of_order_file_detected_on_load(tmp_path):
    store = tmp_path / "store.jsonl"
    append_snapshot(str(store), make_snapshot(t=0.0))
    append_snapshot(str(store), make_snapshot(t=1.0))
    lines = store.read_text(encoding="utf-8").splitlines()
    store.write_text(lines[1] + "\n" + lines[0] + "\n", encoding="utf-8")
    with pytest.raises(CorruptionError) as err:
        load_trajectory(str(store), "alpha")
    assert err.value.line_number == 2


def test_zulu_timestamp_accepted(tmp_path):
    store = tmp_path / "store.jsonl"
    append_snapshot(str(store), make_snapshot(errors=0, loc=10))
    record = json.loads(store.read_text(encoding="utf-8"))
    record["wall_clock"] = "2026-03-01T09:30:15Z"
    store.write_text(json.dumps(record) + "\n", encoding="utf-8")
    (snap,) = load_trajectory(str(store), "alpha").snapshots
    assert snap.wall_clock == datetime(2026, 3, 1, 9, 30, 15, tzinfo=timezone.utc)


def test_bad_timestamp_rejected(tmp_path):
    store = tmp_path / "store.jsonl"
    append_snapshot(str(store), make_snapshot())
    record = json.loads(store.read_text(encoding="utf-8"))
    record["wall_clock"] = "yesterday"
    store.write_text(json.dumps(record) + "\n", encoding="utf-8")
    with pytest.raises(CorruptionError):
        load_trajectory(str(store), "alpha")


def test_interleaved_many_snapshot_round_trip(tmp_path):
    store = str(tmp_path / "store.jsonl")
    rng = random.Random(2026)
    written = {"alpha": [], "beta": []}
    t = {"alpha": 0.0, "beta": 0.0}
    for _ in range(50):
        project = rng.choice(("alpha", "beta"))
        t[project] += rng.uniform(0.1, 4.0)
        snap = make_snapshot(project=project, t=t[project],
                             errors=rng.randint(0, 40), loc=rng.randint(1, 2000))
        append_snapshot(store, snap)
        written[project].append(snap)
    for project, snaps in written.items():
        assert load_trajectory(store, project).snapshots == tuple(snaps)


def test_trajectory_validates_membership_and_order():
    a0 = make_snapshot(project="alpha", t=0.0)
    a1 = make_snapshot(project="alpha", t=1.0)
    b0 = make_snapshot(project="beta", t=0.5)
    with pytest.raises(ValueError):
        Trajectory(project_id="alpha", snapshots=(a0, b0))
    with pytest.raises(ValueError):
        Trajectory(project_id="alpha", snapshots=(a1, a0))
    assert len(Trajectory(project_id="alpha", snapshots=(a0, a1))) == 2


def test_snapshot_create_rejects_negative_time():
    with pytest.raises(ValueError):
        make_snapshot(t=-0.5)
