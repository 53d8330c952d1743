import sqlite3

import pytest

from gerechte.database import CensusDatabase

LAYOUT = "2\n1 1\n2 2\n"


@pytest.fixture
def db_path(tmp_path):
    return str(tmp_path / "census.db")


def test_framework_ids_are_stable(db_path):
    with CensusDatabase(db_path) as db:
        first = db.get_or_create_framework(2, LAYOUT, "uniform mixed (1x2)")
        assert db.get_or_create_framework(2, LAYOUT) == first
        assert db.get_or_create_framework(2, "2\n1 2\n1 2\n") != first


def test_results_round_trip(db_path):
    with CensusDatabase(db_path) as db:
        framework_id = db.get_or_create_framework(2, LAYOUT, "uniform")
        db.store_result(framework_id, "brute", "realized", "1 2\n2 1\n", 4)
        db.store_result(framework_id, "uniform", "realized")
        rows = db.results(2)
        assert db.results(3) == []

    assert [row["method"] for row in rows] == ["brute", "uniform"]
    assert rows[0] == {
        "layout": LAYOUT,
        "labels": "uniform",
        "method": "brute",
        "status": "realized",
        "square": "1 2\n2 1\n",
        "assignments": 4,
    }
    assert rows[1]["square"] is None


def test_frameworks_without_results_are_not_recorded(db_path):
    with CensusDatabase(db_path) as db:
        db.get_or_create_framework(2, LAYOUT)
        assert db.results(2) == []


def test_read_only_mode(db_path):
    with CensusDatabase(db_path) as db:
        db.store_result(db.get_or_create_framework(2, LAYOUT), "brute", "realized")

    with CensusDatabase(db_path, read_only=True) as db:
        assert len(db.results(2)) == 1
        with pytest.raises(sqlite3.Error):
            db.get_or_create_framework(2, "2\n1 2\n1 2\n")
        with pytest.raises(sqlite3.Error):
            db.store_result(1, "brute", "realized")


def test_close(db_path):
    db = CensusDatabase(db_path)
    db.close()
    assert db.conn is None
    db.close()
