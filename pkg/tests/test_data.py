from concurrent.futures import ThreadPoolExecutor

from qftbell.data import SmearDatabase
from qftbell.data.data import version_key

KEY = dict(kind="hadamard", pair_hash="abc", mass=1e-8, settings_hash="def", method="qmc", **version_key())


def test_set_and_get():
    database = SmearDatabase()
    assert database.get_in_table("smeared_integral", **KEY) is None
    database.set_in_table("smeared_integral", KEY, dict(value=1.5, std_error=0.1))
    row = database.get_in_table("smeared_integral", **KEY)
    assert row["value"] == 1.5
    assert row["std_error"] == 0.1


def test_rows_are_replaced():
    database = SmearDatabase()
    database.set_in_table("smeared_integral", KEY, dict(value=1.5, std_error=0.1))
    database.set_in_table("smeared_integral", KEY, dict(value=2.5, std_error=0.2))
    assert database.count("smeared_integral") == 1
    assert database.get_in_table("smeared_integral", **KEY)["value"] == 2.5


def test_file_database_persists(tmp_path):
    path = tmp_path / "cache" / "smear.db"
    database = SmearDatabase(path)
    database.set_in_table("smeared_integral", KEY, dict(value=3.0, std_error=0.0))
    database.close()
    assert SmearDatabase(path).get_in_table("smeared_integral", **KEY)["value"] == 3.0


def test_concurrent_writers():
    database = SmearDatabase()

    def write(i):
        database.set_in_table("smeared_integral", {**KEY, "pair_hash": str(i % 5)}, dict(value=float(i % 5), std_error=0.0))

    with ThreadPoolExecutor(max_workers=8) as pool:
        list(pool.map(write, range(100)))
    assert database.count("smeared_integral") == 5
