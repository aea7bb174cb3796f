import logging
import sqlite3
import threading
from pathlib import Path

from qftbell.constants import REPO, VERSION

logger = logging.getLogger(__name__)


class SmearDatabase:
    """
    A wrapper around the sqlite connection holding cached smeared integrals.

    One connection is shared by all threads and serialized by a lock. Rows are
    written with INSERT OR REPLACE: the last writer of a key wins.
    """

    def __init__(self, path: Path = None, initialize: bool = True):
        self.db_url = ":memory:" if path is None else str(path)
        if path is not None:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._connection = sqlite3.connect(self.db_url, check_same_thread=False)
        if initialize:
            self.initialize()

    def query(self, *query):
        with self._lock:
            cursor = self._connection.execute(*query)
            self._connection.commit()
            return cursor

    def initialize(self):
        """
        Create the database tables.
        """
        with open(REPO / "qftbell" / "data" / "initialise.sql", "r") as f:
            full_query = f.read()
        # Split the query into individual queries.
        for query in full_query.split(";"):
            if query.strip():
                self.query(query)

    def get_in_table(self, table_name: str, **kwargs):
        """
        Find a row in a table.

        Args:
            table_name (str): The name of the table.
            **kwargs: The column names and values to match.

        Returns:
            dict: The row, or None.
        """
        query = f"SELECT * FROM {table_name} WHERE "
        query += " AND ".join([f"{k} = ?" for k in kwargs.keys()])
        with self._lock:
            cursor = self._connection.execute(query, tuple(kwargs.values()))
            result = cursor.fetchone()
            if result is None:
                return None
            columns = [column[0] for column in cursor.description]
        return dict(zip(columns, result))

    def set_in_table(self, table_name: str, match: dict, update: dict):
        """
        Insert a row, replacing any row with the same key.

        Args:
            table_name (str): The name of the table.
            match (dict): The key columns.
            update (dict): The value columns.
        """
        full_entry = {**match, **update}
        insertor = (
            f"INSERT OR REPLACE INTO {table_name} ("
            + ", ".join(full_entry.keys())
            + ") VALUES ("
            + ", ".join(["?" for _ in full_entry])
            + ")"
        )
        self.query(insertor, tuple(full_entry.values()))

    def count(self, table_name: str) -> int:
        return self.query(f"SELECT COUNT(*) FROM {table_name}").fetchone()[0]

    def close(self):
        with self._lock:
            self._connection.close()


def version_key() -> dict:
    return dict(api_version=VERSION)
