"""Database management for census results.

This module stores the frameworks met by a census and the outcome of every
realization attempt, so an interrupted census can resume where it stopped.

Database Schema:
    frameworks:
        - id: INTEGER PRIMARY KEY AUTOINCREMENT
        - n: INTEGER NOT NULL
        - layout: TEXT UNIQUE NOT NULL (canonical grid serialization)
        - labels: TEXT (classification, e.g. "mixed divides (2x2)")

    results:
        - id: INTEGER PRIMARY KEY AUTOINCREMENT
        - framework_id: INTEGER NOT NULL (foreign key to frameworks.id)
        - method: TEXT NOT NULL
        - status: TEXT NOT NULL
        - square: TEXT (latin square text, when realized)
        - assignments: INTEGER (brute-force placements, when searched)

Indexes:
    - idx_frameworks_n: For per-order lookups
    - idx_results_framework_id: For quick framework lookups
"""

import sqlite3
import logging
from typing import Dict, List, Optional


class CensusDatabase:
    """Database manager for census results.

    The class can be used as a context manager:
        with CensusDatabase('census.db') as db:
            framework_id = db.get_or_create_framework(4, layout, "uniform")
            db.store_result(framework_id, "brute", "realized", square_text, 17)
    """

    def __init__(self, db_path: str, read_only: bool = False):
        """Initialize database connection and ensure schema exists.

        Args:
            db_path (str): Path to the SQLite database file
            read_only (bool, optional): Open database in read-only mode. Defaults to False.

        Raises:
            sqlite3.Error: If database connection fails.
        """
        self.db_path = db_path
        self.conn = None
        self.cursor = None
        self.read_only = read_only
        self._connect()
        if not self.read_only:
            self._init_schema()

    def _connect(self):
        try:
            if self.read_only:
                self.conn = sqlite3.connect(f"file:{self.db_path}?mode=ro", uri=True)
            else:
                self.conn = sqlite3.connect(self.db_path)
            self.cursor = self.conn.cursor()
        except Exception as e:
            logging.error(f"Failed to connect to database: {e}")
            raise

    def _init_schema(self):
        self.cursor.execute(
            """
            CREATE TABLE IF NOT EXISTS frameworks (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                n INTEGER NOT NULL,
                layout TEXT UNIQUE NOT NULL,
                labels TEXT
            )
        """
        )
        self.cursor.execute(
            """
            CREATE TABLE IF NOT EXISTS results (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                framework_id INTEGER NOT NULL,
                method TEXT NOT NULL,
                status TEXT NOT NULL,
                square TEXT,
                assignments INTEGER,
                FOREIGN KEY (framework_id) REFERENCES frameworks (id)
            )
        """
        )
        self.cursor.execute("CREATE INDEX IF NOT EXISTS idx_frameworks_n ON frameworks(n)")
        self.cursor.execute(
            "CREATE INDEX IF NOT EXISTS idx_results_framework_id ON results(framework_id)"
        )
        self.conn.commit()

    def get_or_create_framework(self, n: int, layout: str, labels: str = None) -> int:
        """Get a framework's ID, registering it if it is new.

        Args:
            n (int): Order of the framework
            layout (str): Canonical grid serialization
            labels (str, optional): Classification text

        Returns:
            int: Database ID of the framework

        Raises:
            sqlite3.Error: In read-only mode or if database operations fail
        """
        if self.read_only:
            raise sqlite3.Error("Cannot modify database in read-only mode.")

        self.cursor.execute("SELECT id FROM frameworks WHERE layout = ?", (layout,))
        row = self.cursor.fetchone()
        if row:
            return row[0]
        self.cursor.execute(
            "INSERT INTO frameworks (n, layout, labels) VALUES (?, ?, ?)", (n, layout, labels)
        )
        self.conn.commit()
        return self.cursor.lastrowid

    def store_result(
        self,
        framework_id: int,
        method: str,
        status: str,
        square: Optional[str] = None,
        assignments: Optional[int] = None,
    ):
        """Record the outcome of one realization attempt.

        Raises:
            sqlite3.Error: In read-only mode or if the insert fails
        """
        if self.read_only:
            raise sqlite3.Error("Cannot modify database in read-only mode.")
        self.cursor.execute(
            """
            INSERT INTO results (framework_id, method, status, square, assignments)
            VALUES (?, ?, ?, ?, ?)
            """,
            (framework_id, method, status, square, assignments),
        )
        self.conn.commit()

    def results(self, n: int) -> List[Dict]:
        """All results for order n, in insertion order."""
        self.cursor.execute(
            """
            SELECT f.layout, f.labels, r.method, r.status, r.square, r.assignments
            FROM results r JOIN frameworks f ON r.framework_id = f.id
            WHERE f.n = ?
            ORDER BY r.id
            """,
            (n,),
        )
        columns = ("layout", "labels", "method", "status", "square", "assignments")
        return [dict(zip(columns, row)) for row in self.cursor.fetchall()]

    def close(self):
        if self.conn:
            self.conn.close()
            self.conn = None
            self.cursor = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
