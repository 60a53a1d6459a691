import csv
import os
import tempfile
import unittest
import orjson
from unipade.core import EUCLIDEAN, SupReport
from unipade.universal.verification import QMargin, UniversalityVerdict
from unipade.utils import (
    COEFFICIENT_COLUMNS,
    CSV_VERSION,
    MARGIN_COLUMNS,
    NORMALITY_COLUMNS,
    SUP_COLUMNS,
    TRANSCRIPT_COLUMNS,
    sup_rows,
    verdict_sups,
    write_csv,
)

COLUMNS_DOCUMENT = os.path.join(os.path.dirname(__file__), "..", "..", "docs", "schema", "v1", "csv_columns.json")


def sup(value, witness=1j):
    return SupReport(value, witness, 0, EUCLIDEAN, 40, 0.05)


class TestSupRows(unittest.TestCase):
    def test_rows_skip_missing_reports(self):
        rows = sup_rows([("approximation_K", sup(0.25, 2.5 + 0.25j)), ("pade_K", None)])
        self.assertEqual(len(rows), 1)
        self.assertEqual(
            rows[0],
            {
                "name": "approximation_K",
                "metric": EUCLIDEAN,
                "value": 0.25,
                "witness_re": 2.5,
                "witness_im": 0.25,
                "n_samples": 40,
                "mesh": 0.05,
            },
        )

    def test_verdict_pairs_per_q(self):
        verdict = UniversalityVerdict(
            found=True,
            n=1,
            p=3,
            threshold=0.1,
            margins=(QMargin(1, True, 0.01, 0.02, sup(0.01), sup(0.02)), QMargin(2, False, None, None)),
            searched=1,
        )
        names = [name for name, _ in verdict_sups(verdict)]
        self.assertEqual(names, ["K_q1", "L_q1", "K_q2", "L_q2"])
        self.assertEqual([row["name"] for row in sup_rows(verdict_sups(verdict))], ["K_q1", "L_q1"])

    def test_csv_header(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write_csv(os.path.join(directory, "sup.csv"), SUP_COLUMNS, sup_rows([("K", sup(0.5))]))
            with open(path, newline="") as handle:
                rows = list(csv.DictReader(handle))
        self.assertEqual(list(rows[0]), SUP_COLUMNS)
        self.assertEqual(rows[0]["csv_version"], "1")
        self.assertEqual(float(rows[0]["value"]), 0.5)


class TestDocumentedColumns(unittest.TestCase):
    def test_column_sets_match_the_reference(self):
        with open(COLUMNS_DOCUMENT, "rb") as handle:
            document = orjson.loads(handle.read())
        self.assertEqual(document["csv_version"], CSV_VERSION)
        files = document["files"]
        self.assertEqual(files["ctable.csv"], NORMALITY_COLUMNS)
        self.assertEqual(files["transcript.csv"], TRANSCRIPT_COLUMNS)
        self.assertEqual(files["sup.csv"], SUP_COLUMNS)
        self.assertEqual(files["margins.csv"], MARGIN_COLUMNS)
        self.assertEqual(files["coefficients.csv"], COEFFICIENT_COLUMNS)
        self.assertEqual(files["span_coefficients.csv"], COEFFICIENT_COLUMNS)


if __name__ == "__main__":
    unittest.main()
