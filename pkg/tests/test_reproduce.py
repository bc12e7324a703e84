from __future__ import annotations

import json

import pytest

from maxarc import pg32_golden as G
from maxarc.field import parse_polynomial
from maxarc.reproduce import reproduce_pg32_report


@pytest.fixture(scope="module")
def report():
    return reproduce_pg32_report()


def test_no_unexplained_mismatch(report):
    assert report.mismatches() == []


def test_errata_are_the_fixed_conic_rows(report):
    errata = [c.name for c in report.checks if c.status == "erratum"]
    assert errata == [f"t-table case=1 sigma={s}" for s in (2, 4, 8, 16)]
    assert len(report.mismatches(strict=True)) == 4


def test_summary_and_headline_numbers(report):
    d = report.to_json()
    assert d["summary"] == {"match": len(report.checks) - 4, "erratum": 4, "mismatch": 0}
    assert (d["d_conics"], d["m_conics"], d["arc_count"], d["class_count"]) == (28, 84, 21, 3)
    json.dumps(d)


def test_t_table_csv(report):
    rows = report.t_table_csv().strip().splitlines()
    assert rows[0].startswith("case,sigma,t1")
    assert len(rows) == 1 + 5 + 5 + 4


def test_worked_example_arcs(report):
    names = {c.name: c for c in report.checks}
    assert names["constructed arc is the exponent arc"].observed == list(G.EXAMPLE_CLASS)
    assert names["theta-route arc concurrency point"].status == "match"


def test_other_modulus_gives_same_report():
    other = reproduce_pg32_report(parse_polynomial("x^5+x^3+1"))
    assert other.mismatches() == []
    assert [c.status for c in other.checks] == [c.status for c in reproduce_pg32_report().checks]
