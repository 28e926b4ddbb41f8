"""Arithmetic cost model and the comparison-table renderer."""

import csv
import io
import math
from fractions import Fraction

import pytest

from varband.complexity import (
    PUBLISHED_BASELINES,
    comparison_table,
    fft_costs,
    rates,
    round_half_away_display,
)


@pytest.mark.parametrize("n_fft", [4, 8, 16, 32, 64, 128, 256, 1024])
def test_fft_cost_formulas(n_fft):
    q = int(math.log2(n_fft))
    c_mf, c_a = fft_costs(n_fft)
    # The closed forms contain half-integer coefficients but the totals
    # are exact integers for every power of two.
    assert 2 * c_mf == n_fft * q - 3 * n_fft + 4
    assert 2 * c_a == 3 * n_fft * q - 5 * n_fft + 8
    assert c_mf >= 0 and c_a > 0


@pytest.mark.parametrize("bad", [0, 1, 2, 3, 6, 12, 100])
def test_fft_costs_rejects_non_power_of_two(bad):
    with pytest.raises(ValueError):
        fft_costs(bad)


def test_rates_narrow_configuration_exact():
    rep = rates(128, 31, 15)
    assert rep.block_advance == 98
    assert rep.fixed_multiplications == Fraction(516, 98)
    assert rep.variable_multiplications == Fraction(30, 98)
    assert rep.additions == Fraction(2056, 98)
    assert rep.fixed_multiplications_delta == 0
    assert rep.additions_delta == 0
    assert rep.memory_words == 15
    assert rep.reconfiguration_per_sample == Fraction(1, 98)


def test_rates_rejects_overlong_filter():
    with pytest.raises(ValueError):
        rates(128, 129, 5)


def test_as_row_display_values():
    row = rates(128, 31, 15).as_row("proposed", sbml_db=-56.1, sbe_db=-88.9)
    assert row["label"] == "proposed"
    assert (row["L"], row["N"], row["M"]) == (31, 128, 98)
    assert row["R_mf"] == pytest.approx(516 / 98)
    assert row["Mem"] == 15
    assert row["SBML"] == -56.1

    table = comparison_table([row], fmt="csv")
    cells = table.splitlines()[1].split(",")
    assert cells[4] == "5.3"
    assert cells[5] == "0.3"
    assert cells[6] == "21"
    assert cells[7] == "0"
    assert cells[8] == "0"
    assert cells[9] == "15"


def test_time_domain_design_row_display():
    # Same engine run with the shorter filter (L = 29 keeps M = 100):
    # 516/100 = 5.16 shows as 5.2 with half-away rounding.
    row = rates(128, 29, 14).as_row("td")
    table = comparison_table([row], fmt="csv")
    cells = table.splitlines()[1].split(",")
    assert cells[4] == "5.2"


@pytest.mark.parametrize(
    "value, shown",
    [
        (0.25, 0.3),
        (-0.25, -0.3),
        (5.26, 5.3),
        (5.24, 5.2),
        (20.98, 21.0),
        (0.0, 0.0),
        (-5.15, -5.2),
    ],
)
def test_round_half_away_display(value, shown):
    assert round_half_away_display(value) == pytest.approx(shown)


def test_published_baseline_shape():
    assert set(PUBLISHED_BASELINES) == {"narrow_range", "rounded_spec"}
    for rows in PUBLISHED_BASELINES.values():
        assert len(rows) == 3
        for row in rows:
            assert {"label", "L", "N", "M", "R_mf", "R_mv", "R_a",
                    "R_md", "R_ad", "Mem", "SBML", "SBE"} <= set(row)
        # Farrow structures have no transform, so N and M stay blank.
        assert rows[0]["N"] is None and rows[0]["M"] is None


def test_markdown_table_layout():
    rows = PUBLISHED_BASELINES["narrow_range"]
    text = comparison_table(rows, fmt="md")
    lines = text.splitlines()
    assert len(lines) == 2 + len(rows)
    assert lines[0].startswith("| label")
    assert set(lines[1]) <= {"|", "-"}
    assert "| 5.3" in lines[4]
    assert "| -83.6" in lines[4]
    # Missing transform length renders as a dash.
    assert "| -" in lines[2]


def test_csv_table_parses():
    rows = PUBLISHED_BASELINES["rounded_spec"]
    text = comparison_table(rows, fmt="csv")
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0][:4] == ["label", "L", "N", "M"]
    assert len(parsed) == 1 + len(rows)
    assert parsed[3][10] == "-61.2"
    assert parsed[3][11] == "-86.9"


def test_empty_table_is_header_only():
    assert comparison_table([], fmt="csv") == (
        "label,L,N,M,R_mf,R_mv,R_a,R_md,R_ad,Mem,SBML,SBE\n"
    )
    md = comparison_table([], fmt="md").splitlines()
    assert len(md) == 2


def test_table_rejects_unknown_format():
    with pytest.raises(ValueError):
        comparison_table([], fmt="tex")
