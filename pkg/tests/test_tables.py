"""Golden reference tables regenerate from the formulas alone."""

import pytest

from rangetunnel.tables import render_table, reproduce_table


class TestReproduction:
    @pytest.mark.parametrize("which,rows", [(1, 7), (2, 7), (3, 4)])
    def test_all_cells_match(self, which, rows):
        result = reproduce_table(which)
        assert len(result.rows) == rows
        for row in result.rows:
            for cell in row.cells:
                assert cell.ok, f"{row.inputs} {cell.label}: {cell.computed} vs {cell.reference}"
        assert result.ok

    def test_rate_sweep_transmission_column(self):
        # T% strictly increasing with the rate, anchored to the printed cells
        result = reproduce_table(1)
        t_cells = [row.cells[0] for row in result.rows]
        refs = [73, 75, 79, 83, 87, 91, 95]
        assert [c.reference for c in t_cells] == refs
        computed = [c.computed for c in t_cells]
        assert all(b > a for a, b in zip(computed, computed[1:]))

    def test_vol_sweep_tail_cells_tight(self):
        result = reproduce_table(2)
        tail = result.rows[-3:]
        for row, ref in zip(tail, (83.95, 83.69, 83.64)):
            assert row.cells[0].reference == ref
            assert abs(row.cells[0].delta) <= 0.01

    def test_stock_cases_printed_precision(self):
        result = reproduce_table(3)
        by_symbol = {row.inputs["symbol"]: row for row in result.rows}
        assert abs(by_symbol["LNKD"].cells[2].delta) <= 1e-6
        assert abs(by_symbol["GOOG"].cells[1].delta) <= 1e-6  # d = 0.136068
        assert abs(by_symbol["HUM"].cells[1].delta) <= 1e-5
        assert abs(by_symbol["NFLX"].cells[1].delta) <= 1e-6

    def test_unknown_table_rejected(self):
        with pytest.raises(ValueError):
            reproduce_table(4)


class TestNegativeControl:
    def test_denominator_variant_breaks_tables(self):
        # moving (sigma^2 + r) under the denominator must wreck the sweeps
        for which in (1, 2, 3):
            assert not reproduce_table(which, prefactor_variant="denominator").ok

    def test_denominator_variant_rate_sweep_mid_row(self):
        result = reproduce_table(1, prefactor_variant="denominator")
        row = result.rows[2]  # r = 0.03
        assert row.inputs["r"] == 0.03
        assert abs(row.cells[0].computed - 79.0) > 1.0

    def test_unknown_variant_rejected(self):
        with pytest.raises(ValueError):
            reproduce_table(1, prefactor_variant="sideways")


class TestRendering:
    def test_render_shows_deltas_and_verdict(self):
        text = render_table(reproduce_table(3))
        assert "LNKD" in text
        assert "delta=" in text
        assert "all cells match" in text

    def test_render_flags_mismatches(self):
        text = render_table(reproduce_table(1, prefactor_variant="denominator"))
        assert "MISMATCH" in text
