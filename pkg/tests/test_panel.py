"""Tests for panel parsing, alignment and cross rates."""

from datetime import date, timedelta

import numpy as np
import pytest

from fx_network.data.panel import (
    cross_rates,
    panel_slice,
    parse_panel,
    requote,
    serialize_panel,
)
from fx_network.data_models import RatePanel
from fx_network.errors import NotFoundError, PanelParseError, SizeError, ValidationError


def _csv(columns: dict[str, list[str]], n_days: int) -> str:
    """Panel CSV text with consecutive calendar dates from 2024-01-01."""
    start = date(2024, 1, 1)
    header = "date," + ",".join(columns)
    lines = [header]
    for i in range(n_days):
        cells = [columns[c][i] for c in columns]
        lines.append(",".join([(start + timedelta(days=i)).isoformat(), *cells]))
    return "\n".join(lines) + "\n"


def _values(n: int, first: float = 1.0) -> list[str]:
    return [repr(first + 0.01 * i) for i in range(n)]


class TestParsePanel:
    """Test parsing and the missing-data policy."""

    def test_well_formed(self) -> None:
        """Test that a small complete CSV parses into currencies x dates."""
        content = "date,EUR,GBP\n2024-01-02,0.9,0.8\n2024-01-03,0.91,0.79\n2024-01-04,0.92,0.78\n"
        panel = parse_panel(content, "USD")
        assert panel.currencies == ("EUR", "GBP", "USD")
        assert panel.n_dates == 3
        assert panel.dates[0] == date(2024, 1, 2)
        np.testing.assert_array_equal(panel.row("USD"), [1.0, 1.0, 1.0])
        np.testing.assert_array_equal(panel.row("GBP"), [0.8, 0.79, 0.78])
        assert panel.rejected == {}

    def test_short_gap_forward_filled(self) -> None:
        """Test that a single empty cell takes the previous day's value."""
        eur = _values(20)
        eur[10] = ""
        panel = parse_panel(_csv({"EUR": eur, "GBP": _values(20, 0.8)}, 20), "USD")
        assert panel.n_dates == 20
        assert panel.row("EUR")[10] == panel.row("EUR")[9]
        assert panel.filled_cells == 1

    def test_currency_with_too_many_gaps_rejected(self) -> None:
        """Test that a currency missing 10% of the dates is dropped with a reason."""
        gbp = _values(20, 0.8)
        gbp[3] = ""
        gbp[12] = ""
        panel = parse_panel(_csv({"EUR": _values(20), "GBP": gbp}, 20), "USD")
        assert "GBP" not in panel.currencies
        assert "GBP" in panel.rejected
        assert "10.0%" in panel.rejected["GBP"]

    def test_long_gap_drops_dates(self) -> None:
        """Test that gaps longer than max_gap are not filled and their dates are dropped."""
        eur = _values(100)
        for i in range(40, 44):
            eur[i] = ""
        panel = parse_panel(_csv({"EUR": eur, "GBP": _values(100, 0.8)}, 100), "USD")
        assert panel.n_dates == 96
        assert date(2024, 1, 1) + timedelta(days=40) not in panel.dates

    def test_leading_gap_not_filled(self) -> None:
        """Test that a gap with no earlier observation drops its dates."""
        eur = _values(100)
        eur[0] = ""
        panel = parse_panel(_csv({"EUR": eur, "GBP": _values(100, 0.8)}, 100), "USD")
        assert panel.n_dates == 99
        assert panel.dates[0] == date(2024, 1, 2)

    def test_invert(self) -> None:
        """Test that --invert style input is taken as reciprocals."""
        content = "date,EUR\n2024-01-02,2.0\n2024-01-03,4.0\n"
        panel = parse_panel(content, "USD", invert=True)
        np.testing.assert_allclose(panel.row("EUR"), [0.5, 0.25])

    def test_quote_column_must_be_one(self) -> None:
        """Test that a quote column other than 1 is rejected."""
        content = "date,EUR,USD\n2024-01-02,0.9,1.0\n2024-01-03,0.91,1.1\n"
        with pytest.raises(ValidationError):
            parse_panel(content, "USD")

    def test_short_row_reports_line(self) -> None:
        """Test that a row with a missing field names its line."""
        content = "date,EUR,GBP\n2024-01-02,0.9,0.8\n2024-01-03,0.9\n"
        with pytest.raises(PanelParseError) as exc:
            parse_panel(content, "USD")
        assert exc.value.line == 3
        assert "line 3" in str(exc.value)

    def test_long_row_reports_line(self) -> None:
        """Test that a row with an extra field is a parse error with a line number."""
        content = "date,EUR,GBP\n2024-01-02,0.9,0.8\n2024-01-03,0.9,0.8,0.7\n"
        with pytest.raises(PanelParseError) as exc:
            parse_panel(content, "USD")
        assert exc.value.line == 3

    def test_invalid_date(self) -> None:
        """Test that a non-ISO date is a parse error."""
        content = "date,EUR\n02/01/2024,0.9\n"
        with pytest.raises(PanelParseError, match="line 2"):
            parse_panel(content, "USD")

    def test_bad_header(self) -> None:
        """Test that the header must start with 'date'."""
        with pytest.raises(PanelParseError, match="line 1"):
            parse_panel("day,EUR\n2024-01-02,0.9\n", "USD")

    def test_invalid_code(self) -> None:
        """Test that currency codes must be three uppercase letters."""
        with pytest.raises(PanelParseError):
            parse_panel("date,eur\n2024-01-02,0.9\n", "USD")

    def test_non_positive_rate(self) -> None:
        """Test that zero or negative rates are validation errors."""
        with pytest.raises(ValidationError, match="Non-positive"):
            parse_panel("date,EUR\n2024-01-02,0.9\n2024-01-03,-0.1\n", "USD")

    def test_duplicate_date(self) -> None:
        """Test that repeated dates are validation errors."""
        with pytest.raises(ValidationError, match="Duplicate date"):
            parse_panel("date,EUR\n2024-01-02,0.9\n2024-01-02,0.91\n", "USD")

    def test_empty_file(self) -> None:
        """Test that an empty file is a parse error."""
        with pytest.raises(PanelParseError):
            parse_panel("", "USD")


class TestCrossRates:
    """Test synthesis of B/X series."""

    @pytest.fixture
    def panel(self) -> RatePanel:
        """Three currencies quoted in USD over two days."""
        content = "date,CHF,EUR,GBP\n2024-01-02,6.0,2.0,4.0\n2024-01-03,3.0,1.5,1.0\n"
        return parse_panel(content, "USD")

    def test_ratio(self, panel: RatePanel) -> None:
        """Test that B/X = (Q/X) / (Q/B)."""
        series = {s.price: s for s in cross_rates(panel, "EUR")}
        assert series["CHF"].values[0] == pytest.approx(3.0)
        assert series["GBP"].values[1] == pytest.approx(1.0 / 1.5)
        assert series["USD"].values[0] == pytest.approx(0.5)

    def test_base_is_quote(self, panel: RatePanel) -> None:
        """Test that the quote currency as base returns the panel rows unchanged."""
        series = {s.price: s for s in cross_rates(panel, "USD")}
        np.testing.assert_array_equal(series["CHF"].values, panel.row("CHF"))

    def test_series_count(self, panel: RatePanel) -> None:
        """Test that every base yields one series fewer than the panel has currencies."""
        for base in panel.currencies:
            series = cross_rates(panel, base)
            assert len(series) == len(panel.currencies) - 1
            assert base not in {s.price for s in series}

    def test_unknown_base(self, panel: RatePanel) -> None:
        """Test that a base outside the panel is a not-found error."""
        with pytest.raises(NotFoundError):
            cross_rates(panel, "JPY")

    def test_quote_invariance(self, block_panel: RatePanel) -> None:
        """Test that re-denominating the panel leaves every cross rate unchanged."""
        other = requote(block_panel, "AAC")
        for base in ("AAA", "QQQ"):
            before = {s.price: s.values for s in cross_rates(block_panel, base)}
            after = {s.price: s.values for s in cross_rates(other, base)}
            assert before.keys() == after.keys()
            for code, values in before.items():
                np.testing.assert_allclose(after[code], values, rtol=1e-12)


class TestPanelRoundTrip:
    """Test serialization and slicing."""

    def test_parse_serialize_parse(self, block_panel: RatePanel) -> None:
        """Test that a serialized panel parses back to the same panel."""
        again = parse_panel(serialize_panel(block_panel), block_panel.quote_currency)
        assert again.currencies == block_panel.currencies
        assert again.dates == block_panel.dates
        np.testing.assert_array_equal(again.rates, block_panel.rates)

    def test_serialized_header(self, block_panel: RatePanel) -> None:
        """Test that the serialized header follows the ingest schema."""
        first_line = serialize_panel(block_panel).splitlines()[0]
        assert first_line == "date," + ",".join(block_panel.currencies)

    def test_slice(self, block_panel: RatePanel) -> None:
        """Test that slices keep the half-open date range."""
        part = panel_slice(block_panel, 10, 30)
        assert part.n_dates == 20
        assert part.dates[0] == block_panel.dates[10]
        np.testing.assert_array_equal(part.rates, block_panel.rates[:, 10:30])

    def test_slice_out_of_range(self, block_panel: RatePanel) -> None:
        """Test that empty or out-of-range slices are size errors."""
        with pytest.raises(SizeError):
            panel_slice(block_panel, 10, 10)
        with pytest.raises(SizeError):
            panel_slice(block_panel, 0, block_panel.n_dates + 1)
