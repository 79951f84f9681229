import pytest
from pydantic import ValidationError

from src.config.moduli import MODULI, get_modulus
from src.config.settings import Settings, get_settings
from src.services.field_service import is_irreducible, x_is_primitive


class TestSettings:
    def test_defaults(self):
        settings = Settings()
        assert settings.SERVICE_NAME == "cyclic-codes"
        assert settings.OUTPUT_FORMAT == "json"
        assert settings.DISTANCE_MAX_WEIGHT is None

    def test_power_notation(self):
        settings = Settings(FIELD_MAX_PERIOD="2^14", ENUMERATION_LIMIT="1_000")
        assert settings.FIELD_MAX_PERIOD == 16384
        assert settings.ENUMERATION_LIMIT == 1000

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("WORKERS", "4")
        monkeypatch.setenv("SWEEP_MAX_FIELD", "3^8")
        settings = Settings()
        assert settings.WORKERS == 4
        assert settings.SWEEP_MAX_FIELD == 6561

    def test_output_format_is_checked(self):
        with pytest.raises(ValidationError):
            Settings(OUTPUT_FORMAT="xml")

    def test_skip_ids(self):
        assert Settings(CORPUS_SKIP_IDS="a, b,,c").corpus_skip_ids == ["a", "b", "c"]
        assert Settings(CORPUS_SKIP_IDS=["x", "y"]).corpus_skip_ids == ["x", "y"]

    def test_blank_weight_cap(self):
        assert Settings(DISTANCE_MAX_WEIGHT="").DISTANCE_MAX_WEIGHT is None

    def test_cached(self):
        assert get_settings() is get_settings()


class TestModuli:
    @pytest.mark.parametrize("key", sorted(MODULI))
    def test_table_entries_are_primitive(self, key):
        q, m = key
        coeffs = MODULI[key]
        assert len(coeffs) == m + 1 and coeffs[-1] == 1
        assert is_irreducible(coeffs, q)
        assert x_is_primitive(coeffs, q)

    def test_missing_entry(self):
        assert get_modulus(7, 9) is None
