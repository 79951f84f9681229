import pytest

from src.config.settings import get_settings
from src.services.field_service import field_service


@pytest.fixture
def gf8():
    """GF(2^3) with alpha^3 + alpha + 1 = 0"""
    return field_service.build_field(2, 3, [1, 1, 0, 1])


@pytest.fixture
def gf32():
    """GF(2^5) with alpha^5 + alpha^2 + 1 = 0"""
    return field_service.build_field(2, 5, [1, 0, 1, 0, 0, 1])


@pytest.fixture
def gf9():
    """GF(3^2) with alpha^2 + 2 alpha + 2 = 0"""
    return field_service.build_field(3, 2, [2, 2, 1])


@pytest.fixture
def gf27():
    """GF(3^3) with alpha^3 + 2 alpha + 1 = 0"""
    return field_service.build_field(3, 3, [1, 2, 0, 1])


@pytest.fixture
def gf25():
    """GF(5^2) with alpha^2 + 4 alpha + 2 = 0"""
    return field_service.build_field(5, 2, [2, 4, 1])


@pytest.fixture
def override_settings(monkeypatch):
    """Patch fields on the shared settings instance for one test"""
    settings = get_settings()

    def apply(**values):
        for name, value in values.items():
            monkeypatch.setattr(settings, name, value)
        return settings

    return apply
