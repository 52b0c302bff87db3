"""Shared test fixtures: repository paths and ready-parsed property files."""

from __future__ import annotations

from pathlib import Path

import pytest

from slicemon.specfile import parse_property_spec

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def locking_spec():
    return parse_property_spec((FIXTURES / "locking.spec").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def hasnext_spec():
    return parse_property_spec((FIXTURES / "hasnext.spec").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def unsafeiter_spec():
    return parse_property_spec((FIXTURES / "unsafeiter.spec").read_text(encoding="utf-8"))
