"""Shared fixtures: analyzers, models, fixture stores, generated corpora."""

from __future__ import annotations

import pytest

from kgfixtures import (
    FIXTURE_CLASSES,
    diamond_store,
    pi_store,
    rules_store,
    tax_store,
)
from ontosim.linking import LinkerConfig
from ontosim.text import (
    langid_samples,
    load_analyzers,
    train_profiles,
    train_topic_model,
)
from ontosim.text.topic import packaged_training_corpus


@pytest.fixture(scope="session")
def analyzers():
    return load_analyzers(["en", "es", "de", "fr", "ja", "zh"])


@pytest.fixture(scope="session")
def profiles(analyzers):
    return train_profiles(langid_samples(analyzers))


@pytest.fixture(scope="session")
def topic_model():
    return train_topic_model(packaged_training_corpus())


@pytest.fixture(scope="session")
def store_pi():
    return pi_store()


@pytest.fixture(scope="session")
def store_diamond():
    return diamond_store()


@pytest.fixture(scope="session")
def store_tax():
    return tax_store()


@pytest.fixture(scope="session")
def store_rules():
    return rules_store()


@pytest.fixture
def fixture_linker_config(analyzers):
    """Linker configuration bound to the fixture class ids and stop lists."""
    return LinkerConfig(
        class_ids=dict(FIXTURE_CLASSES),
        stopwords={lang: a.data.stopwords for lang, a in analyzers.items()},
    )
