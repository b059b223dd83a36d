"""Exception types shared across the package."""


class OntosimError(Exception):
    """Base class for all errors raised by this package."""


class DumpError(OntosimError):
    """The entity dump stream itself is unreadable (not a single bad line)."""


class UnknownEntityError(OntosimError):
    """An entity id was queried that is not present in the store."""


class UnknownLanguageError(OntosimError):
    """A language was requested that was not retained/configured."""


class UndetectableTextError(OntosimError):
    """Language detection got empty or whitespace-only input."""


class ModelError(OntosimError):
    """A trained model is missing, untrained, or trained on invalid data."""


class ConfigError(OntosimError):
    """A configuration file or override is invalid."""
