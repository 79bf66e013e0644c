"""Small longest path transversals in hereditary graph classes, certified by an exact oracle."""

__version__ = "0.1.0"
