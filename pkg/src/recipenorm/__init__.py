"""Normalise recipe ingredient text, map it to a food composition database and
build quantity-weighted recipe embeddings."""

__version__ = "0.1.0"
