"""Command-line interface of the unit disk embedding solver."""

from .embed import main as embed_main

__all__ = ["embed_main"]
