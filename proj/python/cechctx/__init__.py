"""Exact contextuality analysis of empirical models."""

from ._cechctx import (
    Model,
    ValidationError,
    VerificationError,
    example_names,
    example_text,
    load,
    run,
)


def load_example(name):
    """Load one of the bundled example scenarios by name."""
    return load(example_text(name))


__all__ = [
    "Model",
    "ValidationError",
    "VerificationError",
    "example_names",
    "example_text",
    "load",
    "load_example",
    "run",
]
