"""Artifact persistence."""

from adaregret.storage.artifacts import ArtifactStore, format_cell, format_float, format_vector

__all__ = ["ArtifactStore", "format_cell", "format_float", "format_vector"]
