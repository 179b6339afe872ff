# onebit/harness/__init__.py

from onebit.harness.models import ExperimentName, ExperimentResult, ExperimentSpec, SweepOverrides
from onebit.harness.writers import ArtifactWriter, build_manifest, describe_version, format_cell
from onebit.harness.runner import ExperimentRunner, default_trials, from_db, run, validate
from onebit.harness.cli import build_parser, build_spec, main

__all__ = [
    "ExperimentName",
    "ExperimentResult",
    "ExperimentSpec",
    "SweepOverrides",
    "ArtifactWriter",
    "build_manifest",
    "describe_version",
    "format_cell",
    "ExperimentRunner",
    "default_trials",
    "from_db",
    "run",
    "validate",
    "build_parser",
    "build_spec",
    "main",
]
