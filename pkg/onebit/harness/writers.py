# onebit/harness/writers.py

"""
Artifact writers. CSV headers always carry units; floats are written with a
fixed format so identical runs produce identical bytes.
"""

import csv
import logging
import subprocess
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from onebit import __version__
from onebit.errors import ExperimentError
from backend.models.serialization import to_json

logger = logging.getLogger(__name__)

Column = Tuple[str, str]


def format_cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    if hasattr(value, "item"):
        return format_cell(value.item())
    return str(value)


def header(columns: Sequence[Column]) -> List[str]:
    return [f"{name} [{unit}]" for name, unit in columns]


class ArtifactWriter:
    """Writes CSVs and the run manifest under one output directory"""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.files: List[str] = []
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ExperimentError(f"cannot create output directory {self.output_dir}: {e}") from e

    def write_csv(self, filename: str, columns: Sequence[Column], rows: Iterable[Sequence[Any]]) -> Path:
        path = self.output_dir / filename
        try:
            with open(path, "w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(header(columns))
                for row in rows:
                    if len(row) != len(columns):
                        raise ExperimentError(f"{filename}: row has {len(row)} cells, header has {len(columns)}")
                    writer.writerow([format_cell(v) for v in row])
        except OSError as e:
            raise ExperimentError(f"cannot write {path}: {e}") from e
        self.files.append(filename)
        logger.info(f"Wrote {path}")
        return path

    def write_json(self, filename: str, payload: Any) -> Path:
        path = self.output_dir / filename
        try:
            path.write_text(to_json(payload) + "\n", encoding="utf-8")
        except OSError as e:
            raise ExperimentError(f"cannot write {path}: {e}") from e
        self.files.append(filename)
        logger.info(f"Wrote {path}")
        return path


def describe_version() -> str:
    """git describe of the working tree, falling back to the package version."""
    try:
        completed = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            capture_output=True,
            text=True,
            timeout=5,
            cwd=Path(__file__).resolve().parent,
        )
        if completed.returncode == 0 and completed.stdout.strip():
            return completed.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        pass
    return f"v{__version__}"


def build_manifest(
    experiment: str, seed: int, trials: int, processing: List[str], config: Dict[str, Any],
    files: List[str], timings: Dict[str, float], passed: bool, summary: Dict[str, float],
) -> Dict[str, Any]:
    return {
        "experiment": experiment,
        "seed": seed,
        "version": describe_version(),
        "trials": trials,
        "processing": processing,
        "config": config,
        "files": files,
        "timings_seconds": timings,
        "passed": passed,
        "summary": summary,
    }
