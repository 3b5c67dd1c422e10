import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List

import yaml

from ergodic_rl import __version__
from ergodic_rl.compound_types import PathLike
from ergodic_rl.settings import MANIFEST_FILE_NAME
from ergodic_rl.utils.io_utils import write_text_atomic

logger = logging.getLogger(__name__)


@dataclass
class RunEntry(object):
    """
    Outputs of one seed, at one grid point for sweeps.
    """
    seed: int
    files: List[str]
    wall_clock_seconds: float
    metrics: Dict[str, float] = field(default_factory=dict)
    grid_point: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:

        data = {
            'seed': self.seed,
            'wall_clock_seconds': round(self.wall_clock_seconds, 6),
            'files': list(self.files),
            'metrics': {key: float(value)
                        for key, value in self.metrics.items()},
        }
        if self.grid_point:
            data['grid_point'] = dict(self.grid_point)
        return data


@dataclass
class RunManifest(object):
    """
    Record of a completed experiment. Written last, so its presence marks
    the output directory as complete.
    """
    experiment: str
    config_hash: str
    artifact_version: str = __version__
    runs: List[RunEntry] = field(default_factory=list)
    files: List[str] = field(default_factory=list)

    @property
    def all_files(self) -> List[str]:
        """
        Return every file the manifest lists, sorted.
        """
        return sorted(set(self.files).union(
            *(run.files for run in self.runs)
        ))

    def to_dict(self) -> Dict[str, Any]:

        return {
            'experiment': self.experiment,
            'config_hash': self.config_hash,
            'artifact_version': self.artifact_version,
            'files': sorted(self.files),
            'runs': [run.to_dict() for run in self.runs],
        }

    def missing_from(self, output_dir: PathLike) -> List[str]:
        """
        Return files present in the output directory that the manifest does
        not list.
        """
        output_dir = Path(output_dir)
        listed = set(self.all_files)
        return sorted(
            str(path.relative_to(output_dir).as_posix())
            for path in output_dir.rglob('*')
            if path.is_file() and path.name != MANIFEST_FILE_NAME and
            str(path.relative_to(output_dir).as_posix()) not in listed
        )

    def write(self, output_dir: PathLike) -> Path:
        """
        Write manifest.yaml atomically into the output directory.
        """
        output_dir = Path(output_dir)
        missing = self.missing_from(output_dir)
        if missing:
            logger.warning(f'files not produced by this run: {missing}')
            self.files.extend(missing)
        path = write_text_atomic(
            yaml.safe_dump(self.to_dict(), sort_keys=False),
            output_dir / MANIFEST_FILE_NAME
        )
        logger.info(f'wrote manifest for {len(self.runs)} runs to {path}')
        return path


def read_manifest(file_path: PathLike) -> Dict[str, Any]:

    with open(file_path) as f:
        return yaml.safe_load(f)


def relative_paths(paths: List[Path], output_dir: Path) -> List[str]:

    return [path.relative_to(output_dir).as_posix() for path in paths]
