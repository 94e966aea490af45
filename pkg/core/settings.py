"""
Runtime settings
defaults.json, then AMPLE_* environment variables (a .env file is loaded
first), then explicit overrides from the command line.
"""

from pathlib import Path
from typing import Any, Dict, Literal, Optional
import json
import logging
import os

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger("ample.settings")

PROJECT_ROOT = Path(__file__).parent.parent
DEFAULTS_PATH = PROJECT_ROOT / "core" / "defaults.json"

REQUIRED_KEYS = [
    'max_degree', 'output_format', 'seed', 'size_bound',
    'log_level', 'log_format', 'corpus_path', 'dump_dir', 'suites',
]
SUITE_NAMES = ['adjunction', 'shapiro', 'functoriality', 'homotopy', 'kappa', 'invsemi']

ENV_OVERRIDES = {
    'AMPLE_MAX_DEGREE': ('max_degree', int),
    'AMPLE_SEED': ('seed', int),
    'AMPLE_SIZE_BOUND': ('size_bound', int),
    'AMPLE_LOG_LEVEL': ('log_level', str),
    'AMPLE_LOG_FORMAT': ('log_format', str),
    'AMPLE_DUMP_DIR': ('dump_dir', str),
}


class SuiteSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    instances: int = Field(..., ge=0, description="Randomized instances per run (0: corpus only)")
    max_degree: int = Field(..., ge=0)
    size_bound: Optional[int] = Field(None, ge=1, description="Arrow bound for this suite, capped by the global one")


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_degree: int = Field(4, ge=0)
    output_format: Literal["table", "json"] = "table"
    seed: int = 0
    size_bound: int = Field(24, ge=1, description="Maximum arrow count of randomized groupoids")
    log_level: str = "WARNING"
    log_format: Literal["text", "json"] = "text"
    corpus_path: str = "core/corpus.yaml"
    dump_dir: str = "counterexamples"
    suites: Dict[str, SuiteSettings]

    def suite(self, name: str) -> SuiteSettings:
        return self.suites[name]

    def resolve(self, path: str) -> Path:
        """Paths in the settings are relative to the project root"""
        candidate = Path(path)
        return candidate if candidate.is_absolute() else PROJECT_ROOT / candidate


def load_defaults(path: Path = DEFAULTS_PATH) -> Dict[str, Any]:
    if not path.exists():
        raise FileNotFoundError(f"Defaults not found at {path}")
    with open(path, 'r') as f:
        defaults = json.load(f)
    for key in REQUIRED_KEYS:
        if key not in defaults:
            raise ValueError(f"Defaults missing required key: {key}")
    missing = set(SUITE_NAMES) - set(defaults['suites'])
    if missing:
        raise ValueError(f"Defaults must configure every suite, missing: {sorted(missing)}")
    return defaults


def load_settings(
    defaults_path: Path = DEFAULTS_PATH,
    env_file: Optional[Path] = None,
    **overrides: Any,
) -> Settings:
    """Build Settings; overrides that are None are ignored"""
    values = load_defaults(defaults_path)
    load_dotenv(env_file or PROJECT_ROOT / ".env", override=False)
    for variable, (key, cast) in ENV_OVERRIDES.items():
        raw = os.environ.get(variable)
        if raw is not None:
            values[key] = cast(raw)
            logger.debug("%s overrides %s", variable, key)
    values.update({k: v for k, v in overrides.items() if v is not None})
    values.pop('settings_version', None)
    return Settings(**values)
