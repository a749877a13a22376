import dataclasses
import sys
from typing import Optional, Dict, List, Sequence

from omegaconf import OmegaConf, DictConfig
from omegaconf.errors import OmegaConfBaseException

from ..datasets import CohortSpec
from ..errors import ValidationError, PdGaitError
from ..evaluation import EvaluationConfig
from ..features import FeaturesConfig
from ..gaitevents import EventsConfig
from ..preprocessing import PreprocessConfig, AugmentationConfig


@dataclasses.dataclass
class PathsConfig(object):
    manifest: Optional[str] = None
    output_dir: str = "./runs/pdgait"
    mapping: Optional[str] = None
    features: Optional[str] = None
    clips: Optional[str] = None
    # provider name → embedding CSV
    embeddings: Dict[str, str] = dataclasses.field(default_factory=dict)


@dataclasses.dataclass
class BaselineConfig(object):
    """Built-in statistical embedding provider"""

    n_augmented: int = 1
    augmentation: AugmentationConfig = dataclasses.field(default_factory=AugmentationConfig)


@dataclasses.dataclass
class RunConfig(object):
    subcommand: str = "benchmark"
    force: bool = False
    # Methods to benchmark: "features", "baseline" and the names of embedding files
    methods: List[str] = dataclasses.field(default_factory=lambda: ["features", "baseline"])
    paths: PathsConfig = dataclasses.field(default_factory=PathsConfig)
    preprocess: PreprocessConfig = dataclasses.field(default_factory=PreprocessConfig)
    events: EventsConfig = dataclasses.field(default_factory=EventsConfig)
    features: FeaturesConfig = dataclasses.field(default_factory=FeaturesConfig)
    baseline: BaselineConfig = dataclasses.field(default_factory=BaselineConfig)
    evaluation: EvaluationConfig = dataclasses.field(default_factory=EvaluationConfig)
    synth: CohortSpec = dataclasses.field(default_factory=CohortSpec)


def seed_everything(conf: DictConfig, seed: int):
    """Set every seed of the run from a single value"""
    conf.evaluation.seed = seed
    conf.evaluation.forest.seed = seed
    conf.evaluation.linear_head.seed = seed
    conf.baseline.augmentation.seed = seed
    conf.synth.seed = seed


def parse_args(args: Sequence[str] = None) -> DictConfig:
    """Structured defaults, then yaml files and ``key=value`` overrides in order"""
    args = sys.argv[1:] if args is None else args
    conf = OmegaConf.structured(RunConfig)
    try:
        for s in args:
            if s.endswith(".yaml"):
                conf = OmegaConf.merge(conf, OmegaConf.load(s))
            else:
                conf.merge_with_dotlist([s])
    except FileNotFoundError as e:
        raise ValidationError(f"Config file not found: {e.filename}") from None
    except OmegaConfBaseException as e:
        raise ValidationError(f"Invalid configuration: {e}") from None
    return conf


def to_run_config(conf: DictConfig) -> RunConfig:
    """Instantiate the dataclasses, running their validation"""
    try:
        return OmegaConf.to_object(conf)
    except PdGaitError:
        raise
    except OmegaConfBaseException as e:
        raise ValidationError(f"Invalid configuration: {e}") from None
