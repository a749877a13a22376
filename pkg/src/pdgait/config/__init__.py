from .config import parse_args, to_run_config, seed_everything, RunConfig, PathsConfig, BaselineConfig

__all__ = [
    "parse_args",
    "to_run_config",
    "seed_everything",
    "RunConfig",
    "PathsConfig",
    "BaselineConfig",
]
