"""
Print the resolved configuration:

    python -m pdgait.config [file.yaml ...] [key=value ...]
"""
import sys
from typing import Sequence

import pyaml
from omegaconf import OmegaConf

from ..errors import PdGaitError
from .config import parse_args, to_run_config


def print_config(args: Sequence[str] = None):
    conf = parse_args(args)
    # Instantiating runs the validation of every section
    to_run_config(conf)
    print(
        pyaml.dump(OmegaConf.to_container(conf), safe=True, sort_dicts=False, force_embed=True),
        end="",
    )


if __name__ == "__main__":
    try:
        print_config()
    except PdGaitError as e:
        sys.exit(str(e))
