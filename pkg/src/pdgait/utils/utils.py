import hashlib
from enum import Enum
from typing import Any, Union

import numpy as np


class NamedEnumMixin(object):
    @classmethod
    def get(cls, value: Union[str, Enum]):
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            try:
                return cls[value.upper()]
            except KeyError:
                pass
        raise ValueError(f"Invalid value {value} for {cls.__name__}")


def derive_seed(*parts: Any) -> int:
    """Stable 64-bit seed from arbitrary parts, independent of PYTHONHASHSEED.

    Example:
        >>> derive_seed(0, "walk_01", 3) == derive_seed(0, "walk_01", 3)
        True
    """
    digest = hashlib.blake2b(
        "\x1f".join(map(str, parts)).encode("utf-8"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "little")


def derive_rng(*parts: Any) -> np.random.Generator:
    return np.random.default_rng(derive_seed(*parts))
