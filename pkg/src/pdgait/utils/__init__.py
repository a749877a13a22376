from .utils import NamedEnumMixin, derive_seed, derive_rng

__all__ = ["NamedEnumMixin", "derive_seed", "derive_rng"]
