from __future__ import annotations

import dataclasses
from typing import Sequence, Optional, Mapping, Tuple, Union, List, Dict

import numpy as np
import pandas as pd

from ..errors import ValidationError

# Semantic roles used by event detection, features and normalization
ROLES = (
    "sacrum",
    "left_ankle",
    "right_ankle",
    "left_hip",
    "right_hip",
    "left_shoulder",
    "right_shoulder",
)


class JointLayout(object):
    """Ordered joint names with a parent tree, name lookup backed by pandas"""

    def __init__(
        self,
        layout_id: str,
        joint_names: Sequence[str],
        parents: Sequence[Optional[str]],
        roles: Optional[Mapping[str, str]] = None,
        mirror_pairs: Sequence[Tuple[str, str]] = (),
    ):
        names = pd.Series(list(joint_names))
        if not names.is_unique:
            raise ValidationError(f"Layout {layout_id}: joint names must be unique")
        if len(parents) != len(names):
            raise ValidationError(f"Layout {layout_id}: one parent per joint required")

        self.layout_id = layout_id
        self._id_to_str = names
        self._str_to_id = pd.Series(names.index, index=names.values)
        self.parent_of = np.array(
            [-1 if p is None else self._index_or_raise(p) for p in parents]
        )
        self.roles = dict(roles or {})
        for name in self.roles.values():
            self._index_or_raise(name)
        self.mirror_pairs = [(a, b) for a, b in mirror_pairs]
        self._check_tree()

    def _index_or_raise(self, name: str) -> int:
        try:
            return int(self._str_to_id.loc[name])
        except KeyError:
            raise ValidationError(
                f"Layout {self.layout_id}: unknown joint {name}"
            ) from None

    def _check_tree(self):
        roots = np.flatnonzero(self.parent_of < 0)
        if len(roots) != 1:
            raise ValidationError(
                f"Layout {self.layout_id}: expected exactly one root, got {len(roots)}"
            )
        # Every joint must reach the root without cycles
        for j in range(self.joint_count):
            seen = set()
            while self.parent_of[j] >= 0:
                if j in seen:
                    raise ValidationError(f"Layout {self.layout_id}: cycle at joint {j}")
                seen.add(j)
                j = self.parent_of[j]

    @property
    def joint_names(self) -> List[str]:
        return self._id_to_str.tolist()

    @property
    def joint_count(self) -> int:
        return len(self._id_to_str)

    @property
    def root(self) -> int:
        return int(np.flatnonzero(self.parent_of < 0)[0])

    def index(self, name: Union[str, Sequence[str]]):
        if isinstance(name, str):
            return self._index_or_raise(name)
        return [self._index_or_raise(n) for n in name]

    def role(self, role: str) -> int:
        try:
            return self.index(self.roles[role])
        except KeyError:
            raise ValidationError(
                f"Layout {self.layout_id} does not define the {role} joint"
            ) from None

    def mirror_permutation(self) -> np.ndarray:
        """Index permutation that swaps left and right joints, an involution"""
        perm = np.arange(self.joint_count)
        for a, b in self.mirror_pairs:
            ia, ib = self.index(a), self.index(b)
            perm[ia], perm[ib] = ib, ia
        return perm

    def __len__(self):
        return self.joint_count

    def __repr__(self):
        return f"{self.__class__.__name__}({self.layout_id}, joints={self.joint_count})"


@dataclasses.dataclass(frozen=True)
class CopyFrom(object):
    source: str


@dataclasses.dataclass(frozen=True)
class WeightedAverage(object):
    sources: Tuple[Tuple[str, float], ...]


@dataclasses.dataclass
class JointMapping(object):
    source_layout: JointLayout
    target_layout: JointLayout
    rules: Dict[str, Union[CopyFrom, WeightedAverage]]

    def __post_init__(self):
        targets = set(self.target_layout.joint_names)
        if set(self.rules) != targets:
            missing = sorted(targets - set(self.rules))
            extra = sorted(set(self.rules) - targets)
            raise ValidationError(
                f"Mapping must define exactly one rule per target joint, "
                f"missing={missing} unknown={extra}"
            )
        for target, rule in self.rules.items():
            if isinstance(rule, CopyFrom):
                self.source_layout.index(rule.source)
            else:
                weights = np.array([w for _, w in rule.sources], dtype=float)
                if len(weights) == 0 or (weights <= 0).any():
                    raise ValidationError(f"Mapping {target}: weights must be positive")
                if abs(weights.sum() - 1) > 1e-9:
                    raise ValidationError(
                        f"Mapping {target}: weights must sum to 1, got {weights.sum()}"
                    )
                self.source_layout.index([n for n, _ in rule.sources])

    def matrix(self) -> np.ndarray:
        """[target joints, source joints] weights, each row summing to 1"""
        m = np.zeros((self.target_layout.joint_count, self.source_layout.joint_count))
        for target, rule in self.rules.items():
            t = self.target_layout.index(target)
            if isinstance(rule, CopyFrom):
                m[t, self.source_layout.index(rule.source)] = 1.0
            else:
                for name, weight in rule.sources:
                    m[t, self.source_layout.index(name)] += weight
        return m

    def is_copy_only(self) -> bool:
        return all(isinstance(r, CopyFrom) for r in self.rules.values())
