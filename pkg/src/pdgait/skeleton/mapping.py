import json
from importlib import resources
from pathlib import Path
from typing import Union, Mapping, Any

from ..errors import ParseError, ValidationError
from ..structures import JointMapping, JointLayout, CopyFrom, WeightedAverage
from .layouts import H36M17, PD44

DEFAULT_MAPPING_FILE = "pd44_to_h36m17.json"


def parse_mapping(
    rules: Mapping[str, Any], source: JointLayout, target: JointLayout
) -> JointMapping:
    if not isinstance(rules, Mapping):
        raise ParseError("Mapping must be a JSON object keyed by target joint")
    parsed = {}
    for target_joint, rule in rules.items():
        if isinstance(rule, Mapping) and set(rule) == {"copy"}:
            parsed[target_joint] = CopyFrom(str(rule["copy"]))
        elif isinstance(rule, Mapping) and set(rule) == {"avg"}:
            try:
                sources = tuple((str(n), float(w)) for n, w in rule["avg"])
            except (TypeError, ValueError):
                raise ParseError(
                    f"Mapping {target_joint}: avg must be a list of [joint, weight]"
                ) from None
            parsed[target_joint] = WeightedAverage(sources)
        else:
            raise ParseError(
                f'Mapping {target_joint}: expected {{"copy": name}} or {{"avg": [...]}}'
            )
    return JointMapping(source, target, parsed)


def load_mapping(
    path: Union[str, Path], source: JointLayout = PD44, target: JointLayout = H36M17
) -> JointMapping:
    path = Path(path)
    try:
        rules = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed mapping file {path}: {e}") from None
    except OSError as e:
        raise ValidationError(f"Can not read mapping file {path}: {e}") from None
    return parse_mapping(rules, source, target)


def default_mapping() -> JointMapping:
    """The shipped pd44 → h36m17 table, anatomical midpoints of marker groups"""
    text = resources.files(__package__).joinpath("data").joinpath(DEFAULT_MAPPING_FILE).read_text()
    return parse_mapping(json.loads(text), PD44, H36M17)


def identity_mapping(layout: JointLayout) -> JointMapping:
    return JointMapping(layout, layout, {n: CopyFrom(n) for n in layout.joint_names})
