import json
from pathlib import Path
from typing import Union

from ..errors import ParseError, ValidationError
from . import forest, linear_head

_SCHEMAS = {
    forest.SCHEMA: forest.RandomForestModel,
    linear_head.SCHEMA: linear_head.LinearHeadModel,
}


def save_model(
    model: Union[forest.RandomForestModel, linear_head.LinearHeadModel],
    path: Union[str, Path],
):
    Path(path).write_text(json.dumps(model.to_dict(), sort_keys=True))


def load_model(path: Union[str, Path]):
    try:
        content = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed model file {path}: {e}") from None
    try:
        cls = _SCHEMAS[content.get("schema")]
    except (KeyError, AttributeError):
        raise ValidationError(f"Model file {path}: unknown schema") from None
    return cls.from_dict(content)
