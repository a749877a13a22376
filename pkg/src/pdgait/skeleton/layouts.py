from typing import Dict

from ..errors import ValidationError
from ..structures import JointLayout

H36M17 = JointLayout(
    "h36m17",
    joint_names=[
        "pelvis",
        "right_hip",
        "right_knee",
        "right_ankle",
        "left_hip",
        "left_knee",
        "left_ankle",
        "spine",
        "thorax",
        "neck",
        "head",
        "left_shoulder",
        "left_elbow",
        "left_wrist",
        "right_shoulder",
        "right_elbow",
        "right_wrist",
    ],
    parents=[
        None,
        "pelvis",
        "right_hip",
        "right_knee",
        "pelvis",
        "left_hip",
        "left_knee",
        "pelvis",
        "spine",
        "thorax",
        "neck",
        "thorax",
        "left_shoulder",
        "left_elbow",
        "thorax",
        "right_shoulder",
        "right_elbow",
    ],
    roles={
        "sacrum": "pelvis",
        "left_ankle": "left_ankle",
        "right_ankle": "right_ankle",
        "left_hip": "left_hip",
        "right_hip": "right_hip",
        "left_shoulder": "left_shoulder",
        "right_shoulder": "right_shoulder",
    },
    mirror_pairs=[
        ("left_hip", "right_hip"),
        ("left_knee", "right_knee"),
        ("left_ankle", "right_ankle"),
        ("left_shoulder", "right_shoulder"),
        ("left_elbow", "right_elbow"),
        ("left_wrist", "right_wrist"),
    ],
)

# Full-body marker set: 39 conventional full-body markers plus sacrum and medial knee/ankle markers
_PD44_SIDE = [
    ("FHD", "SACR"),
    ("BHD", "SACR"),
    ("SHO", "CLAV"),
    ("UPA", "SHO"),
    ("ELB", "UPA"),
    ("FRM", "ELB"),
    ("WRA", "FRM"),
    ("WRB", "FRM"),
    ("FIN", "WRA"),
    ("ASI", "SACR"),
    ("PSI", "SACR"),
    ("THI", "ASI"),
    ("KNE", "THI"),
    ("KNM", "THI"),
    ("TIB", "KNE"),
    ("ANK", "TIB"),
    ("MED", "TIB"),
    ("HEE", "ANK"),
    ("TOE", "ANK"),
]
_PD44_CENTER = [
    ("SACR", None),
    ("T10", "SACR"),
    ("STRN", "T10"),
    ("CLAV", "STRN"),
    ("C7", "CLAV"),
    ("RBAK", "T10"),
]
_SIDE_SHARED = {"SACR", "CLAV"}


def _pd44() -> JointLayout:
    names, parents = [], []
    for name, parent in _PD44_CENTER:
        names.append(name)
        parents.append(parent)
    for side in "LR":
        for name, parent in _PD44_SIDE:
            names.append(side + name)
            parents.append(parent if parent in _SIDE_SHARED else side + parent)
    return JointLayout(
        "pd44",
        names,
        parents,
        roles={
            "sacrum": "SACR",
            "left_ankle": "LANK",
            "right_ankle": "RANK",
            "left_hip": "LASI",
            "right_hip": "RASI",
            "left_shoulder": "LSHO",
            "right_shoulder": "RSHO",
        },
        mirror_pairs=[("L" + name, "R" + name) for name, _ in _PD44_SIDE],
    )


PD44 = _pd44()

LAYOUTS: Dict[str, JointLayout] = {l.layout_id: l for l in (H36M17, PD44)}


def get_layout(layout_id: str) -> JointLayout:
    try:
        return LAYOUTS[layout_id]
    except KeyError:
        raise ValidationError(
            f"Unknown joint layout {layout_id}, known layouts: {sorted(LAYOUTS)}"
        ) from None
