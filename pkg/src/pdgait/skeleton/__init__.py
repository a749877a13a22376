from .layouts import H36M17, PD44, LAYOUTS, get_layout
from .mapping import load_mapping, default_mapping, identity_mapping, parse_mapping
from .transform import transform_layout, project_2d, root_center_and_scale
