from .candidates import detect_candidates, ap_displacement, EventCandidates
from .quadrature import encode_quadrature, phase_rate
from .smoother import SmootherConfig, smooth_phase
from .events import (
    EventsConfig,
    extract_events,
    reconcile_events,
    check_contralateral,
    detect_gait_events,
    write_events_csv,
)
