import numpy as np
import pandas as pd

from pdgait.features import FEATURE_NAMES


def cohort_table(n_participants, walks_per_participant=2):
    """Walk table whose participants cycle through labels 0, 1, 2"""
    rows = []
    for p in range(n_participants):
        for w in range(walks_per_participant):
            rows.append(
                {
                    "walk_id": f"P{p + 1:02d}_{w}",
                    "participant": f"P{p + 1:02d}",
                    "medication": "ON" if w % 2 == 0 else "OFF",
                    "label": p % 3,
                }
            )
    return pd.DataFrame(rows).set_index("walk_id")


def separable_features(table, seed=0):
    rng = np.random.default_rng(seed)
    values = 10.0 * table["label"].to_numpy()[:, None] + rng.normal(size=(len(table), len(FEATURE_NAMES)))
    return pd.DataFrame(values, index=table.index, columns=list(FEATURE_NAMES))
