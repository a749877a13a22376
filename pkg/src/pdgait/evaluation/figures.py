"""Normalized confusion matrices as SVG"""
from pathlib import Path
from typing import Union, List

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ..metrics import ConfusionMatrix

TITLES = {"overall": "Overall", "OFF": "OFF medication", "ON": "ON medication"}


def plot_confusion_matrix(
    confusion: ConfusionMatrix, title: str, path: Union[str, Path]
) -> Path:
    """Row-normalized matrix with the proportion written in each cell.
    The SVG is byte-stable: fixed hash salt and no timestamp."""
    path = Path(path)
    normalized = confusion.normalized()
    with plt.rc_context({"svg.hashsalt": "pdgait", "font.size": 11}):
        fig, ax = plt.subplots(figsize=(4, 3.6))
        img = ax.imshow(normalized, vmin=0, vmax=1, cmap="Blues")
        ticks = np.arange(len(confusion.labels))
        ax.set_xticks(ticks)
        ax.set_yticks(ticks)
        ax.set_xticklabels([str(l) for l in confusion.labels])
        ax.set_yticklabels([str(l) for l in confusion.labels])
        ax.set_xlabel("Predicted UPDRS-gait score")
        ax.set_ylabel("True UPDRS-gait score")
        ax.set_title(title)
        for (i, j), value in np.ndenumerate(normalized):
            ax.text(
                j,
                i,
                f"{value:.2f}",
                ha="center",
                va="center",
                color="white" if value > 0.5 else "black",
            )
        fig.colorbar(img, ax=ax)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path


def plot_method_confusions(
    method: str, confusion: dict, output_dir: Union[str, Path], slug: str
) -> List[Path]:
    """One figure per subset (overall, OFF, ON) present in ``confusion``"""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    return [
        plot_confusion_matrix(
            confusion[subset],
            f"{method}: {TITLES[subset]}",
            output_dir / f"confusion_{slug}_{subset.lower()}.svg",
        )
        for subset in TITLES
        if subset in confusion
    ]
