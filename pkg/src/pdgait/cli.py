"""
Command-line entry point.

Exit codes: 0 success, 1 partial failures (some walks or methods failed),
2 fatal validation error.
"""
import argparse
import sys
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd
import pyaml
from loguru import logger
from omegaconf import OmegaConf, DictConfig
from tqdm import tqdm

from .config import parse_args, to_run_config, seed_everything, RunConfig
from .datasets import DatasetManifest, load_manifest, load_walk, synthesize_cohort, write_cohort
from .errors import PdGaitError, ParseError, ValidationError
from .evaluation import (
    Aggregation,
    EmbeddingSource,
    FeatureSource,
    MethodResult,
    Protocol,
    build_report,
    format_leaderboard,
    format_wilcoxon,
    leaderboard,
    on_off_analysis,
    plan_losocv,
    plan_standard_cv,
    plot_method_confusions,
    run_protocol,
    slug,
    summarize_method,
    walk_table,
    wilcoxon_table,
    write_report,
    write_tables,
    baseline_source,
)
from .features import extract_features, features_frame, read_features_csv
from .gaitevents import detect_gait_events, write_events_csv
from .logging import setup_logging, logfile
from .models import load_embeddings
from .preprocessing import (
    clip_walk,
    encoder_input,
    n_clips,
    prepare_walk,
    read_index,
    clip_plan,
    save_clips,
    write_index,
)
from .skeleton import default_mapping, load_mapping
from .structures import JointMapping, RawWalk

SUCCESS, PARTIAL, FATAL = 0, 1, 2
METHOD_NAMES = {"features": "Feature-based RF", "baseline": "Baseline encoder"}
ARTIFACTS = {
    "synth": "manifest.json",
    "preprocess": "clip_index.csv",
    "features": "features.csv",
    "events": "events.csv",
    "benchmark": "report.json",
}
# Execution settings that do not change results, left out of report snapshots
EXECUTION_KEYS = (("force",), ("subcommand",), ("evaluation", "n_jobs"), ("evaluation", "forest", "n_jobs"))


def resolve_path(path: str) -> str:
    return Path(path).expanduser().resolve().as_posix()


def name_and_path(value: str) -> Tuple[str, str]:
    name, sep, path = value.partition("=")
    if not sep or not name or not path:
        raise argparse.ArgumentTypeError(f"Expected NAME=PATH, got {value}")
    return name, resolve_path(path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdgait",
        description="Gait score estimation from motion capture walks",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    commands = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "overrides",
        nargs="*",
        help="Config files (*.yaml) and key=value overrides, merged in order",
    )
    common.add_argument("--output-dir", type=resolve_path, help="Where to write results")
    common.add_argument("--force", action="store_true", help="Overwrite existing results")
    common.add_argument("--seed", type=int, help="Seed for every random component")

    walks = argparse.ArgumentParser(add_help=False)
    walks.add_argument("--manifest", type=resolve_path, help="Dataset manifest (JSON)")
    walks.add_argument(
        "--mapping", type=resolve_path, help="Joint mapping to H36M-17 (default: built-in PD-44 map)"
    )

    synth = commands.add_parser(
        "synth", parents=[common], help="Write a synthetic cohort", formatter_class=parser.formatter_class
    )
    synth.add_argument("--participants", type=int, help="Number of participants")
    synth.add_argument("--walks", type=int, help="Walks per participant")
    synth.add_argument("--duration", type=float, help="Walk duration in seconds")
    synth.add_argument("--fps", type=float, help="Frame rate")
    synth.add_argument("--noise", type=float, help="Coordinate noise std in meters")

    preprocess = commands.add_parser(
        "preprocess",
        parents=[common, walks],
        help="Transform, resample and clip walks into a clip store",
        formatter_class=parser.formatter_class,
    )
    preprocess.add_argument("--fps", type=float, help="Target frame rate")
    preprocess.add_argument("--clip-len", type=int, help="Frames per clip")
    preprocess.add_argument("--stride", type=int, help="Evaluation stride in frames")

    features = commands.add_parser(
        "features",
        parents=[common, walks],
        help="Export gait features per walk",
        formatter_class=parser.formatter_class,
    )
    features.add_argument("--fps", type=float, help="Resample walks before feature extraction")

    commands.add_parser(
        "events",
        parents=[common, walks],
        help="Dump detected gait events",
        formatter_class=parser.formatter_class,
    )

    benchmark = commands.add_parser(
        "benchmark",
        parents=[common, walks],
        help="Cross-validate methods and write the report",
        formatter_class=parser.formatter_class,
    )
    benchmark.add_argument("--features", type=resolve_path, help="Features CSV from `features`")
    benchmark.add_argument("--clips", type=resolve_path, help="Clip store from `preprocess`")
    benchmark.add_argument(
        "--embeddings",
        type=name_and_path,
        action="append",
        metavar="NAME=PATH",
        help="Embedding file of a provider, repeatable",
    )
    benchmark.add_argument("--methods", nargs="+", help="features, baseline and provider names")
    benchmark.add_argument("--protocol", choices=[p.value for p in Protocol])
    benchmark.add_argument("--aggregation", choices=[a.value for a in Aggregation])
    benchmark.add_argument("--n-jobs", type=int, help="Folds run in parallel")
    benchmark.add_argument("--fps", type=float, help="Target frame rate of encoder inputs")
    benchmark.add_argument("--clip-len", type=int, help="Frames per clip")
    benchmark.add_argument("--stride", type=int, help="Evaluation stride in frames")
    return parser


# argparse destination → config key, per subcommand
FLAGS = {
    "output_dir": "paths.output_dir",
    "manifest": "paths.manifest",
    "mapping": "paths.mapping",
    "features": "paths.features",
    "clips": "paths.clips",
    "clip_len": "preprocess.clip_len",
    "stride": "preprocess.eval_stride",
    "protocol": "evaluation.protocol",
    "aggregation": "evaluation.aggregation",
    "n_jobs": "evaluation.n_jobs",
    "participants": "synth.n_participants",
    "walks": "synth.walks_per_participant",
    "duration": "synth.duration",
    "noise": "synth.noise_std",
}
FPS_FLAG = {"synth": "synth.fps", "features": "features.resample_fps"}


def build_config(args: argparse.Namespace) -> DictConfig:
    conf = parse_args(args.overrides)
    conf.subcommand = args.subcommand
    for attr, key in FLAGS.items():
        value = getattr(args, attr, None)
        if value is not None:
            OmegaConf.update(conf, key, value)
    if getattr(args, "fps", None) is not None:
        OmegaConf.update(conf, FPS_FLAG.get(args.subcommand, "preprocess.target_fps"), args.fps)
    for name, path in getattr(args, "embeddings", None) or []:
        conf.paths.embeddings[name] = path
    if args.seed is not None:
        seed_everything(conf, args.seed)
    if args.force:
        conf.force = True
    return conf


def snapshot(conf: DictConfig) -> dict:
    """Resolved configuration without execution-only settings"""
    container = OmegaConf.to_container(conf, resolve=True)
    for keys in EXECUTION_KEYS:
        node = container
        for k in keys[:-1]:
            node = node[k]
        node.pop(keys[-1], None)
    return container


def prepare_output(cfg: RunConfig) -> Path:
    output_dir = Path(cfg.paths.output_dir).expanduser().resolve()
    artifact = output_dir / ARTIFACTS[cfg.subcommand]
    if artifact.exists() and not cfg.force:
        raise ValidationError(f"{artifact} exists, use --force to overwrite")
    output_dir.mkdir(parents=True, exist_ok=True)
    return output_dir


def require_manifest(cfg: RunConfig) -> DatasetManifest:
    if cfg.paths.manifest is None:
        raise ValidationError(f"Subcommand {cfg.subcommand} needs --manifest")
    return load_manifest(cfg.paths.manifest)


def joint_mapping(cfg: RunConfig) -> JointMapping:
    return load_mapping(cfg.paths.mapping) if cfg.paths.mapping else default_mapping()


def iter_walks(
    manifest: DatasetManifest, mapping: JointMapping, target_fps: Optional[float], desc: str
) -> Iterator[Tuple[str, Optional[RawWalk], Optional[PdGaitError]]]:
    """Loaded and prepared walks, or the error that stopped each one"""
    for descriptor in tqdm(manifest.walks, desc=desc, leave=False):
        try:
            yield descriptor.walk_id, prepare_walk(load_walk(descriptor), mapping, target_fps), None
        except (ParseError, ValidationError) as e:
            logger.error(f"Walk {descriptor.walk_id}: {e}")
            yield descriptor.walk_id, None, e


def cmd_synth(cfg: RunConfig, output_dir: Path) -> int:
    walks = synthesize_cohort(cfg.synth)
    path, manifest = write_cohort(walks, output_dir)
    write_events_csv(
        [r for walk, events in walks for r in events.to_records(walk.walk_id)],
        output_dir / "events_truth.csv",
    )
    logger.info(f"Synthetic cohort written to {path}: {manifest}")
    return SUCCESS


def cmd_preprocess(cfg: RunConfig, output_dir: Path) -> int:
    manifest = require_manifest(cfg)
    mapping = joint_mapping(cfg)
    clips_dir = output_dir / "clips"
    clips_dir.mkdir(exist_ok=True)

    rows, failed = [], []
    for walk_id, walk, error in iter_walks(
        manifest, mapping, cfg.preprocess.target_fps, "Preprocessing"
    ):
        if error is not None:
            failed.append(walk_id)
            continue
        # The clip store holds encoder inputs
        walk = encoder_input(walk, cfg.preprocess, manifest.convention)
        clips = clip_walk(
            walk, cfg.preprocess.clip_len, cfg.preprocess.eval_stride, cfg.preprocess.target_fps
        )
        save_clips(clips_dir, walk_id, clips)
        rows.append(
            {
                "walk_id": walk_id,
                "participant": walk.participant,
                "medication": walk.medication.name,
                "label": walk.label,
                "n_frames": walk.n_frames,
                "n_clips": len(clips),
                "fps": walk.fps,
                "dims": walk.dims,
            }
        )
    write_index(output_dir, rows)
    logger.info(f"Clip store: {len(rows)} walks, {sum(r['n_clips'] for r in rows)} clips")
    if failed:
        logger.error(f"{len(failed)} walks failed validation: {', '.join(failed)}")
        return FATAL
    return SUCCESS


def compute_features(
    cfg: RunConfig, manifest: DatasetManifest
) -> Tuple[pd.DataFrame, Dict[str, Tuple[str, str]]]:
    """Feature table of all walks, plus (error type, message) of each failed walk"""
    mapping = joint_mapping(cfg)
    rows, failures = [], {}
    for walk_id, walk, error in iter_walks(
        manifest, mapping, cfg.features.resample_fps, "Gait features"
    ):
        if error is None:
            try:
                events = detect_gait_events(walk, cfg.events, manifest.convention)
                rows.append((walk, extract_features(walk, events, cfg.features, manifest.convention)))
                continue
            except PdGaitError as e:
                logger.warning(f"Walk {walk_id}: {type(e).__name__}: {e}")
                error = e
        failures[walk_id] = (type(error).__name__, str(error))
    return features_frame(rows), failures


def cmd_features(cfg: RunConfig, output_dir: Path) -> int:
    manifest = require_manifest(cfg)
    table, failures = compute_features(cfg, manifest)
    table.to_csv(output_dir / "features.csv", index=False)
    pd.DataFrame(
        [(w, t, m) for w, (t, m) in failures.items()], columns=["walk_id", "error", "message"]
    ).to_csv(output_dir / "features_failures.csv", index=False)
    logger.info(f"Features: {len(table)} walks, {len(failures)} failed")
    if len(table) == 0:
        logger.error("Feature extraction failed for every walk")
        return FATAL
    return PARTIAL if failures else SUCCESS


def cmd_events(cfg: RunConfig, output_dir: Path) -> int:
    manifest = require_manifest(cfg)
    mapping = joint_mapping(cfg)
    rows, failed = [], 0
    for walk_id, walk, error in iter_walks(manifest, mapping, None, "Gait events"):
        if error is None:
            try:
                events = detect_gait_events(walk, cfg.events, manifest.convention)
                rows.extend(events.to_records(walk_id))
                continue
            except PdGaitError as e:
                logger.warning(f"Walk {walk_id}: {type(e).__name__}: {e}")
        failed += 1
    write_events_csv(rows, output_dir / "events.csv")
    if failed == len(manifest):
        return FATAL
    return PARTIAL if failed else SUCCESS


def _prepared_walks(cfg: RunConfig, manifest: DatasetManifest) -> List[RawWalk]:
    walks = [
        w
        for _, w, _ in iter_walks(
            manifest, joint_mapping(cfg), cfg.preprocess.target_fps, "Loading walks"
        )
        if w is not None
    ]
    if not walks:
        raise ValidationError("No walk of the manifest could be loaded")
    return walks


def build_source(cfg: RunConfig, method: str, manifest: DatasetManifest, cache: dict):
    if method == "features":
        if cfg.paths.features:
            table = read_features_csv(cfg.paths.features)
            return FeatureSource(METHOD_NAMES[method], table)
        table, failures = compute_features(cfg, manifest)
        return FeatureSource(
            METHOD_NAMES[method],
            table.set_index("walk_id"),
            {w: f"{t}: {m}" for w, (t, m) in failures.items()},
        )

    if method == "baseline":
        if "walks" not in cache:
            cache["walks"] = _prepared_walks(cfg, manifest)
        return baseline_source(
            cache["walks"],
            cfg.preprocess,
            cfg.baseline.augmentation,
            cfg.baseline.n_augmented,
            manifest.convention,
            name=METHOD_NAMES[method],
        )

    if method in cfg.paths.embeddings:
        if "plan" not in cache:
            if cfg.paths.clips:
                cache["plan"] = clip_plan(read_index(cfg.paths.clips))
            else:
                if "walks" not in cache:
                    cache["walks"] = _prepared_walks(cfg, manifest)
                cache["plan"] = {
                    w.walk_id: n_clips(w.n_frames, cfg.preprocess.clip_len, cfg.preprocess.eval_stride)
                    for w in cache["walks"]
                }
        index = load_embeddings(cfg.paths.embeddings[method], cache["plan"], method)
        return EmbeddingSource(method, index)

    raise ValidationError(f"Unknown method {method}: not built-in and no embedding file given")


def cmd_benchmark(cfg: RunConfig, output_dir: Path, config_snapshot: dict) -> int:
    manifest = require_manifest(cfg)
    walks = walk_table(manifest)
    protocol = Protocol.get(cfg.evaluation.protocol)
    aggregation = Aggregation.get(cfg.evaluation.aggregation)
    if protocol is Protocol.LOSOCV:
        plans = plan_losocv(walks, cfg.evaluation.n_validation, cfg.evaluation.seed)
    else:
        plans = plan_standard_cv(
            walks, cfg.evaluation.n_splits, cfg.evaluation.validation_fraction, cfg.evaluation.seed
        )

    results, cache = [], {}
    for method in cfg.methods:
        try:
            source = build_source(cfg, method, manifest, cache)
            results.append(MethodResult(source.name, run_protocol(plans, source, walks, cfg.evaluation)))
        except PdGaitError as e:
            fold = getattr(e, "fold_id", None)
            where = f" (fold {fold})" if fold is not None else ""
            logger.error(f"Method {method} failed{where}: {type(e).__name__}: {e}")
            results.append(MethodResult(METHOD_NAMES.get(method, method), error=f"{type(e).__name__}: {e}"))

    summaries = [summarize_method(r, aggregation) for r in results if r.error is None]
    ground_truth, ground_truth_error = None, None
    try:
        ground_truth = on_off_analysis(walks.reset_index(), aggregation, "label")
    except PdGaitError as e:
        logger.warning(f"No ground-truth ON/OFF test ({e})")
        ground_truth_error = str(e)

    report = build_report(
        config_snapshot, protocol, plans, results, summaries, ground_truth, ground_truth_error
    )
    write_report(report, output_dir / "report.json")
    write_tables(summaries, ground_truth, output_dir)
    for s in summaries:
        plot_method_confusions(s.name, s.confusion, output_dir / "figures", slug(s.name))
    logger.info(f"Leaderboard:\n{format_leaderboard(leaderboard(summaries))}")
    wilcoxon = format_wilcoxon(wilcoxon_table(summaries, ground_truth))
    logger.info(f"ON/OFF Wilcoxon signed-rank test:\n{wilcoxon}")

    if not summaries:
        return FATAL
    return PARTIAL if any(r.error for r in results) else SUCCESS


COMMANDS = {
    "synth": cmd_synth,
    "preprocess": cmd_preprocess,
    "features": cmd_features,
    "events": cmd_events,
}


@logger.catch(reraise=True)
def main(argv: Sequence[str] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        conf = build_config(args)
        cfg = to_run_config(conf)
        output_dir = prepare_output(cfg)
    except (ValidationError, ParseError) as e:
        logger.error(str(e))
        return FATAL

    with logfile(output_dir / "logs.txt"):
        return run_subcommand(cfg, conf, output_dir)


def run_subcommand(cfg: RunConfig, conf: DictConfig, output_dir: Path) -> int:
    try:
        config_snapshot = snapshot(conf)
        (output_dir / "config.yaml").write_text(
            pyaml.dump(OmegaConf.to_container(conf), safe=True, sort_dicts=False, force_embed=True)
        )
        logger.info(
            f"Configuration:\n{pyaml.dump(config_snapshot, safe=True, sort_dicts=False, force_embed=True)}"
        )
        if cfg.subcommand == "benchmark":
            return cmd_benchmark(cfg, output_dir, config_snapshot)
        return COMMANDS[cfg.subcommand](cfg, output_dir)
    except (ValidationError, ParseError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return FATAL


def run():
    setup_logging()
    sys.exit(main())


if __name__ == "__main__":
    run()
