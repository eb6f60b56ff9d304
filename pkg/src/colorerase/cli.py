"""Command line surface: corpus augmentation, sweeps and vote analysis.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data/parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from ._version import __version__
from .ensemble import (
    InstanceParseError,
    component_error,
    ensemble_error,
    format_labels,
    parse_instance,
    parse_labels,
    search_beneficial_substitutions,
    substitute_and_compare,
)
from .image import ImageIOError
from .pipeline import CorpusJob, CorpusWriteError, run_corpus, write_manifest
from .rce import DIRECTIONS, RceConfig, sample_decision
from .region import RegionParams
from .rng import MASK64, RngStream, splitmix64

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DATA = 3

_APPLY_DEFAULTS = {
    "p_r": 0.40,
    "p_g": 0.15,
    "seed": 0,
    "passes": 1,
    "workers": "auto",
    "area_lo": 0.02,
    "area_hi": 0.4,
    "aspect_lo": 0.3,
    "aspect_hi": 1 / 0.3,
    "direction": "gray-on-color",
}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; route through UsageError
    # instead so all usage problems share exit code 1.
    def error(self, message):
        raise UsageError(message)


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError(f"{text} is not a 64-bit unsigned value")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="colorerase", description=__doc__)
    parser.add_argument("--version", action="version", version=f"colorerase {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    apply_p = sub.add_parser(
        "apply",
        help="augment an image tree and write outputs plus a replay manifest",
    )
    apply_p.add_argument("--input", required=True, help="root of the source image tree")
    apply_p.add_argument("--output", required=True, help="root for outputs and manifest.jsonl")
    apply_p.add_argument("--p-r", type=float, dest="p_r", help="erase probability (default 0.40)")
    apply_p.add_argument("--p-g", type=float, dest="p_g", help="conditional global-erase probability (default 0.15)")
    apply_p.add_argument("--seed", type=_u64, help="64-bit master seed (default 0)")
    apply_p.add_argument("--passes", type=_positive_int, help="augmented copies per source image (default 1)")
    apply_p.add_argument("--workers", help="worker count, or 'auto' (default auto; never affects output bytes)")
    apply_p.add_argument("--area-lo", type=float, dest="area_lo", help="min rect area fraction (default 0.02)")
    apply_p.add_argument("--area-hi", type=float, dest="area_hi", help="max rect area fraction (default 0.4)")
    apply_p.add_argument("--aspect-lo", type=float, dest="aspect_lo", help="min rect aspect ratio (default 0.3)")
    apply_p.add_argument("--aspect-hi", type=float, dest="aspect_hi", help="max rect aspect ratio (default 1/0.3)")
    apply_p.add_argument("--direction", choices=DIRECTIONS, help="patch direction (default gray-on-color)")
    apply_p.add_argument("--config", help="TOML file mirroring these flags; flags win")
    apply_p.set_defaults(handler=cmd_apply)

    stats_p = sub.add_parser(
        "stats",
        help="sweep an erase probability and print branch frequencies as CSV",
    )
    stats_p.add_argument("--sweep", required=True, choices=("p_r", "p_g"))
    stats_p.add_argument("--from", dest="sweep_from", type=float, required=True)
    stats_p.add_argument("--to", dest="sweep_to", type=float, required=True)
    stats_p.add_argument("--step", type=float, required=True)
    stats_p.add_argument("--trials", type=_positive_int, required=True)
    stats_p.add_argument("--seed", type=_u64, default=0)
    stats_p.add_argument("--width", type=_positive_int, default=256)
    stats_p.add_argument("--height", type=_positive_int, default=128)
    stats_p.add_argument("--p-r", dest="p_r", type=float, default=0.40,
                         help="fixed p_r while sweeping p_g (default 0.40)")
    stats_p.add_argument("--p-g", dest="p_g", type=float, default=0.15,
                         help="fixed p_g while sweeping p_r (default 0.15)")
    stats_p.set_defaults(handler=cmd_stats)

    verify_p = sub.add_parser(
        "ensemble-verify",
        help="report component and majority-vote errors for a vote matrix",
    )
    verify_p.add_argument("--instance", required=True, help="vote matrix file: 'N k', expected labels, N vote rows")
    verify_p.add_argument("--substitute", type=int, required=True, metavar="E",
                          help="1-based index of the component to swap out")
    verify_p.add_argument("--replacement", help="file with k replacement labels")
    verify_p.add_argument("--search", action="store_true",
                          help="enumerate all improving replacement vectors")
    verify_p.set_defaults(handler=cmd_ensemble_verify)
    return parser


def _load_config_file(path: str) -> dict:
    try:
        import tomllib  # Python >= 3.11
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise DataError(f"{path}: {exc}")
    unknown = set(data) - set(_APPLY_DEFAULTS)
    if unknown:
        raise UsageError(f"{path}: unknown config keys: {', '.join(sorted(unknown))}")
    return data


def _resolve(args, config: dict, key: str):
    flag = getattr(args, key)
    if flag is not None:
        return flag
    if key in config:
        return config[key]
    return _APPLY_DEFAULTS[key]


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise UsageError(f"{name} must be in [0, 1], got {value}")
    return value


def cmd_apply(args) -> int:
    config = _load_config_file(args.config) if args.config else {}
    p_r = _check_unit("--p-r", _resolve(args, config, "p_r"))
    p_g = _check_unit("--p-g", _resolve(args, config, "p_g"))
    try:
        seed = _resolve(args, config, "seed")
        if isinstance(seed, str):
            seed = _u64(seed)
        elif not 0 <= seed <= MASK64:
            raise UsageError(f"seed must be a 64-bit unsigned value, got {seed}")
        passes = int(_resolve(args, config, "passes"))
        workers = _resolve(args, config, "workers")
        if workers == "auto":
            workers = os.cpu_count() or 1
        else:
            workers = int(workers)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(str(exc))
    try:
        region = RegionParams(
            area_lo=float(_resolve(args, config, "area_lo")),
            area_hi=float(_resolve(args, config, "area_hi")),
            aspect_lo=float(_resolve(args, config, "aspect_lo")),
            aspect_hi=float(_resolve(args, config, "aspect_hi")),
        )
        cfg = RceConfig(p_r=p_r, p_g=p_g, region=region,
                        direction=_resolve(args, config, "direction"))
        job = CorpusJob(
            input_root=Path(args.input),
            output_root=Path(args.output),
            cfg=cfg,
            master_seed=seed,
            workers=workers,
            passes=passes,
        )
    except ValueError as exc:
        raise UsageError(str(exc))

    manifest = run_corpus(job)
    manifest_path = job.output_root / "manifest.jsonl"
    write_manifest(manifest, manifest_path)

    counts = {branch: 0 for branch in ("identity", "global", "local", "local_nofit")}
    for entry in manifest.entries:
        counts[entry.record.branch] += 1
    n_sources = len({e.source_path for e in manifest.entries})
    print(f"images: {n_sources}  passes: {manifest.passes}  outputs: {len(manifest.entries)}")
    print(
        "branches: "
        + " ".join(f"{name}={counts[name]}" for name in ("identity", "global", "local", "local_nofit"))
    )
    for path, reason in manifest.warnings:
        print(f"warning: skipped {path}: {reason}", file=sys.stderr)
    print(f"manifest: {manifest_path}")
    return EXIT_OK


def _sweep_values(lo: float, hi: float, step: float) -> list[float]:
    if step <= 0.0:
        raise UsageError(f"--step must be > 0, got {step}")
    if hi < lo:
        raise UsageError(f"empty sweep range: --from {lo} > --to {hi}")
    count = int((hi - lo) / step + 1e-9) + 1
    return [lo + i * step for i in range(count)]


def cmd_stats(args) -> int:
    values = _sweep_values(args.sweep_from, args.sweep_to, args.step)
    for v in values:
        _check_unit(f"swept {args.sweep}", v)
    p_r = _check_unit("--p-r", args.p_r)
    p_g = _check_unit("--p-g", args.p_g)
    image_area = args.width * args.height

    print(f"{args.sweep},identity,global,local,mean_gray_fraction")
    for value in values:
        cfg = RceConfig(
            p_r=value if args.sweep == "p_r" else p_r,
            p_g=value if args.sweep == "p_g" else p_g,
        )
        counts = {"identity": 0, "global": 0, "local": 0, "local_nofit": 0}
        gray_total = 0.0
        for trial in range(args.trials):
            # Common random numbers: trial seeds do not depend on the swept
            # value, so frequency columns move monotonically with it.
            rng = RngStream.from_seed(splitmix64(args.seed ^ trial)[1])
            branch, rect, _ = sample_decision(args.width, args.height, cfg, rng)
            counts[branch] += 1
            if branch == "global":
                gray_total += 1.0
            elif branch == "local":
                gray_total += (rect.w * rect.h) / image_area
        local = counts["local"] + counts["local_nofit"]  # the p2 > p_g path
        print(
            f"{value:.6f},{counts['identity'] / args.trials:.6f},"
            f"{counts['global'] / args.trials:.6f},{local / args.trials:.6f},"
            f"{gray_total / args.trials:.6f}"
        )
    return EXIT_OK


def cmd_ensemble_verify(args) -> int:
    if args.replacement and args.search:
        raise UsageError("--replacement and --search are mutually exclusive")
    if args.substitute < 1:
        raise UsageError(f"--substitute must be >= 1, got {args.substitute}")
    try:
        text = Path(args.instance).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.instance}: {exc}", file=sys.stderr)
        return EXIT_IO
    inst = parse_instance(text)
    e = args.substitute
    if e > inst.n_components:
        raise DataError(
            f"--substitute {e} out of range: instance has {inst.n_components} components"
        )

    print(f"components: N={inst.n_components}  samples: k={inst.n_samples}")
    for i in range(1, inst.n_components + 1):
        print(f"E_{i} = {component_error(inst, i)}")
    print(f"ensemble error = {ensemble_error(inst)}")

    if args.replacement:
        try:
            rep_text = Path(args.replacement).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot read {args.replacement}: {exc}", file=sys.stderr)
            return EXIT_IO
        replacement = parse_labels(rep_text, expect=inst.n_samples)
        report = substitute_and_compare(inst, e, replacement)
        print(f"substitute component {e} with [{format_labels(replacement)}]:")
        print(f"  error before = {report.error_before}")
        print(f"  error after = {report.error_after}")
        print(f"  benefit: {'yes' if report.benefit else 'no'}")
        ok = sum(report.per_sample_ok)
        print(f"  per-sample ok: {ok}/{inst.n_samples}")
        print(f"  ties before={report.tie_count_before} after={report.tie_count_after}")
    elif args.search:
        try:
            results = search_beneficial_substitutions(inst, e)
        except ValueError as exc:
            raise DataError(str(exc))
        total = 2 ** inst.n_samples
        print(f"improving replacements for component {e}: {len(results)} of {total}")
        for replacement, report in results:
            print(f"{format_labels(replacement)} -> {report.error_after}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ImageIOError, CorpusWriteError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InstanceParseError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
