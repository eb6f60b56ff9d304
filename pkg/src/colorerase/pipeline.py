"""Deterministic, parallel corpus augmentation with a replayable manifest.

Every (source image, pass) pair gets its own draw stream, seeded from the
master seed, the canonical relative path and the pass index. Results are
therefore a pure function of corpus bytes, config, master seed and pass
count; worker count and scheduling order never change a byte.

The manifest is JSON Lines: a header object carrying tool version, config
and master seed, then one entry per output, sorted by (source path, pass
index). 64-bit values (seeds, digests) are serialized as 16-digit lowercase
hex strings so any JSON parser round-trips them exactly.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import FIRST_EXCEPTION, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from pathlib import Path

from ._version import __version__
from .image import Image, ImageIOError, Rect, load_image, save_image
from .rce import AugmentationRecord, RceConfig, apply_rce
from .region import RegionParams
from .rng import MASK64, RngStream, fnv1a64, splitmix64

__all__ = [
    "IMAGE_SUFFIXES",
    "CorpusJob",
    "ManifestEntry",
    "Manifest",
    "CorpusWriteError",
    "ReplayMismatchError",
    "derive_stream_seed",
    "content_digest",
    "run_corpus",
    "replay",
    "write_manifest",
    "read_manifest",
]

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp")

MANIFEST_FORMAT = "colorerase-manifest"
MANIFEST_FORMAT_VERSION = 1


class CorpusWriteError(Exception):
    """An output could not be written; the run aborted with partial state."""


class ReplayMismatchError(Exception):
    """Replayed pixels do not match the recorded digest (source drift or
    config mismatch)."""


@dataclass(frozen=True)
class CorpusJob:
    """One corpus augmentation run."""

    input_root: Path
    output_root: Path
    cfg: RceConfig = field(default_factory=RceConfig)
    master_seed: int = 0
    workers: int = 1
    passes: int = 1

    def __post_init__(self):
        if not 0 <= self.master_seed <= MASK64:
            raise ValueError(f"master_seed must be a 64-bit value, got {self.master_seed}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.passes < 1:
            raise ValueError(f"passes must be >= 1, got {self.passes}")


@dataclass(frozen=True)
class ManifestEntry:
    """Replay log for one output file. Paths are relative, '/'-separated."""

    source_path: str
    pass_index: int
    output_path: str
    record: AugmentationRecord
    content_digest: int


@dataclass(frozen=True)
class Manifest:
    """Header data plus sorted entries and per-file skip warnings."""

    cfg: RceConfig
    master_seed: int
    passes: int
    entries: tuple[ManifestEntry, ...]
    warnings: tuple[tuple[str, str], ...] = ()  # (path, reason), sorted


def derive_stream_seed(master_seed: int, source_path: str, pass_index: int) -> int:
    """Per-item stream seed: first SplitMix64 output of
    ``master_seed XOR fnv1a64(path) XOR pass_index``.

    ``source_path`` is canonicalized to '/' separators before hashing, so
    the same relative path yields the same seed on every platform.
    """
    canonical = source_path.replace("\\", "/")
    x = master_seed ^ fnv1a64(canonical.encode("utf-8")) ^ (pass_index & MASK64)
    return splitmix64(x)[1]


def content_digest(img: Image) -> int:
    """FNV-1a 64 over the raw RGB bytes, row-major. Drift detection only."""
    return fnv1a64(img.tobytes())


def _output_rel_path(source_rel: str, pass_index: int) -> str:
    stem, _, _ = source_rel.rpartition(".")
    return f"{stem}__rce{pass_index}.png"


def _scan_sources(input_root: Path) -> list[str]:
    rels = []
    for path in input_root.rglob("*"):
        if path.is_file() and path.suffix.lower() in IMAGE_SUFFIXES:
            rels.append(path.relative_to(input_root).as_posix())
    return sorted(rels)


def _process_source(
    job: CorpusJob, rel: str
) -> tuple[list[ManifestEntry], tuple[str, str] | None]:
    try:
        img = load_image(job.input_root / rel)
    except ImageIOError as exc:
        return [], (rel, exc.reason)
    entries = []
    for pass_index in range(job.passes):
        seed = derive_stream_seed(job.master_seed, rel, pass_index)
        out, record = apply_rce(img, job.cfg, RngStream.from_seed(seed))
        out_rel = _output_rel_path(rel, pass_index)
        out_path = job.output_root / out_rel
        try:
            out_path.parent.mkdir(parents=True, exist_ok=True)
            save_image(out, out_path)
        except (ImageIOError, OSError) as exc:
            reason = exc.reason if isinstance(exc, ImageIOError) else str(exc)
            raise CorpusWriteError(
                f"failed to write {out_path}: {reason} "
                f"(run aborted; earlier outputs may already exist)"
            ) from exc
        entries.append(
            ManifestEntry(
                source_path=rel,
                pass_index=pass_index,
                output_path=out_rel,
                record=record,
                content_digest=content_digest(out),
            )
        )
    return entries, None


def run_corpus(job: CorpusJob) -> Manifest:
    """Augment every readable image under ``job.input_root``.

    Each source yields ``job.passes`` outputs under ``job.output_root`` with
    the source's relative directory structure preserved. Unreadable image
    files are skipped and reported in the manifest warnings; a failed write
    aborts the run. The returned manifest is identical for any worker count.
    """
    if not job.input_root.is_dir():
        raise ImageIOError(job.input_root, "input root is not a directory")
    job.output_root.mkdir(parents=True, exist_ok=True)
    sources = _scan_sources(job.input_root)
    by_stem: dict[str, str] = {}
    for rel in sources:
        out_rel = _output_rel_path(rel, 0)
        if out_rel in by_stem:
            # a.png and a.jpg would both write a__rce<p>.png
            raise CorpusWriteError(
                f"output name clash: {by_stem[out_rel]} and {rel} share a stem"
            )
        by_stem[out_rel] = rel
    entries: list[ManifestEntry] = []
    warnings: list[tuple[str, str]] = []
    with ThreadPoolExecutor(max_workers=job.workers) as pool:
        futures = [pool.submit(_process_source, job, rel) for rel in sources]
        done, pending = wait(futures, return_when=FIRST_EXCEPTION)
        for fut in pending:
            fut.cancel()
        for fut in done:
            got, warning = fut.result()  # re-raises CorpusWriteError
            entries.extend(got)
            if warning is not None:
                warnings.append(warning)
    entries.sort(key=lambda e: (e.source_path, e.pass_index))
    warnings.sort()
    return Manifest(
        cfg=job.cfg,
        master_seed=job.master_seed,
        passes=job.passes,
        entries=tuple(entries),
        warnings=tuple(warnings),
    )


def replay(entry: ManifestEntry, input_root: Path, cfg: RceConfig) -> Image:
    """Recompute one output from its manifest entry and verify its digest."""
    img = load_image(Path(input_root) / entry.source_path)
    out, _ = apply_rce(img, cfg, RngStream.from_seed(entry.record.stream_seed))
    digest = content_digest(out)
    if digest != entry.content_digest:
        raise ReplayMismatchError(
            f"{entry.output_path}: replayed digest {digest:016x} != recorded "
            f"{entry.content_digest:016x} (source drift or config mismatch)"
        )
    return out


# --- manifest serialization -------------------------------------------------
# Key order below is the documented wire order; dumps preserves insertion
# order and uses compact separators so files are byte-stable.


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False, allow_nan=False)


def _cfg_to_json(cfg: RceConfig) -> dict:
    return {
        "p_r": cfg.p_r,
        "p_g": cfg.p_g,
        "direction": cfg.direction,
        "region": {
            "area_lo": cfg.region.area_lo,
            "area_hi": cfg.region.area_hi,
            "aspect_lo": cfg.region.aspect_lo,
            "aspect_hi": cfg.region.aspect_hi,
            "max_attempts": cfg.region.max_attempts,
        },
    }


def _cfg_from_json(obj: dict) -> RceConfig:
    region = obj["region"]
    return RceConfig(
        p_r=obj["p_r"],
        p_g=obj["p_g"],
        direction=obj["direction"],
        region=RegionParams(
            area_lo=region["area_lo"],
            area_hi=region["area_hi"],
            aspect_lo=region["aspect_lo"],
            aspect_hi=region["aspect_hi"],
            max_attempts=region["max_attempts"],
        ),
    )


def _entry_to_json(entry: ManifestEntry) -> dict:
    rec = entry.record
    return {
        "source_path": entry.source_path,
        "pass_index": entry.pass_index,
        "output_path": entry.output_path,
        "record": {
            "branch": rec.branch,
            "rect": None
            if rec.rect is None
            else [rec.rect.x0, rec.rect.y0, rec.rect.w, rec.rect.h],
            "draws": list(rec.draws),
            "stream_seed": f"{rec.stream_seed:016x}",
        },
        "content_digest": f"{entry.content_digest:016x}",
    }


def _entry_from_json(obj: dict) -> ManifestEntry:
    rec = obj["record"]
    rect = rec["rect"]
    return ManifestEntry(
        source_path=obj["source_path"],
        pass_index=obj["pass_index"],
        output_path=obj["output_path"],
        record=AugmentationRecord(
            branch=rec["branch"],
            rect=None if rect is None else Rect(*rect),
            draws=tuple(rec["draws"]),
            stream_seed=int(rec["stream_seed"], 16),
        ),
        content_digest=int(obj["content_digest"], 16),
    )


def write_manifest(manifest: Manifest, path: Path | str) -> None:
    """Write the JSON Lines manifest: one header line, then sorted entries."""
    header = {
        "format": MANIFEST_FORMAT,
        "format_version": MANIFEST_FORMAT_VERSION,
        "tool_version": __version__,
        "master_seed": f"{manifest.master_seed:016x}",
        "passes": manifest.passes,
        "cfg": _cfg_to_json(manifest.cfg),
        "warnings": [{"path": p, "reason": r} for p, r in manifest.warnings],
    }
    lines = [_dumps(header)]
    lines.extend(_dumps(_entry_to_json(e)) for e in manifest.entries)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_manifest(path: Path | str) -> Manifest:
    """Parse a manifest written by :func:`write_manifest`."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln]
    if not lines:
        raise ValueError(f"{path}: empty manifest")
    header = json.loads(lines[0])
    if header.get("format") != MANIFEST_FORMAT:
        raise ValueError(f"{path}: not a {MANIFEST_FORMAT} file")
    return Manifest(
        cfg=_cfg_from_json(header["cfg"]),
        master_seed=int(header["master_seed"], 16),
        passes=header["passes"],
        entries=tuple(_entry_from_json(json.loads(ln)) for ln in lines[1:]),
        warnings=tuple((w["path"], w["reason"]) for w in header["warnings"]),
    )
