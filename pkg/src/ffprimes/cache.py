"""Plain-text cache of monic irreducible polynomials.

Layout::

    # ffprimes irreducible cache
    format_version = 1
    q = 2
    max_degree = 12
    degree 1 count 2
    0,1
    1,1
    degree 2 count 1
    ...

Entries are in index order.  A path ending in ``.gz`` is gzip-compressed.
"""

from __future__ import annotations

import gzip
import os
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import CorruptCache, VersionMismatch
from .ffpoly import FieldSpec, Poly, count_irreducible, factor, field_of_order
from .ffpoly.tables import irreducible_polys

FORMAT_VERSION = 1
CACHE_ENV = "FFPRIMES_CACHE_DIR"
MAGIC = "# ffprimes irreducible cache"


@dataclass
class IrreducibleCache:
    field: FieldSpec
    max_degree: int
    blocks: dict[int, list[Poly]]

    def text(self) -> str:
        lines = [MAGIC, f"format_version = {FORMAT_VERSION}", f"q = {self.field.q}",
                 f"max_degree = {self.max_degree}"]
        for d in range(1, self.max_degree + 1):
            block = self.blocks[d]
            lines.append(f"degree {d} count {len(block)}")
            lines.extend(P.text() for P in block)
        return "\n".join(lines) + "\n"


def default_path(q: int, max_degree: int) -> Path:
    base = Path(os.environ.get(CACHE_ENV, "."))
    return base / f"irreducibles_q{q}_d{max_degree}.txt"


def _open(path):
    return gzip.open(path, "rb") if str(path).endswith(".gz") else open(path, "rb")


def _write(path, data: bytes) -> None:
    if str(path).endswith(".gz"):
        # no file name and mtime=0 keep compressed bytes identical across runs
        data = gzip.compress(data, mtime=0)
    Path(path).write_bytes(data)


def build(field: FieldSpec, max_degree: int, path=None) -> IrreducibleCache:
    cache = IrreducibleCache(field, max_degree,
                             {d: irreducible_polys(field, d) for d in range(1, max_degree + 1)})
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        _write(path, cache.text().encode())
    return cache


def _header(lines, path) -> dict:
    if not lines or lines[0] != MAGIC:
        raise CorruptCache(f"{path}: missing cache header")
    head = {}
    for line in lines[1:4]:
        if "=" not in line:
            raise CorruptCache(f"{path}: malformed header line {line!r}")
        k, v = (s.strip() for s in line.split("=", 1))
        head[k] = v
    if set(head) != {"format_version", "q", "max_degree"}:
        raise CorruptCache(f"{path}: incomplete header")
    if head["format_version"] != str(FORMAT_VERSION):
        raise VersionMismatch(f"{path}: format version {head['format_version']}, expected {FORMAT_VERSION}")
    try:
        return {k: int(v) for k, v in head.items()}
    except ValueError as exc:
        raise CorruptCache(f"{path}: non-integer header value") from exc


def load(path, q: int | None = None) -> IrreducibleCache:
    """Parse a cache file.  Counts are checked against the block headers."""
    try:
        with _open(path) as fh:
            text = fh.read().decode()
    except (OSError, EOFError, UnicodeDecodeError) as exc:
        raise CorruptCache(f"{path}: unreadable ({exc})") from exc
    lines = text.splitlines()
    head = _header(lines, path)
    if q is not None and head["q"] != q:
        raise CorruptCache(f"{path}: cache is for q = {head['q']}, run uses q = {q}")
    F = field_of_order(head["q"])
    blocks: dict[int, list[Poly]] = {}
    pos = 4
    for d in range(1, head["max_degree"] + 1):
        if pos >= len(lines):
            raise CorruptCache(f"{path}: missing block for degree {d}")
        parts = lines[pos].split()
        if len(parts) != 4 or parts[0] != "degree" or parts[2] != "count" or parts[1] != str(d):
            raise CorruptCache(f"{path}: bad block header {lines[pos]!r}")
        n = int(parts[3])
        entries = lines[pos + 1: pos + 1 + n]
        if len(entries) != n:
            raise CorruptCache(f"{path}: degree {d} block truncated")
        try:
            blocks[d] = [Poly.parse(F, s) for s in entries]
        except Exception as exc:
            raise CorruptCache(f"{path}: unparsable entry in degree {d}") from exc
        pos += 1 + n
    if pos != len(lines):
        raise CorruptCache(f"{path}: trailing content after the last block")
    return IrreducibleCache(F, head["max_degree"], blocks)


def verify(path, q: int | None = None, spot_checks: int = 100, seed: int = 0) -> dict:
    """Counts against the necklace formula, ordering, and random re-factoring."""
    cache = load(path, q)
    F = cache.field
    counts = {}
    for d, block in cache.blocks.items():
        expected = count_irreducible(F.q, d)
        if len(block) != expected:
            raise CorruptCache(f"degree {d}: {len(block)} entries, expected {expected}")
        keys = [P.sort_key() for P in block]
        if any(P.degree != d or not P.is_monic() for P in block) or keys != sorted(set(keys)):
            raise CorruptCache(f"degree {d}: entries not distinct monic degree-{d} polynomials in order")
        counts[d] = expected
    flat = [P for d in sorted(cache.blocks) for P in cache.blocks[d]]
    rng = random.Random(seed)
    picks = sorted(rng.sample(range(len(flat)), min(spot_checks, len(flat))))
    for i in picks:
        if not factor(flat[i]).is_prime():
            raise CorruptCache(f"entry {flat[i].text()} is reducible")
    return {"q": F.q, "max_degree": cache.max_degree, "counts": counts, "spot_checked": len(picks),
            "verified": True}
