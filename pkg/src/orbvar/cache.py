"""On-disk cache for Weyl group tables and Chevalley structure constants.

File layout::

    MAGIC | u32 header length | JSON header | (u64 length | payload) per section

The header records family, rank, convention stamp, library version and a
SHA-256 digest per section.  Files with another stamp or version are treated
as stale and rebuilt; unreadable or inconsistent files are rebuilt with a
warning.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import struct
import tempfile
import warnings
from pathlib import Path

from . import __version__
from .chevalley import ChevalleyAlgebra, build_chevalley
from .rootsys import RootSystem
from .weyl import DEFAULT_CUTOFF, WeylElement, WeylGroup, weyl_order, WeylError

log = logging.getLogger(__name__)

MAGIC = b"ORBVAR\x00C"
FORMAT = 1
ENV_VAR = "ORBVAR_CACHE_DIR"
TABLE_STAMP = (
    "cartan=bourbaki,D4-center=node3;root-order=height-lex;"
    "words=lexmin-reduced;N=extraspecial-positive;parabolic=W_I.D_I"
)


class CacheError(RuntimeError):
    """The file is not a readable cache entry."""


class StaleCacheError(CacheError):
    """The entry was written under another convention stamp or library version."""


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "orbvar"


# -- encoding ------------------------------------------------------------------


def pack(header: dict, sections: dict[str, bytes]) -> bytes:
    header = dict(header)
    header["format"] = FORMAT
    header["sections"] = [
        {"name": k, "length": len(v), "sha256": hashlib.sha256(v).hexdigest()} for k, v in sections.items()
    ]
    head = json.dumps(header, sort_keys=True, separators=(",", ":")).encode()
    out = [MAGIC, struct.pack(">I", len(head)), head]
    for v in sections.values():
        out += [struct.pack(">Q", len(v)), v]
    return b"".join(out)


def unpack(blob: bytes) -> tuple[dict, dict[str, bytes]]:
    if not blob.startswith(MAGIC):
        raise CacheError("bad magic")
    pos = len(MAGIC)
    try:
        (hlen,) = struct.unpack_from(">I", blob, pos)
        pos += 4
        header = json.loads(blob[pos:pos + hlen])
        pos += hlen
        sections = {}
        for meta in header["sections"]:
            (n,) = struct.unpack_from(">Q", blob, pos)
            pos += 8
            data = blob[pos:pos + n]
            pos += n
            if n != meta["length"] or len(data) != n:
                raise CacheError(f"section {meta['name']} is truncated")
            if hashlib.sha256(data).hexdigest() != meta["sha256"]:
                raise CacheError(f"section {meta['name']} fails its checksum")
            sections[meta["name"]] = data
    except (struct.error, ValueError, KeyError, TypeError) as exc:
        raise CacheError(f"malformed cache entry: {exc}") from exc
    if pos != len(blob):
        raise CacheError("trailing bytes after last section")
    if header.get("format") != FORMAT:
        raise CacheError(f"unknown format {header.get('format')}")
    return header, sections


def encode_weyl(W: WeylGroup) -> dict[str, bytes]:
    words = bytearray()
    for w in W.elements:
        words.append(len(w.word))
        words.extend(w.word)
    nroots = len(W.rs.roots)
    perms = struct.pack(f">{nroots * len(W)}H", *(k for w in W.elements for k in w.perm))
    return {"words": bytes(words), "perms": perms}


def decode_weyl(rs: RootSystem, sections: dict[str, bytes], cutoff: int) -> WeylGroup:
    words, raw = sections["words"], sections["perms"]
    nroots = len(rs.roots)
    order = weyl_order(rs.spec.family, rs.rank)
    if len(raw) != 2 * nroots * order:
        raise CacheError("permutation table has the wrong size")
    flat = struct.unpack(f">{nroots * order}H", raw)
    elements, pos = [], 0
    for e in range(order):
        n = words[pos]
        word = tuple(words[pos + 1:pos + 1 + n])
        pos += 1 + n
        elements.append(WeylElement(word, tuple(flat[e * nroots:(e + 1) * nroots])))
    if pos != len(words):
        raise CacheError("word table has trailing bytes")
    W = WeylGroup(rs, cutoff=cutoff, elements=elements)
    if W.elements[0] != W.identity or len(W._by_perm) != order:
        raise CacheError("Weyl table is inconsistent")
    # spot check: generators act as recorded
    for w in W.elements[: 1 + rs.rank]:
        if W.from_word(w.word) != w:
            raise CacheError("Weyl table disagrees with the root system")
    return W


def encode_constants(alg: ChevalleyAlgebra) -> dict[str, bytes]:
    items = sorted(alg.constants.items())
    return {"constants": b"".join(struct.pack(">HHb", i, j, n) for (i, j), n in items)}


def decode_constants(rs: RootSystem, sections: dict[str, bytes]) -> ChevalleyAlgebra:
    raw = sections["constants"]
    if len(raw) % 5:
        raise CacheError("constant table has the wrong size")
    consts = {(i, j): n for i, j, n in struct.iter_unpack(">HHb", raw)}
    try:
        return ChevalleyAlgebra(rs, check=True, constants=consts)
    except Exception as exc:  # noqa: BLE001 - any failure means the table is bad
        raise CacheError(f"cached constants rejected: {exc}") from exc


# -- the cache ---------------------------------------------------------------------


class TableCache:
    def __init__(self, directory: str | os.PathLike | None = None, stamp: str = TABLE_STAMP,
                 version: str = __version__):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.stamp = stamp
        self.version = version
        self.hits = 0
        self.misses = 0
        self.rebuilt = 0

    def path(self, kind: str, rs: RootSystem) -> Path:
        return self.directory / f"{rs.name}.{kind}.orbc"

    def header(self, kind: str, rs: RootSystem) -> dict:
        return {"kind": kind, "family": rs.spec.family, "rank": rs.rank,
                "stamp": self.stamp, "version": self.version}

    def read(self, kind: str, rs: RootSystem) -> dict[str, bytes]:
        """Sections of a matching entry; raises CacheError or StaleCacheError."""
        p = self.path(kind, rs)
        header, sections = unpack(p.read_bytes())
        want = self.header(kind, rs)
        for key in ("kind", "family", "rank"):
            if header.get(key) != want[key]:
                raise CacheError(f"{p.name}: {key} is {header.get(key)!r}, expected {want[key]!r}")
        for key in ("stamp", "version"):
            if header.get(key) != want[key]:
                raise StaleCacheError(f"{p.name}: {key} {header.get(key)!r} does not match {want[key]!r}")
        return sections

    def write(self, kind: str, rs: RootSystem, sections: dict[str, bytes]) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        p = self.path(kind, rs)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=p.name, suffix=".tmp")
        with os.fdopen(fd, "wb") as fh:
            fh.write(pack(self.header(kind, rs), sections))
        os.replace(tmp, p)
        return p

    def _load(self, kind, rs, decode, build, encode):
        p = self.path(kind, rs)
        if p.exists():
            try:
                obj = decode(self.read(kind, rs))
                self.hits += 1
                return obj
            except StaleCacheError as exc:
                log.info("ignoring stale cache entry: %s", exc)
            except (CacheError, OSError) as exc:
                warnings.warn(f"corrupt cache entry {p}: {exc}; rebuilding", RuntimeWarning, stacklevel=3)
                self.rebuilt += 1
        self.misses += 1
        obj = build()
        try:
            self.write(kind, rs, encode(obj))
        except OSError as exc:
            log.warning("could not write cache entry %s: %s", p, exc)
        return obj

    def weyl_group(self, rs: RootSystem, cutoff: int = DEFAULT_CUTOFF) -> WeylGroup:
        order = weyl_order(rs.spec.family, rs.rank)
        if order > cutoff:
            raise WeylError(f"|W({rs.name})| = {order} exceeds the enumeration cutoff {cutoff}")
        return self._load("weyl", rs, lambda s: decode_weyl(rs, s, cutoff),
                          lambda: WeylGroup(rs, cutoff=cutoff), encode_weyl)

    def algebra(self, rs: RootSystem) -> ChevalleyAlgebra:
        return self._load("chevalley", rs, lambda s: decode_constants(rs, s),
                          lambda: build_chevalley(rs), encode_constants)

    def entries(self) -> list[dict]:
        out = []
        if not self.directory.exists():
            return out
        for p in sorted(self.directory.glob("*.orbc")):
            try:
                header, _ = unpack(p.read_bytes())
                header = {k: header[k] for k in ("kind", "family", "rank", "stamp", "version")}
                header["current"] = header["stamp"] == self.stamp and header["version"] == self.version
            except (CacheError, OSError) as exc:
                header = {"error": str(exc)}
            header["file"] = p.name
            out.append(header)
        return out

    def invalidate(self, name: str | None = None) -> int:
        """Delete entries (all, or those of one type such as ``"D4"``); returns the count."""
        if not self.directory.exists():
            return 0
        pattern = f"{name}.*.orbc" if name else "*.orbc"
        n = 0
        for p in self.directory.glob(pattern):
            p.unlink()
            n += 1
        return n
