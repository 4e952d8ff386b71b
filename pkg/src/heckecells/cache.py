"""Persistent cache for KL expansions and h-table entries.

File layout: magic ``HKC1``, a little-endian u32 header length, a JSON
header {"format": 1, "type": ..., "normalization": "soergel-v"}, then a
stream of length-prefixed binary records.  Records are append-only: a
write interrupted mid-record leaves every earlier record readable, and a
file written by this module round-trips byte-identically through
read -> write because record order and integer encodings are canonical.

A mismatched normalization tag or format version is a hard error
(VersionMismatch); structural damage inside a complete record raises
CorruptCache.
"""

from __future__ import annotations

import json
import os
import struct
from dataclasses import dataclass, field

from .errors import CorruptCache, VersionMismatch

__all__ = ["CacheFile", "KL_RECORD", "H_RECORD", "read_cache", "write_cache"]

MAGIC = b"HKC1"
FORMAT_VERSION = 1
NORMALIZATION = "soergel-v"

KL_RECORD = 1
H_RECORD = 2


def _write_uvarint(out: bytearray, n: int) -> None:
    if n < 0:
        raise ValueError("uvarint of negative value")
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return


def _write_svarint(out: bytearray, n: int) -> None:
    # zigzag, valid for arbitrary-precision ints
    _write_uvarint(out, n * 2 if n >= 0 else -n * 2 - 1)


def _read_uvarint(buf: bytes, pos: int) -> tuple[int, int]:
    n = 0
    shift = 0
    while True:
        if pos >= len(buf):
            raise CorruptCache("varint runs past record end")
        b = buf[pos]
        pos += 1
        n |= (b & 0x7F) << shift
        if not b & 0x80:
            return n, pos
        shift += 7


def _read_svarint(buf: bytes, pos: int) -> tuple[int, int]:
    u, pos = _read_uvarint(buf, pos)
    return (u >> 1) if not u & 1 else -((u + 1) >> 1), pos


def _encode_laurent(out: bytearray, poly: dict[int, int]) -> None:
    _write_uvarint(out, len(poly))
    for e in sorted(poly):
        _write_svarint(out, e)
        _write_svarint(out, poly[e])


def _decode_laurent(buf: bytes, pos: int) -> tuple[dict[int, int], int]:
    count, pos = _read_uvarint(buf, pos)
    poly = {}
    for _ in range(count):
        e, pos = _read_svarint(buf, pos)
        c, pos = _read_svarint(buf, pos)
        poly[e] = c
    return poly, pos


@dataclass
class CacheFile:
    """Parsed cache contents.

    kl_records: (w, [(x, P-coefficient tuple), ...]) per element, ascending.
    h_records: (x, y, {z: {exponent: coefficient}}) for unrestricted columns.
    """

    type_descriptor: str
    format_version: int = FORMAT_VERSION
    normalization: str = NORMALIZATION
    kl_records: list = field(default_factory=list)
    h_records: list = field(default_factory=list)
    truncated: bool = False

    def header_bytes(self) -> bytes:
        header = json.dumps(
            {
                "format": self.format_version,
                "type": self.type_descriptor,
                "normalization": self.normalization,
            },
            sort_keys=True,
        ).encode()
        return MAGIC + struct.pack("<I", len(header)) + header

    def record_bytes(self) -> bytes:
        out = bytearray()
        for w, entries in self.kl_records:
            rec = bytearray([KL_RECORD])
            _write_uvarint(rec, w)
            _write_uvarint(rec, len(entries))
            for x, ptuple in entries:
                _write_uvarint(rec, x)
                _write_uvarint(rec, len(ptuple))
                for c in ptuple:
                    _write_uvarint(rec, c)
            out += struct.pack("<I", len(rec))
            out += rec
        for x, y, vec in self.h_records:
            rec = bytearray([H_RECORD])
            _write_uvarint(rec, x)
            _write_uvarint(rec, y)
            _write_uvarint(rec, len(vec))
            for z in sorted(vec):
                _write_uvarint(rec, z)
                _encode_laurent(rec, vec[z])
            out += struct.pack("<I", len(rec))
            out += rec
        return bytes(out)

    def canonicalize(self) -> None:
        self.kl_records.sort(key=lambda r: r[0])
        self.h_records.sort(key=lambda r: (r[1], r[0]))


def write_cache(path: str, cache: CacheFile) -> None:
    """Write atomically (temp file + rename); canonical record order."""
    cache.canonicalize()
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "wb") as fh:
        fh.write(cache.header_bytes())
        fh.write(cache.record_bytes())
    os.replace(tmp, path)


def append_h_records(path: str, cache_records: list) -> None:
    """Append h-entry records to an existing cache file, one full record at
    a time, so an interruption never invalidates earlier content."""
    extra = CacheFile(type_descriptor="", h_records=list(cache_records))
    with open(path, "ab") as fh:
        fh.write(extra.record_bytes())


def read_cache(path: str) -> CacheFile:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 8 or data[:4] != MAGIC:
        raise VersionMismatch(f"{path}: not a cache file (bad magic)")
    (hlen,) = struct.unpack("<I", data[4:8])
    if len(data) < 8 + hlen:
        raise CorruptCache(f"{path}: truncated header")
    try:
        header = json.loads(data[8 : 8 + hlen])
    except ValueError as exc:
        raise CorruptCache(f"{path}: unreadable header") from exc
    if header.get("format") != FORMAT_VERSION:
        raise VersionMismatch(f"{path}: format {header.get('format')} != {FORMAT_VERSION}")
    if header.get("normalization") != NORMALIZATION:
        raise VersionMismatch(
            f"{path}: normalization {header.get('normalization')!r} != {NORMALIZATION!r}"
        )
    cache = CacheFile(
        type_descriptor=header.get("type", ""),
        format_version=header["format"],
        normalization=header["normalization"],
    )
    pos = 8 + hlen
    while pos < len(data):
        if pos + 4 > len(data):
            cache.truncated = True
            break
        (rlen,) = struct.unpack("<I", data[pos : pos + 4])
        if pos + 4 + rlen > len(data):
            cache.truncated = True
            break
        rec = data[pos + 4 : pos + 4 + rlen]
        pos += 4 + rlen
        if not rec:
            raise CorruptCache(f"{path}: empty record")
        kind = rec[0]
        p = 1
        if kind == KL_RECORD:
            w, p = _read_uvarint(rec, p)
            count, p = _read_uvarint(rec, p)
            entries = []
            for _ in range(count):
                x, p = _read_uvarint(rec, p)
                plen, p = _read_uvarint(rec, p)
                coeffs = []
                for _ in range(plen):
                    c, p = _read_uvarint(rec, p)
                    coeffs.append(c)
                entries.append((x, tuple(coeffs)))
            cache.kl_records.append((w, entries))
        elif kind == H_RECORD:
            x, p = _read_uvarint(rec, p)
            y, p = _read_uvarint(rec, p)
            count, p = _read_uvarint(rec, p)
            vec = {}
            for _ in range(count):
                z, p = _read_uvarint(rec, p)
                poly, p = _decode_laurent(rec, p)
                vec[z] = poly
            cache.h_records.append((x, y, vec))
        else:
            raise CorruptCache(f"{path}: unknown record kind {kind}")
        if p != len(rec):
            raise CorruptCache(f"{path}: record has {len(rec) - p} trailing bytes")
    return cache
