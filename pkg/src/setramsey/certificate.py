"""Text certificate format for set-colourings.

    RAMSEYCERT 1
    r=<r> s=<s> k=<k> n=<n> construction=<main|simple|external> seed=<int|none>
    m=<m> p=<num>/<den>            (optional, main construction only)
    <u> <v> <hex mask>             (one line per edge, u < v, lexicographic)
    sha256=<hex digest of the edge lines, newlines included>

Masks are lowercase hex without leading zeros; bit i is colour i.
"""

from __future__ import annotations

import hashlib
import io
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .colouring import SetColouring, edge_pairs, num_edges

FORMAT_VERSION = 1
MAX_COLOURS = 4096
CONSTRUCTIONS = ("main", "simple", "external")


class CertificateError(ValueError):
    pass


class CertificateParseError(CertificateError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class ChecksumMismatch(CertificateError):
    pass


class VersionMismatch(CertificateError):
    pass


@dataclass(eq=False)
class Certificate:
    r: int
    s: int
    k: int
    colouring: SetColouring
    construction: str = "external"
    seed: int | None = None
    m: int | None = None
    p: Fraction | None = None
    report: object = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.colouring.n

    def __post_init__(self):
        if self.colouring.r != self.r:
            raise CertificateError("colouring colour count does not match header r")
        if not 1 <= self.r <= MAX_COLOURS:
            raise CertificateError(f"r must lie in [1, {MAX_COLOURS}]")
        if self.construction not in CONSTRUCTIONS:
            raise CertificateError(f"unknown construction tag {self.construction!r}")
        if (self.m is None) != (self.p is None):
            raise CertificateError("m and p must be given together")

    def header_lines(self) -> list[str]:
        seed = "none" if self.seed is None else str(self.seed)
        lines = [
            f"RAMSEYCERT {FORMAT_VERSION}",
            f"r={self.r} s={self.s} k={self.k} n={self.n} construction={self.construction} seed={seed}",
        ]
        if self.m is not None:
            lines.append(f"m={self.m} p={self.p.numerator}/{self.p.denominator}")
        return lines

    def body(self) -> bytes:
        iu, iv = edge_pairs(self.n)
        out = io.StringIO()
        for u, v, mask in zip(iu.tolist(), iv.tolist(), self.colouring.masks()):
            out.write(f"{u} {v} {mask:x}\n")
        return out.getvalue().encode("ascii")

    def checksum(self) -> str:
        return hashlib.sha256(self.body()).hexdigest()

    def to_bytes(self) -> bytes:
        body = self.body()
        head = "".join(line + "\n" for line in self.header_lines()).encode("ascii")
        tail = f"sha256={hashlib.sha256(body).hexdigest()}\n".encode("ascii")
        return head + body + tail

    def same_as(self, other: "Certificate") -> bool:
        return (self.header_lines() == other.header_lines()
                and self.colouring == other.colouring)


def write_certificate(cert: Certificate, sink) -> int:
    """Write to a path or a binary stream; returns the byte count."""
    data = cert.to_bytes()
    if isinstance(sink, (str, Path)):
        Path(sink).write_bytes(data)
    else:
        sink.write(data)
    return len(data)


_HEADER = re.compile(
    r"r=(\d+) s=(\d+) k=(\d+) n=(\d+) construction=(\w+) seed=(\d+|none)")
_MP = re.compile(r"m=(\d+) p=(\d+)/(\d+)")
_EDGE = re.compile(r"(\d+) (\d+) ([0-9a-f]+)")
_SUM = re.compile(r"sha256=([0-9a-f]{64})")


def read_certificate(source) -> Certificate:
    """Parse from a path, a text/binary stream, or bytes; validates everything."""
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()
        if isinstance(data, str):
            data = data.encode("ascii")
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise CertificateParseError(1, "non-ASCII content") from exc
    if not text.endswith("\n"):
        raise CertificateParseError(text.count("\n") + 1, "missing final newline")
    lines = text[:-1].split("\n")

    def line(i: int) -> str:
        if i >= len(lines):
            raise CertificateParseError(i + 1, "unexpected end of file")
        return lines[i]

    first = line(0)
    if not first.startswith("RAMSEYCERT "):
        raise CertificateParseError(1, "missing RAMSEYCERT magic")
    if first != f"RAMSEYCERT {FORMAT_VERSION}":
        raise VersionMismatch(f"unsupported certificate version {first.split(' ', 1)[1]!r}")

    mh = _HEADER.fullmatch(line(1))
    if not mh:
        raise CertificateParseError(2, "malformed parameter header")
    r, s, k, n = (int(x) for x in mh.group(1, 2, 3, 4))
    construction = mh.group(5)
    seed = None if mh.group(6) == "none" else int(mh.group(6))
    if not 1 <= r <= MAX_COLOURS:
        raise CertificateParseError(2, f"r={r} outside [1, {MAX_COLOURS}]")
    if not 0 <= s <= r:
        raise CertificateParseError(2, f"s={s} outside [0, r]")
    if k < 1 or n < 1:
        raise CertificateParseError(2, "k and n must be positive")
    if construction not in CONSTRUCTIONS:
        raise CertificateParseError(2, f"unknown construction {construction!r}")
    if seed is not None and seed >= 1 << 64:
        raise CertificateParseError(2, "seed exceeds 64 bits")

    pos = 2
    m = p = None
    mm = _MP.fullmatch(line(pos))
    if mm:
        m = int(mm.group(1))
        num, den = int(mm.group(2)), int(mm.group(3))
        if den == 0 or num > den or m < 1:
            raise CertificateParseError(pos + 1, "m/p out of range")
        p = Fraction(num, den)
        pos += 1

    iu, iv = edge_pairs(n)
    hexes = []
    body = io.StringIO()
    for u, v in zip(iu.tolist(), iv.tolist()):
        raw = line(pos)
        me = _EDGE.fullmatch(raw)
        if not me or int(me.group(1)) != u or int(me.group(2)) != v:
            raise CertificateParseError(pos + 1, f"expected edge line for ({u}, {v})")
        hexes.append((pos + 1, me.group(3)))
        body.write(raw + "\n")
        pos += 1

    ms = _SUM.fullmatch(line(pos))
    if not ms:
        raise CertificateParseError(pos + 1, "expected sha256 line")
    if pos + 1 != len(lines):
        raise CertificateParseError(pos + 2, "trailing content after checksum")
    digest = hashlib.sha256(body.getvalue().encode("ascii")).hexdigest()
    if digest != ms.group(1):
        raise ChecksumMismatch(f"checksum mismatch: file says {ms.group(1)}, body hashes to {digest}")

    masks = []
    for lineno, hexmask in hexes:
        if len(hexmask) > 1 and hexmask[0] == "0":
            raise CertificateParseError(lineno, "mask has leading zeros")
        mask = int(hexmask, 16)
        if mask >> r:
            raise CertificateParseError(lineno, f"mask uses colours >= r={r}")
        masks.append(mask)
    assert len(masks) == num_edges(n)

    return Certificate(r=r, s=s, k=k, colouring=SetColouring.from_masks(n, r, masks),
                       construction=construction, seed=seed, m=m, p=p)
