"""Line-oriented text files for keys (magic ``QDALT1``) and attack reports.

Secret key::

    QDALT1
    secret
    field ell=<int> base_poly=<int> ext_delta=<hex>
    gamma <int>
    r0 <int>
    gens <hex> ...
    t <hex> ...
    y <hex> ...

Public key::

    QDALT1
    public
    field ell=<int> base_poly=<int> ext_delta=<hex>
    gamma <int>
    n0 <int>
    code base <n> <k>
    <hex row> ...
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import codes
from . import qd_alternant as qa
from .attack import RecoveredKey
from .errors import ParseError, QdaltError
from .galois import BASE, FieldSpec, field_spec, from_hex, to_hex

MAGIC = "QDALT1"


def _field_line(f: FieldSpec) -> str:
    return f"field {f.describe()}"


def format_secret(sk: qa.QdSecretKey) -> str:
    lines = [
        MAGIC,
        "secret",
        _field_line(sk.field),
        f"gamma {sk.gamma}",
        f"r0 {sk.r0}",
        "gens " + to_hex(sk.group.gens),
        "t " + to_hex(sk.t),
        "y " + to_hex(sk.y_blocks),
    ]
    return "\n".join(lines) + "\n"


def format_public(pk: qa.QdPublicKey) -> str:
    lines = [MAGIC, "public", _field_line(pk.field), f"gamma {pk.gamma}", f"n0 {pk.n0}"]
    lines += codes.format_code(pk.code)
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self, text: str, path=None):
        self.lines = text.splitlines()
        self.path = path
        self.pos = 0

    def fail(self, message, line=None):
        raise ParseError(message, self.pos + 1 if line is None else line, self.path)

    def next(self, what: str) -> str:
        if self.pos >= len(self.lines):
            self.fail(f"unexpected end of file, expected {what}")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def keyword(self, key: str) -> list[str]:
        toks = self.next(f"'{key}' line").split()
        if not toks or toks[0] != key:
            self.fail(f"expected a '{key}' line", self.pos)
        return toks[1:]

    def integer(self, key: str) -> int:
        toks = self.keyword(key)
        if len(toks) != 1:
            self.fail(f"'{key}' takes one integer", self.pos)
        try:
            return int(toks[0])
        except ValueError:
            self.fail(f"bad integer for '{key}'", self.pos)

    def hexes(self, key: str) -> np.ndarray:
        toks = self.keyword(key)
        try:
            return from_hex(toks)
        except (ValueError, OverflowError):
            self.fail(f"bad hex value in '{key}'", self.pos)

    def header(self, kind: str):
        if self.next("magic header").strip() != MAGIC:
            self.fail(f"missing {MAGIC} header", 1)
        if self.next("key kind").strip() != kind:
            self.fail(f"expected a {kind} key", 2)

    def field(self) -> FieldSpec:
        toks = self.keyword("field")
        try:
            kv = dict(t.split("=", 1) for t in toks)
            return field_spec(int(kv["ell"]), int(kv["base_poly"]), int(kv["ext_delta"], 16))
        except (KeyError, ValueError) as e:
            self.fail(f"bad field description ({e})", self.pos)

    def end(self):
        if any(ln.strip() for ln in self.lines[self.pos :]):
            self.fail("trailing content")


def parse_secret(text: str, path=None) -> qa.QdSecretKey:
    rd = _Reader(text, path)
    rd.header("secret")
    f = rd.field()
    gamma = rd.integer("gamma")
    r0 = rd.integer("r0")
    gens = rd.hexes("gens")
    line_gens = rd.pos
    t = rd.hexes("t")
    line_t = rd.pos
    yb = rd.hexes("y")
    rd.end()
    if gens.size != gamma:
        rd.fail(f"expected {gamma} generators, got {gens.size}", line_gens)
    if t.size != yb.size:
        rd.fail("t and y have different lengths", rd.pos)
    if np.any(gens >= f.qsq) or np.any(t >= f.qsq) or np.any(yb >= f.qsq):
        rd.fail("value outside the field", line_t)
    try:
        group = qa.make_group(f, gens)
        sk = qa.QdSecretKey(f, group, t, qa.check_multiplier(yb), r0)
        qa.check_support(sk.x)
    except (QdaltError, ValueError) as e:
        rd.fail(f"invalid key: {e}", line_gens)
    return sk


def parse_public(text: str, path=None) -> qa.QdPublicKey:
    rd = _Reader(text, path)
    rd.header("public")
    f = rd.field()
    gamma = rd.integer("gamma")
    n0 = rd.integer("n0")
    code, rd.pos = codes.parse_code(f, rd.lines, rd.pos, path)
    rd.end()
    if code.level != BASE:
        rd.fail("public code must be over the base field", 6)
    if code.n != n0 << gamma:
        rd.fail(f"code length {code.n} differs from n0 * 2^gamma = {n0 << gamma}", 6)
    return qa.QdPublicKey(f, gamma, n0, code)


def parse_recovered(text: str, f: FieldSpec, path=None) -> RecoveredKey:
    """The key fields (``r``, ``x``, ``y``) of an attack report."""
    vals = {}
    for i, line in enumerate(text.splitlines(), 1):
        if "=" not in line:
            raise ParseError("expected key=value", i, path)
        k, v = line.split("=", 1)
        vals[k] = (i, v)
    try:
        x = from_hex(vals["x"][1].split())
        y = from_hex(vals["y"][1].split())
        r = int(vals["r"][1])
    except KeyError as e:
        raise ParseError(f"report has no {e.args[0]} field", None, path) from None
    except ValueError:
        raise ParseError("bad value in report", None, path) from None
    if np.any(x >= f.qsq) or np.any(y >= f.qsq):
        raise ParseError("value outside the field", vals["x"][0], path)
    return RecoveredKey(x, y, r, vals.get("normalization", (0, ""))[1])


def write_secret(sk: qa.QdSecretKey, path) -> None:
    Path(path).write_text(format_secret(sk))


def write_public(pk: qa.QdPublicKey, path) -> None:
    Path(path).write_text(format_public(pk))


def read_secret(path) -> qa.QdSecretKey:
    return parse_secret(Path(path).read_text(), path)


def read_public(path) -> qa.QdPublicKey:
    return parse_public(Path(path).read_text(), path)
