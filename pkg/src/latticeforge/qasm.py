"""OpenQASM 3.0 compilation of drafts, and a parser for the emitted subset.

One declared qubit per logical row (ascending row order), gates in
(column, row) order, and a single terminal measurement of the whole
register. Rotation angles render as symbolic pi fractions when they are
exact binary fractions of pi, otherwise as 12-significant-digit
decimals. The parser accepts exactly this subset, so emitted programs
can be round-tripped and checked without an external toolchain.
"""

from __future__ import annotations

import dataclasses
import math
import os
import re
import tempfile
from fractions import Fraction

from .errors import BindingError, DomainError, LayoutError, ParseError
from .grid import (
    CHAIN_KINDS,
    ROTATION_KINDS,
    AlgorithmGrid,
    Tile,
    TileKind,
    errors_only,
    logical_rows,
    validate,
)

_GATE_NAMES = {
    TileKind.HADAMARD: "h",
    TileKind.S: "s",
    TileKind.T: "t",
    TileKind.ROTX: "rx",
    TileKind.ROTY: "ry",
    TileKind.ROTZ: "rz",
}

TWO_PI = 2 * math.pi


@dataclasses.dataclass(frozen=True)
class ThetaBinding:
    """A compile-time angle for one rotation tile, addressed by anchor."""

    kind: TileKind
    row: int
    col: int
    theta: float

    def __post_init__(self):
        if not isinstance(self.kind, TileKind):
            object.__setattr__(self, "kind", TileKind(self.kind))
        if self.kind not in ROTATION_KINDS:
            raise DomainError(f"{self.kind.value} takes no angle binding")
        if isinstance(self.theta, bool) or not isinstance(self.theta, (int, float)):
            raise DomainError(f"theta must be a number, got {self.theta!r}")
        if not math.isfinite(self.theta):
            raise DomainError(f"theta must be finite, got {self.theta!r}")
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def site(self) -> tuple[str, int, int]:
        return (self.kind.value, self.row, self.col)


@dataclasses.dataclass(frozen=True)
class RotationSite:
    """An unbound rotation tile that needs an angle before compilation."""

    kind: TileKind
    row: int
    col: int

    @property
    def site(self) -> tuple[str, int, int]:
        return (self.kind.value, self.row, self.col)


@dataclasses.dataclass(frozen=True)
class QasmProgram:
    text: str
    qubits: int
    row_register: dict[int, int]


def collect_rotations(grid: AlgorithmGrid) -> list[RotationSite]:
    """Rotation tiles still needing an angle, ordered by (row, col)."""
    out = [RotationSite(t.kind, t.row, t.col)
           for t in grid.tiles
           if t.kind in ROTATION_KINDS and t.theta is None]
    out.sort(key=lambda s: (s.row, s.col))
    return out


def normalise_theta(theta: float) -> float:
    """Wrap an angle into (-2*pi, 2*pi]."""
    if -TWO_PI < theta <= TWO_PI:
        return theta
    wrapped = (theta + TWO_PI) % (2 * TWO_PI) - TWO_PI
    if wrapped == -TWO_PI:
        wrapped = TWO_PI
    return wrapped


def render_theta(theta: float) -> str:
    """Symbolic pi fraction when exact (denominator up to 16), else a
    12-significant-digit decimal."""
    theta = normalise_theta(theta)
    if theta == 0:
        return "0"
    for k in range(5):
        scaled = theta * (1 << k) / math.pi
        m = round(scaled)
        if m != 0 and m * math.pi / (1 << k) == theta:
            frac = Fraction(m, 1 << k)
            num, den = frac.numerator, frac.denominator
            sign = "-" if num < 0 else ""
            mag = abs(num)
            core = "pi" if mag == 1 else f"{mag}*pi"
            if den > 1:
                core += f"/{den}"
            return sign + core
    return f"{theta:.12g}"


def emit(grid: AlgorithmGrid, bindings: list[ThetaBinding] = ()) -> QasmProgram:
    """Compile a draft, requiring an angle for every unbound rotation.

    Raises:
        LayoutError: the draft carries error diagnostics.
        DomainError: the draft has no logical rows to compile.
        BindingError: some rotations are missing angles, or a binding
            does not address an unbound rotation; the error lists both.
    """
    bad = errors_only(validate(grid))
    if bad:
        raise LayoutError(bad)
    rows = logical_rows(grid)
    if not rows:
        raise DomainError("draft has no logical rows to compile")

    needed = {s.site for s in collect_rotations(grid)}
    by_site: dict[tuple[str, int, int], float] = {}
    unknown = []
    for b in bindings:
        if b.site not in needed or b.site in by_site:
            unknown.append(b.site)
        else:
            by_site[b.site] = b.theta
    missing = sorted(needed - set(by_site))
    if missing or unknown:
        raise BindingError(
            f"rotation bindings do not match the draft: "
            f"missing {missing}, unknown {unknown}",
            missing=missing, unknown=unknown,
        )

    register = {row: i for i, row in enumerate(rows)}
    n = len(rows)
    lines = [
        "OPENQASM 3.0;",
        'include "stdgates.inc";',
        f"qubit[{n}] q;",
        f"bit[{n}] c;",
    ]
    gate_tiles = [t for t in grid.tiles
                  if t.kind in CHAIN_KINDS or t.kind is TileKind.CNOT]
    gate_tiles.sort(key=lambda t: (t.col, t.row))
    for tile in gate_tiles:
        if tile.kind is TileKind.CNOT:
            control = register[tile.row - 2]
            target = register[tile.row]
            lines.append(f"cx q[{control}], q[{target}];")
        elif tile.kind in ROTATION_KINDS:
            theta = tile.theta if tile.theta is not None \
                else by_site[(tile.kind.value, tile.row, tile.col)]
            lines.append(
                f"{_GATE_NAMES[tile.kind]}({render_theta(theta)}) "
                f"q[{register[tile.row]}];"
            )
        else:
            lines.append(f"{_GATE_NAMES[tile.kind]} q[{register[tile.row]}];")
    lines.append("c = measure q;")
    return QasmProgram("\n".join(lines) + "\n", n, register)


def write_script(program: QasmProgram, path: str | os.PathLike) -> None:
    """Write atomically: temp file in the target directory, then rename."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(program.text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --------------------------------------------------------------------------
# Subset parser.

@dataclasses.dataclass(frozen=True)
class ParsedGate:
    name: str
    params: tuple[float, ...]
    operands: tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class ParsedProgram:
    version: str
    includes: tuple[str, ...]
    qubits: int
    bits: int
    gates: tuple[ParsedGate, ...]
    final_measure: bool

    def count(self, name: str) -> int:
        return sum(1 for g in self.gates if g.name == name)


_TOKEN_RE = re.compile(r"""
    (?P<number>\d+\.\d+(?:[eE][+-]?\d+)?|\.\d+|\d+(?:[eE][+-]?\d+)?)
  | (?P<string>"[^"]*")
  | (?P<name>[A-Za-z_][A-Za-z_0-9.]*)
  | (?P<symbol>[\[\](),;=*/-])
  | (?P<space>\s+)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind != "space":
            tokens.append((kind, m.group()))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of program")
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        kind, text = self.next()
        if text != value:
            raise ParseError(f"expected {value!r}, got {text!r}")

    def expect_kind(self, kind: str) -> str:
        got_kind, text = self.next()
        if got_kind != kind:
            raise ParseError(f"expected {kind}, got {text!r}")
        return text

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)


def _parse_int(p: _Parser) -> int:
    text = p.expect_kind("number")
    if not text.isdigit():
        raise ParseError(f"expected an integer, got {text!r}")
    return int(text)


def _parse_angle(p: _Parser) -> float:
    """['-'] (INT '*')? 'pi' ('/' INT)? | ['-'] NUMBER"""
    sign = 1.0
    if p.peek() == ("symbol", "-"):
        p.next()
        sign = -1.0
    kind, text = p.next()
    if kind == "number":
        value = float(text)
        if p.peek() == ("symbol", "*"):
            p.next()
            name = p.expect_kind("name")
            if name != "pi":
                raise ParseError(f"expected pi, got {name!r}")
            value = float(text) * math.pi
            if p.peek() == ("symbol", "/"):
                p.next()
                value /= _parse_int(p)
        return sign * value
    if kind == "name" and text == "pi":
        value = math.pi
        if p.peek() == ("symbol", "/"):
            p.next()
            value /= _parse_int(p)
        return sign * value
    raise ParseError(f"malformed angle near {text!r}")


_KNOWN_GATES = {"h": (0, 1), "s": (0, 1), "t": (0, 1),
                "rx": (1, 1), "ry": (1, 1), "rz": (1, 1), "cx": (0, 2)}


def parse(text: str) -> ParsedProgram:
    """Parse the emitted OpenQASM 3.0 subset.

    Anything outside the subset (other gates, expressions, register
    names) is a ParseError.
    """
    p = _Parser(_tokenize(text))
    p.expect("OPENQASM")
    version = p.expect_kind("number")
    if version != "3.0":
        raise ParseError(f"unsupported OpenQASM version {version}")
    p.expect(";")

    includes = []
    while p.peek() == ("name", "include"):
        p.next()
        includes.append(p.expect_kind("string").strip('"'))
        p.expect(";")

    qubits = bits = None
    while p.peek() and p.peek()[1] in ("qubit", "bit"):
        which = p.next()[1]
        p.expect("[")
        size = _parse_int(p)
        p.expect("]")
        name = p.expect_kind("name")
        p.expect(";")
        if which == "qubit":
            if name != "q" or qubits is not None:
                raise ParseError("expected a single register 'qubit[n] q'")
            qubits = size
        else:
            if name != "c" or bits is not None:
                raise ParseError("expected a single register 'bit[n] c'")
            bits = size
    if qubits is None or bits is None:
        raise ParseError("missing qubit/bit register declarations")

    gates: list[ParsedGate] = []
    final_measure = False
    while not p.at_end():
        kind, text = p.next()
        if kind != "name":
            raise ParseError(f"expected a statement, got {text!r}")
        if text == "c":
            p.expect("=")
            name = p.expect_kind("name")
            if name != "measure":
                raise ParseError(f"expected measure, got {name!r}")
            reg = p.expect_kind("name")
            if reg != "q":
                raise ParseError(f"can only measure register q, got {reg!r}")
            p.expect(";")
            final_measure = True
            if not p.at_end():
                raise ParseError("statements after the final measurement")
            break
        if text not in _KNOWN_GATES:
            raise ParseError(f"unknown gate {text!r}")
        n_params, n_operands = _KNOWN_GATES[text]
        params = []
        if p.peek() == ("symbol", "("):
            p.next()
            params.append(_parse_angle(p))
            p.expect(")")
        if len(params) != n_params:
            raise ParseError(f"gate {text} takes {n_params} parameter(s)")
        operands = []
        while True:
            reg = p.expect_kind("name")
            if reg != "q":
                raise ParseError(f"unknown register {reg!r}")
            p.expect("[")
            idx = _parse_int(p)
            p.expect("]")
            operands.append(idx)
            if p.peek() == ("symbol", ","):
                p.next()
                continue
            break
        p.expect(";")
        if len(operands) != n_operands:
            raise ParseError(f"gate {text} takes {n_operands} operand(s)")
        if any(i >= qubits for i in operands):
            raise ParseError(f"operand out of range in {text} {operands}")
        if text == "cx" and operands[0] == operands[1]:
            raise ParseError("cx operands must differ")
        gates.append(ParsedGate(text, tuple(params), tuple(operands)))

    return ParsedProgram(version, tuple(includes), qubits, bits,
                         tuple(gates), final_measure)
