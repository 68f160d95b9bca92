"""Compact digit encoding of sequence pairs, and the record-line format.

A pair of equal-length binary sequences (X, Y) is written as one digit per
column pair: digit k describes the columns (x_k, y_k) and its mirror
(x_{L+1-k}, y_{L+1-k}).  Odd-length pairs carry one extra trailing digit for
the unpaired central column.  The nine quad digits cover the eight column
pairs whose two columns are each internally constant or internally opposite,
plus the one boundary quad '0'; other column pairs are not encodable.
"""

from dataclasses import dataclass

from .seqcore import (
    KIND_BASE,
    KIND_NEAR_NORMAL,
    KIND_NORMAL,
    KIND_T,
    ALL_KINDS,
    QuadseqError,
    SeqQuadruple,
    parse_quad,
    seq_str,
)

PAIR_AB = "ab"
PAIR_CD = "cd"

# digit -> ((x_k, y_k), (x_mirror, y_mirror))
QUAD_TABLE = {
    "0": ((1, 1), (1, -1)),
    "1": ((1, 1), (1, 1)),
    "2": ((1, -1), (1, -1)),
    "3": ((-1, -1), (1, 1)),
    "4": ((1, -1), (-1, 1)),
    "5": ((-1, 1), (1, -1)),
    "6": ((1, 1), (-1, -1)),
    "7": ((-1, 1), (-1, 1)),
    "8": ((-1, -1), (-1, -1)),
}

# digit -> (x_center, y_center)
CENTER_TABLE = {
    "0": (1, 1),
    "1": (1, -1),
    "2": (-1, 1),
    "3": (-1, -1),
}

_QUAD_REVERSE = {v: k for k, v in QUAD_TABLE.items()}
_CENTER_REVERSE = {v: k for k, v in CENTER_TABLE.items()}


class CodecError(QuadseqError):
    """Malformed code string or record line."""


class UnencodableError(CodecError):
    """Pair contains a column quad outside the nine-digit alphabet."""


@dataclass(frozen=True)
class QuadCode:
    digits: str
    pair_kind: str
    n: int


def _pair_length(pair_kind: str, n: int) -> int:
    if pair_kind == PAIR_AB:
        return n + 1
    if pair_kind == PAIR_CD:
        return n
    raise CodecError(f"unknown pair kind {pair_kind!r}")


def code_length(pair_kind: str, n: int) -> int:
    """Number of digits encoding a pair of the given kind and order."""
    length = _pair_length(pair_kind, n)
    return length // 2 + length % 2


def decode_pair(digits: str, pair_kind: str, n: int):
    """Decode a digit string into the pair (X, Y) of binary sequences.

    Digit k fills positions k and L+1-k of both sequences; for odd L the
    final digit fills the central column.  Membership of the decoded pair in
    any sequence class is *not* checked here.
    """
    length = _pair_length(pair_kind, n)
    has_center = length % 2 == 1
    npairs = length // 2
    if len(digits) != npairs + (1 if has_center else 0):
        raise CodecError(
            f"{pair_kind} code for order {n} needs "
            f"{npairs + (1 if has_center else 0)} digits, got {len(digits)}"
        )
    x = [0] * length
    y = [0] * length
    for k in range(npairs):
        digit = digits[k]
        if digit not in QUAD_TABLE:
            raise CodecError(f"unknown quad digit {digit!r} at position {k + 1}")
        (xk, yk), (xm, ym) = QUAD_TABLE[digit]
        x[k], y[k] = xk, yk
        x[length - 1 - k], y[length - 1 - k] = xm, ym
    if has_center:
        digit = digits[-1]
        if digit not in CENTER_TABLE:
            raise CodecError(f"unknown central digit {digit!r}")
        x[npairs], y[npairs] = CENTER_TABLE[digit]
    return tuple(x), tuple(y)


def encode_pair(x, y, pair_kind: str) -> str:
    """Inverse of decode_pair; raises UnencodableError when some column quad
    is outside the nine-digit alphabet."""
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        raise CodecError("sequences of a pair must have equal length")
    length = len(x)
    if pair_kind == PAIR_AB:
        if length % 2 == 0:
            raise CodecError("ab pairs must have odd length (order n even)")
    elif pair_kind == PAIR_CD:
        if length % 2 == 1:
            raise CodecError("cd pairs must have even length")
    else:
        raise CodecError(f"unknown pair kind {pair_kind!r}")
    digits = []
    for k in range(length // 2):
        quad = ((x[k], y[k]), (x[length - 1 - k], y[length - 1 - k]))
        digit = _QUAD_REVERSE.get(quad)
        if digit is None:
            raise UnencodableError(f"column pair {quad} at position {k + 1} has no digit")
        digits.append(digit)
    if length % 2 == 1:
        center = (x[length // 2], y[length // 2])
        digits.append(_CENTER_REVERSE[center])
    return "".join(digits)


def encode_quadruple(q: SeqQuadruple) -> tuple[str, str]:
    """Encode a shape-(n+1, n) quadruple as its (ab, cd) digit strings."""
    if q.m != q.n + 1:
        raise CodecError(f"encoded records need shape (n+1, n), got {q.shape}")
    ab = encode_pair(q.a, q.b, PAIR_AB)
    cd = encode_pair(q.c, q.d, PAIR_CD)
    return ab, cd


def parse_record(line: str) -> SeqQuadruple:
    """Parse one record line into a quadruple; membership is not verified.

    Formats (kind tag case-insensitive):
      nn <n> <ab-code> <cd-code>    encoded near-normal record
      <kind> <A;B;C;D>              plaintext record, any kind
    """
    fields = line.split()
    if not fields:
        raise CodecError("empty record line")
    kind = fields[0].lower()
    if kind not in ALL_KINDS:
        raise CodecError(f"unknown kind tag {fields[0]!r}")
    if kind == KIND_NEAR_NORMAL and len(fields) == 4:
        try:
            n = int(fields[1])
        except ValueError:
            raise CodecError(f"bad order field {fields[1]!r}") from None
        a, b = decode_pair(fields[2], PAIR_AB, n)
        c, d = decode_pair(fields[3], PAIR_CD, n)
        return SeqQuadruple(a, b, c, d, kind)
    if len(fields) == 2 and ";" in fields[1]:
        return parse_quad(fields[1], kind)
    raise CodecError(f"malformed record line: {line.strip()!r}")


def format_record(q: SeqQuadruple) -> str:
    """Record line for a quadruple: encoded for near-normal shapes when the
    pair quads allow it, plaintext otherwise."""
    if q.kind == KIND_NEAR_NORMAL:
        try:
            ab, cd = encode_quadruple(q)
            return f"{q.kind} {q.n} {ab} {cd}"
        except UnencodableError:
            pass
    return f"{q.kind} {q.plaintext()}"
