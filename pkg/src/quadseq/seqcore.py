"""Exact sequence algebra: autocorrelation profiles, sums, and quadruple verifiers.

All sequences are tuples of machine integers over {+1,-1} (binary) or
{-1,0,+1} (ternary).  Every function here is pure and every value immutable,
so they are safe to share between worker processes.
"""

from dataclasses import dataclass

KIND_BASE = "bs"
KIND_NORMAL = "ns"
KIND_NEAR_NORMAL = "nn"
KIND_T = "ts"

BINARY_KINDS = (KIND_BASE, KIND_NORMAL, KIND_NEAR_NORMAL)
ALL_KINDS = BINARY_KINDS + (KIND_T,)

Seq = tuple[int, ...]


class QuadseqError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetError(QuadseqError):
    """Sequence entry outside the declared alphabet."""


class ShapeError(QuadseqError):
    """Quadruple shape incompatible with its declared kind (malformed input,
    distinct from a clean 'fails the defining equation' verdict)."""


def as_binary(entries) -> Seq:
    seq = tuple(int(v) for v in entries)
    for v in seq:
        if v not in (1, -1):
            raise AlphabetError(f"binary entry must be +1 or -1, got {v}")
    return seq


def as_ternary(entries) -> Seq:
    seq = tuple(int(v) for v in entries)
    for v in seq:
        if v not in (1, 0, -1):
            raise AlphabetError(f"ternary entry must be -1, 0 or +1, got {v}")
    return seq


_CHAR_TO_VALUE = {"+": 1, "-": -1, "0": 0}
_VALUE_TO_CHAR = {1: "+", -1: "-", 0: "0"}


def parse_seq(text: str, ternary: bool = False) -> Seq:
    """Parse a '+'/'-'/'0' string; whitespace anywhere inside is ignored."""
    values = []
    for ch in text:
        if ch.isspace():
            continue
        if ch not in _CHAR_TO_VALUE:
            raise AlphabetError(f"bad sequence character {ch!r}")
        values.append(_CHAR_TO_VALUE[ch])
    return as_ternary(values) if ternary else as_binary(values)


def seq_str(seq: Seq) -> str:
    return "".join(_VALUE_TO_CHAR[v] for v in seq)


@dataclass(frozen=True)
class LagProfile:
    """Non-periodic autocorrelation values at lags 0..len-1.

    Only nonnegative lags are stored; the value at lag -j always equals the
    value at lag j, so the negative side is redundant.
    """

    values: tuple[int, ...]
    source_len: int

    def __getitem__(self, j: int) -> int:
        return self.values[j]

    def __len__(self) -> int:
        return len(self.values)


def npaf_values(seq: Seq) -> tuple[int, ...]:
    """Raw autocorrelation tuple; [0] for the empty sequence."""
    n = len(seq)
    if n == 0:
        return (0,)
    return tuple(
        sum(seq[i] * seq[i + j] for i in range(n - j)) for j in range(n)
    )


def npaf(seq) -> LagProfile:
    """Non-periodic autocorrelation profile of an integer sequence."""
    seq = tuple(int(v) for v in seq)
    return LagProfile(values=npaf_values(seq), source_len=len(seq))


def sequence_sum(seq: Seq) -> int:
    """Sum of the entries; for a binary sequence, #plus minus #minus."""
    return sum(seq)


@dataclass(frozen=True)
class SumsVector:
    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class SeqQuadruple:
    """Quadruple (A;B;C;D): A,B of length m and C,D of length n.

    Construction validates alphabets and paired lengths only; whether the
    quadruple actually belongs to its declared kind is decided separately by
    verify_quadruple.
    """

    a: Seq
    b: Seq
    c: Seq
    d: Seq
    kind: str

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ShapeError(f"unknown kind {self.kind!r}")
        check = as_ternary if self.kind == KIND_T else as_binary
        object.__setattr__(self, "a", check(self.a))
        object.__setattr__(self, "b", check(self.b))
        object.__setattr__(self, "c", check(self.c))
        object.__setattr__(self, "d", check(self.d))
        if len(self.a) != len(self.b):
            raise ShapeError("A and B must have equal length")
        if len(self.c) != len(self.d):
            raise ShapeError("C and D must have equal length")

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def sums(self) -> SumsVector:
        return SumsVector(sum(self.a), sum(self.b), sum(self.c), sum(self.d))

    def seqs(self) -> tuple[Seq, Seq, Seq, Seq]:
        return (self.a, self.b, self.c, self.d)

    def plaintext(self) -> str:
        return ";".join(seq_str(s) for s in self.seqs())


def parse_quad(text: str, kind: str) -> SeqQuadruple:
    """Parse "A;B;C;D" plaintext into a quadruple of the given kind."""
    parts = text.split(";")
    if len(parts) != 4:
        raise ShapeError(f"expected four ';'-separated sequences, got {len(parts)}")
    ternary = kind == KIND_T
    a, b, c, d = (parse_seq(p, ternary=ternary) for p in parts)
    return SeqQuadruple(a, b, c, d, kind)


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.passed


def _fail(msg: str) -> VerificationReport:
    return VerificationReport(passed=False, failure=msg)


_PASS = VerificationReport(passed=True)


def _lag_sum_failure(seqs) -> VerificationReport | None:
    """First positive lag where the four autocorrelations do not cancel."""
    profiles = [npaf_values(s) for s in seqs]
    max_lag = max(len(s) for s in seqs) - 1
    for j in range(1, max_lag + 1):
        total = sum(p[j] for p in profiles if j < len(p))
        if total != 0:
            return _fail(f"lag {j}: autocorrelation sum = {total}, expected 0")
    return None


def verify_quadruple(q: SeqQuadruple) -> VerificationReport:
    """Decide membership of q in its declared kind.

    Raises ShapeError for shapes that make the question meaningless
    (NS/NN need m = n+1, TS needs all four lengths equal); a clean failure
    of the defining equations is reported as a non-passing verdict naming
    the first violated condition.
    """
    if q.kind == KIND_T:
        return _verify_t(q)
    if q.kind in (KIND_NORMAL, KIND_NEAR_NORMAL):
        if q.m != q.n + 1:
            raise ShapeError(
                f"kind {q.kind} needs shape (n+1, n), got ({q.m}, {q.n})"
            )
        for i in range(q.n):
            want = q.a[i] if (q.kind == KIND_NORMAL or i % 2 == 0) else -q.a[i]
            if q.b[i] != want:
                label = "normality" if q.kind == KIND_NORMAL else "near-normality"
                return _fail(f"{label} violated at position {i + 1}")
    bad = _lag_sum_failure(q.seqs())
    if bad is not None:
        return bad
    return _PASS


def _verify_t(q: SeqQuadruple) -> VerificationReport:
    if not (q.m == q.n == len(q.b) == len(q.d)):
        raise ShapeError("T-sequence quadruple needs four sequences of equal length")
    for i in range(q.n):
        nonzero = sum(1 for s in q.seqs() if s[i] != 0)
        if nonzero != 1:
            return _fail(
                f"support at position {i + 1}: {nonzero} nonzero entries, expected 1"
            )
    bad = _lag_sum_failure(q.seqs())
    if bad is not None:
        return bad
    return _PASS


def sum_of_squares_check(m: int, n: int, sums: SumsVector) -> bool:
    """Necessary condition for base-sequence membership: the defining identity
    evaluated at z = 1 forces a^2+b^2+c^2+d^2 = 2(m+n)."""
    a, b, c, d = sums.as_tuple()
    return a * a + b * b + c * c + d * d == 2 * (m + n)


def negate(seq: Seq) -> Seq:
    return tuple(-v for v in seq)


def reverse(seq: Seq) -> Seq:
    return seq[::-1]


def alternate(seq: Seq) -> Seq:
    """Multiply entry i (1-based) by (-1)^i; scales lag-j correlations by (-1)^j."""
    return tuple(-v if i % 2 == 0 else v for i, v in enumerate(seq))
