"""Exhaustive search for normal and near-normal quadruples.

Layout: the long pair (A, B) costs one free sequence, because B is forced on
positions 1..n by the (near-)normality pattern and at position n+1 by the
top-lag cancellation a_1*a_{n+1} + b_1*b_{n+1} = 0.  The short pair (C, D) is
enumerated by a hash join: every candidate short sequence is indexed by its
positive-lag profile, and for each A the complementary profile requirement is
looked up directly.  That turns the 2^(2n) pair space into about 2^n probes.

Case splitting partitions the admissible sums vectors (a, b, c, d) with
a^2+b^2+c^2+d^2 = 2(m+n) into orbits under coordinate sign changes and the
C<->D swap, packed into exactly 12 descriptors so long runs can be resumed
and distributed case by case.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .seqcore import (
    KIND_NEAR_NORMAL,
    KIND_NORMAL,
    QuadseqError,
    SeqQuadruple,
    alternate,
    negate,
    npaf_values,
    parse_quad,
    reverse,
    sum_of_squares_check,
    verify_quadruple,
)

MAX_ORDER_WITHOUT_OVERRIDE = 20
NUM_CASES = 12

PRUNE_SUM = "sum_of_squares"
PRUNE_LAG = "partial_lag"
PRUNE_CASE = "case"


class SearchError(QuadseqError):
    """Invalid search specification."""


class BudgetExhausted(QuadseqError):
    """Node budget ran out; carries a resumable checkpoint."""

    def __init__(self, checkpoint):
        super().__init__("node budget exhausted")
        self.checkpoint = checkpoint


@dataclass(frozen=True)
class SearchSpec:
    kind: str
    order: int
    mode: str = "all"  # all | first | count
    cases: tuple[int, ...] | None = None
    node_limit: int | None = None
    representatives: bool = False
    allow_large: bool = False
    use_sum_prune: bool = True
    use_lag_prune: bool = True


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    prunes: dict[str, int]
    elapsed: float


@dataclass(frozen=True)
class SearchResult:
    solutions: list[SeqQuadruple]
    count: int
    stats: SearchStats


@dataclass(frozen=True)
class CaseDescriptor:
    case_id: int
    sums_reps: tuple[tuple[int, int, int, int], ...]
    note: str


@dataclass
class Checkpoint:
    kind: str
    order: int
    mode: str
    representatives: bool
    cases: tuple[int, ...] | None
    case_pos: int
    a_next: int
    nodes: int
    prunes: dict[str, int]
    found: int
    solutions: list[str]  # plaintext quadruples


def _validate_spec(spec: SearchSpec) -> None:
    if spec.kind not in (KIND_NORMAL, KIND_NEAR_NORMAL):
        raise SearchError(f"searchable kinds are ns and nn, got {spec.kind!r}")
    if spec.order < 0:
        raise SearchError("order must be nonnegative")
    if spec.order > MAX_ORDER_WITHOUT_OVERRIDE and not spec.allow_large:
        raise SearchError(
            f"order {spec.order} above the default bound "
            f"{MAX_ORDER_WITHOUT_OVERRIDE}; set allow_large to proceed"
        )
    if spec.mode not in ("all", "first", "count"):
        raise SearchError(f"unknown report mode {spec.mode!r}")
    if spec.cases is not None:
        bad = [c for c in spec.cases if not 1 <= c <= NUM_CASES]
        if bad:
            raise SearchError(f"case ids must be in 1..{NUM_CASES}, got {bad}")


def _sums_rep(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    """Orbit representative under per-coordinate negation and the C<->D swap."""
    return (abs(a), abs(b), max(abs(c), abs(d)), min(abs(c), abs(d)))


def _admissible_values(length: int) -> list[int]:
    # possible sums of `length` entries from {-1, +1}, nonnegative side
    return list(range(length % 2, length + 1, 2))


def enumerate_cases(kind: str, order: int) -> list[CaseDescriptor]:
    """Exactly 12 pairwise-disjoint case descriptors covering every sums
    vector allowed by the quadratic identity.

    The natural unit is one sums orbit per case; when there are more than 12
    orbits the tail is merged into case 12, and when there are fewer the
    remaining descriptors are empty, with the spill noted on the descriptor.
    """
    if kind not in (KIND_NORMAL, KIND_NEAR_NORMAL):
        raise SearchError(f"searchable kinds are ns and nn, got {kind!r}")
    m, n = order + 1, order
    total = 2 * (m + n)
    reps = set()
    for a in _admissible_values(m):
        for b in _admissible_values(m):
            rest = total - a * a - b * b
            if rest < 0:
                continue
            for c in _admissible_values(n):
                leftover = rest - c * c
                if leftover < 0:
                    continue
                for d in _admissible_values(n):
                    if d * d == leftover:
                        reps.add(_sums_rep(a, b, c, d))
    ordered = sorted(reps)
    cases = []
    if len(ordered) > NUM_CASES:
        spill = len(ordered) - NUM_CASES + 1
        for i in range(NUM_CASES - 1):
            cases.append(CaseDescriptor(i + 1, (ordered[i],), ""))
        cases.append(
            CaseDescriptor(
                NUM_CASES,
                tuple(ordered[NUM_CASES - 1 :]),
                f"merged {spill} residual sums orbits",
            )
        )
    else:
        for i in range(NUM_CASES):
            if i < len(ordered):
                cases.append(CaseDescriptor(i + 1, (ordered[i],), ""))
            else:
                cases.append(CaseDescriptor(i + 1, (), "empty padding"))
    return cases


def _int_to_seq(bits: int, length: int) -> tuple[int, ...]:
    return tuple(-1 if (bits >> i) & 1 else 1 for i in range(length))


def _derive_b(a_seq: tuple[int, ...], kind: str, n: int) -> tuple[int, ...]:
    if kind == KIND_NORMAL:
        body = a_seq[:n]
    else:
        body = tuple(v if i % 2 == 0 else -v for i, v in enumerate(a_seq[:n]))
    return body + (-a_seq[n],)


_TABLE_CACHE: dict[int, dict[tuple, list[tuple[int, ...]]]] = {}


def _profile_table(n: int) -> dict[tuple, list[tuple[int, ...]]]:
    """All length-n sign sequences grouped by positive-lag profile."""
    table = _TABLE_CACHE.get(n)
    if table is None:
        table = {}
        for bits in range(1 << n):
            seq = _int_to_seq(bits, n)
            table.setdefault(npaf_values(seq)[1:], []).append(seq)
        _TABLE_CACHE[n] = table
    return table


def _case_filter(spec: SearchSpec, pass_case: int):
    """(set of sums reps, set of admissible (|a|,|b|)) for one case pass,
    or (None, None) for an unfiltered pass."""
    if pass_case == 0:
        return None, None
    descriptor = enumerate_cases(spec.kind, spec.order)[pass_case - 1]
    reps = set(descriptor.sums_reps)
    ab_pairs = {(r[0], r[1]) for r in reps}
    return reps, ab_pairs


def _scan_block(spec_dict: dict, pass_case: int, a_start: int, a_end: int):
    """Scan a contiguous range of A assignments; returns raw solutions,
    node and prune counters.  Pure function of its arguments, safe as a
    process-pool task."""
    spec = SearchSpec(**spec_dict)
    n = spec.order
    m = n + 1
    table = _profile_table(n)
    reps_filter, ab_filter = _case_filter(spec, pass_case)
    sum_targets = {
        c * c + d * d for c in _admissible_values(n) for d in _admissible_values(n)
    }
    total = 2 * (m + n)
    top_bit = m - 1
    nodes = 0
    prunes = {PRUNE_SUM: 0, PRUNE_LAG: 0, PRUNE_CASE: 0}
    solutions = []
    for ai in range(a_start, a_end):
        if spec.representatives and (ai & 1 or (ai >> top_bit) & 1):
            continue
        a_seq = _int_to_seq(ai, m)
        b_seq = _derive_b(a_seq, spec.kind, n)
        nodes += 1
        a_sum, b_sum = sum(a_seq), sum(b_seq)
        if spec.use_sum_prune and (total - a_sum * a_sum - b_sum * b_sum) not in sum_targets:
            prunes[PRUNE_SUM] += 1
            continue
        if ab_filter is not None and (abs(a_sum), abs(b_sum)) not in ab_filter:
            prunes[PRUNE_CASE] += 1
            continue
        pa, pb = npaf_values(a_seq), npaf_values(b_seq)
        pab = [pa[j] + pb[j] for j in range(1, m)]
        if pab[n - 1] != 0:  # top lag cannot be cancelled by the short pair
            continue
        if spec.use_lag_prune and any(
            abs(pab[j - 1]) > 2 * (n - j) for j in range(1, n)
        ):
            prunes[PRUNE_LAG] += 1
            continue
        target = tuple(-v for v in pab[: n - 1])
        for c_profile, c_seqs in table.items():
            nodes += 1
            want = tuple(target[i] - c_profile[i] for i in range(n - 1))
            d_seqs = table.get(want)
            if not d_seqs:
                continue
            for c_seq in c_seqs:
                for d_seq in d_seqs:
                    if reps_filter is not None and _sums_rep(
                        a_sum, b_sum, sum(c_seq), sum(d_seq)
                    ) not in reps_filter:
                        prunes[PRUNE_CASE] += 1
                        continue
                    solutions.append((a_seq, b_seq, c_seq, d_seq))
    return solutions, nodes, prunes


def _order_zero_solutions(spec: SearchSpec):
    # no positive lags at all: every (A, B) pair of length 1 qualifies
    quads = []
    for a in (1, -1):
        for b in (1, -1):
            if spec.representatives and (a, b) != (1, -1):
                continue
            quads.append(((a,), (b,), (), ()))
    return quads


def _merge_prunes(total: dict, part: dict) -> None:
    for key, value in part.items():
        total[key] = total.get(key, 0) + value


def search(
    spec: SearchSpec,
    *,
    workers: int = 1,
    resume: Checkpoint | None = None,
    checkpoint_path: str | None = None,
    checkpoint_every: int = 250_000,
) -> SearchResult:
    """Run the search described by spec.

    Output is deterministic: solutions are sorted by plaintext, independent
    of worker count and case interleaving.  A node budget overrun raises
    BudgetExhausted carrying (and, when checkpoint_path is given, writing) a
    checkpoint from which the run can be resumed to the identical result.
    first mode always scans sequentially so "first" is well defined.
    """
    _validate_spec(spec)
    started = time.perf_counter()
    passes: list[int] = list(spec.cases) if spec.cases is not None else [0]

    nodes = 0
    prunes = {PRUNE_SUM: 0, PRUNE_LAG: 0, PRUNE_CASE: 0}
    found = 0
    raw_solutions: list[str] = []
    case_start, a_start = 0, 0
    if resume is not None:
        _check_resume(spec, resume)
        case_start, a_start = resume.case_pos, resume.a_next
        nodes = resume.nodes
        _merge_prunes(prunes, resume.prunes)
        found = resume.found
        raw_solutions = list(resume.solutions)

    if spec.order == 0:
        quads = _order_zero_solutions(spec)
        plaintexts = sorted(
            SeqQuadruple(*q, spec.kind).plaintext() for q in quads
        )
        return _finish(spec, plaintexts, len(plaintexts), nodes + len(quads), prunes, started)

    a_limit = 1 << (spec.order + 1)
    keep = spec.mode in ("all", "first")
    spec_dict = {f: getattr(spec, f) for f in SearchSpec.__dataclass_fields__}
    tracker = _ProgressTracker(
        spec, passes, nodes, prunes, found, raw_solutions,
        checkpoint_path, checkpoint_every, started,
    )

    sequential = workers <= 1 or spec.mode == "first"
    for case_pos in range(case_start, len(passes)):
        pass_case = passes[case_pos]
        start = a_start if case_pos == case_start else 0
        if sequential:
            done = _run_pass_sequential(spec_dict, spec, pass_case, case_pos, start, a_limit, keep, tracker)
        else:
            done = _run_pass_parallel(
                spec_dict, spec, pass_case, case_pos, start, a_limit, keep, tracker, workers
            )
        if not done:  # first-hit satisfied
            break
    return _finish(spec, tracker.solutions, tracker.found, tracker.nodes, tracker.prunes, started)


class _ProgressTracker:
    """Accumulates results and enforces budget/checkpoint bookkeeping."""

    def __init__(self, spec, passes, nodes, prunes, found, solutions,
                 checkpoint_path, checkpoint_every, started):
        self.spec = spec
        self.passes = passes
        self.nodes = nodes
        self.prunes = prunes
        self.found = found
        self.solutions = solutions
        self.checkpoint_path = checkpoint_path
        self.checkpoint_every = checkpoint_every
        self.started = started
        self._base_nodes = nodes  # node_limit budgets the current run only
        self._last_checkpoint_nodes = nodes

    def commit(self, case_pos, a_next, sols, block_nodes, block_prunes, keep):
        self.nodes += block_nodes
        _merge_prunes(self.prunes, block_prunes)
        self.found += len(sols)
        if keep:
            kind = self.spec.kind
            self.solutions.extend(
                SeqQuadruple(*quad, kind).plaintext() for quad in sols
            )
        exhausted = (
            self.spec.node_limit is not None
            and self.nodes - self._base_nodes >= self.spec.node_limit
            and not (case_pos == len(self.passes) - 1 and a_next >= self._a_limit())
        )
        if exhausted:
            checkpoint = self._checkpoint(case_pos, a_next)
            if self.checkpoint_path:
                save_checkpoint(checkpoint, self.checkpoint_path)
            raise BudgetExhausted(checkpoint)
        if (
            self.checkpoint_path
            and self.nodes - self._last_checkpoint_nodes >= self.checkpoint_every
        ):
            save_checkpoint(self._checkpoint(case_pos, a_next), self.checkpoint_path)
            self._last_checkpoint_nodes = self.nodes

    def _a_limit(self):
        return 1 << (self.spec.order + 1)

    def _checkpoint(self, case_pos, a_next):
        return Checkpoint(
            kind=self.spec.kind,
            order=self.spec.order,
            mode=self.spec.mode,
            representatives=self.spec.representatives,
            cases=self.spec.cases,
            case_pos=case_pos,
            a_next=a_next,
            nodes=self.nodes,
            prunes=dict(self.prunes),
            found=self.found,
            solutions=list(self.solutions),
        )


def _run_pass_sequential(spec_dict, spec, pass_case, case_pos, a_start, a_limit, keep, tracker):
    step = 1 if spec.node_limit is not None else max(1, min(4096, a_limit))
    ai = a_start
    while ai < a_limit:
        upper = min(ai + step, a_limit)
        sols, block_nodes, block_prunes = _scan_block(spec_dict, pass_case, ai, upper)
        if spec.mode == "first" and sols:
            best = min(sols, key=lambda quad: SeqQuadruple(*quad, spec.kind).plaintext())
            tracker.commit(case_pos, upper, [best], block_nodes, block_prunes, keep)
            return False
        tracker.commit(case_pos, upper, sols, block_nodes, block_prunes, keep)
        ai = upper
    return True


def _run_pass_parallel(spec_dict, spec, pass_case, case_pos, a_start, a_limit, keep, tracker, workers):
    span = a_limit - a_start
    block = max(1024, span // (workers * 8) or 1)
    ranges = [(lo, min(lo + block, a_limit)) for lo in range(a_start, a_limit, block)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_scan_block, spec_dict, pass_case, lo, hi) for lo, hi in ranges
        ]
        for (lo, hi), fut in zip(ranges, futures):
            sols, block_nodes, block_prunes = fut.result()
            tracker.commit(case_pos, hi, sols, block_nodes, block_prunes, keep)
    return True


def _finish(spec, plaintexts, found, nodes, prunes, started):
    ordered = sorted(plaintexts)
    if spec.mode == "first":
        ordered = ordered[:1]
    solutions = [parse_quad(text, spec.kind) for text in ordered] if spec.mode != "count" else []
    stats = SearchStats(nodes=nodes, prunes=dict(prunes), elapsed=time.perf_counter() - started)
    return SearchResult(solutions=solutions, count=found, stats=stats)


def _check_resume(spec: SearchSpec, checkpoint: Checkpoint) -> None:
    if (
        checkpoint.kind != spec.kind
        or checkpoint.order != spec.order
        or checkpoint.mode != spec.mode
        or checkpoint.representatives != spec.representatives
        or checkpoint.cases != spec.cases
    ):
        raise SearchError("checkpoint does not match the requested search")


def save_checkpoint(checkpoint: Checkpoint, path: str) -> None:
    lines = [
        "# quadseq search checkpoint",
        f"kind {checkpoint.kind}",
        f"order {checkpoint.order}",
        f"mode {checkpoint.mode}",
        f"representatives {int(checkpoint.representatives)}",
        "cases " + (",".join(map(str, checkpoint.cases)) if checkpoint.cases else "all"),
        f"case-pos {checkpoint.case_pos}",
        f"nodes {checkpoint.nodes}",
        f"found {checkpoint.found}",
    ]
    for key, value in sorted(checkpoint.prunes.items()):
        lines.append(f"prune {key} {value}")
    lines.append(f"frame a-next {checkpoint.a_next}")
    for text in checkpoint.solutions:
        lines.append(f"sol {text}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_checkpoint(path: str) -> Checkpoint:
    fields = {"prunes": {}, "solutions": []}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(" ")
            if key == "prune":
                name, _, value = rest.partition(" ")
                fields["prunes"][name] = int(value)
            elif key == "sol":
                fields["solutions"].append(rest)
            elif key == "frame":
                name, _, value = rest.partition(" ")
                if name != "a-next":
                    raise SearchError(f"unknown checkpoint frame {name!r}")
                fields["a_next"] = int(value)
            elif key == "cases":
                fields["cases"] = (
                    None if rest == "all" else tuple(int(v) for v in rest.split(","))
                )
            elif key == "case-pos":
                fields["case_pos"] = int(rest)
            elif key in ("order", "nodes", "found"):
                fields[key] = int(rest)
            elif key == "representatives":
                fields[key] = bool(int(rest))
            elif key in ("kind", "mode"):
                fields[key] = rest
            else:
                raise SearchError(f"unknown checkpoint field {key!r}")
    try:
        return Checkpoint(**fields)
    except TypeError as exc:
        raise SearchError(f"incomplete checkpoint: {exc}") from exc


# --- equivalence machinery ---------------------------------------------------

def _op_negate_ab(q: SeqQuadruple) -> SeqQuadruple:
    return replace(q, a=negate(q.a), b=negate(q.b))


def _op_negate_c(q: SeqQuadruple) -> SeqQuadruple:
    return replace(q, c=negate(q.c))


def _op_negate_d(q: SeqQuadruple) -> SeqQuadruple:
    return replace(q, d=negate(q.d))


def _op_swap_cd(q: SeqQuadruple) -> SeqQuadruple:
    return replace(q, c=q.d, d=q.c)


def _op_reverse_c(q: SeqQuadruple) -> SeqQuadruple:
    return replace(q, c=reverse(q.c))


def _op_reverse_d(q: SeqQuadruple) -> SeqQuadruple:
    return replace(q, d=reverse(q.d))


def _op_alternate_all(q: SeqQuadruple) -> SeqQuadruple:
    return replace(q, a=alternate(q.a), b=alternate(q.b), c=alternate(q.c), d=alternate(q.d))


def _op_swap_ab(q: SeqQuadruple) -> SeqQuadruple:
    return replace(q, a=q.b, b=q.a)


def _odd_interior(m: int) -> range:
    # 0-based indices of the 1-based odd positions below the top entry
    return range(0, m - 1, 2)


def _op_reverse_odd_interior(q: SeqQuadruple) -> SeqQuadruple:
    """Reverse the odd-position interior subsequence of the long pair.

    For a near-normal pair the combined autocorrelation splits into the norms
    of the odd-interior part and of the rest, so any norm-preserving move on
    the odd-interior subsequence alone keeps membership.
    """
    idx = list(_odd_interior(q.m))
    a, b = list(q.a), list(q.b)
    for j, i in enumerate(idx):
        src = idx[len(idx) - 1 - j]
        a[i], b[i] = q.a[src], q.b[src]
    return replace(q, a=tuple(a), b=tuple(b))


def _op_negate_odd_interior(q: SeqQuadruple) -> SeqQuadruple:
    a, b = list(q.a), list(q.b)
    for i in _odd_interior(q.m):
        a[i], b[i] = -a[i], -b[i]
    return replace(q, a=tuple(a), b=tuple(b))


EQUIVALENCE_OPS = {
    "NegateAB": _op_negate_ab,
    "NegateC": _op_negate_c,
    "NegateD": _op_negate_d,
    "SwapCD": _op_swap_cd,
    "ReverseC": _op_reverse_c,
    "ReverseD": _op_reverse_d,
    "AlternateAll": _op_alternate_all,
    "SwapAB": _op_swap_ab,
    "ReverseOddInterior": _op_reverse_odd_interior,
    "NegateOddInterior": _op_negate_odd_interior,
}

DEFAULT_GENERATORS = tuple(EQUIVALENCE_OPS)


def nn_orbit(q: SeqQuadruple, generators: tuple[str, ...] = DEFAULT_GENERATORS):
    """Closure of a verified near-normal quadruple under the generator set."""
    report = verify_quadruple(q)
    if not report:
        raise SearchError(f"orbit input fails verification: {report.failure}")
    ops = [EQUIVALENCE_OPS[name] for name in generators]
    seen = {q}
    frontier = [q]
    while frontier:
        cur = frontier.pop()
        for op in ops:
            nxt = op(cur)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def canonicalize(q: SeqQuadruple, generators: tuple[str, ...] = DEFAULT_GENERATORS) -> SeqQuadruple:
    """Lexicographically least plaintext member of the orbit; idempotent and
    constant on orbits by construction."""
    return min(nn_orbit(q, generators), key=SeqQuadruple.plaintext)


def equivalence_classes(
    quads, generators: tuple[str, ...] = DEFAULT_GENERATORS
) -> list[SeqQuadruple]:
    """Distinct canonical forms among `quads`, sorted by plaintext."""
    canonical = set()
    seen = set()
    for q in quads:
        if q in seen:
            continue
        orbit = nn_orbit(q, generators)
        seen.update(orbit)
        canonical.add(min(orbit, key=SeqQuadruple.plaintext))
    return sorted(canonical, key=SeqQuadruple.plaintext)


def oracle_check_solution(q: SeqQuadruple) -> bool:
    """Every emitted solution must satisfy both the verifier and the
    sums-of-squares necessity; used as a belt-and-braces assertion."""
    return bool(verify_quadruple(q)) and sum_of_squares_check(q.m, q.n, q.sums())
