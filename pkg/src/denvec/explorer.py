"""Walk generation, the per-vertex invariant check suite, campaigns, and
bounded BFS distance queries.

Every trial is reproducible: a TrialReport carries the matrix, coefficient
preset, walk, and RNG seed, which is enough to replay any violation
deterministically. Resource-exceeded trials are a separate outcome class,
never counted as violations; exponential blowup is expected on hard inputs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .dvector import (
    dvec_from_expansion,
    dvec_recurrence_step,
    dvec_table,
    neg_basis_dvectors,
)
from .errors import InputError, NotDivisibleError, ResourceExceededError
from .laurent import DEFAULT_TERM_CAP, LaurentPolynomial
from .seed import (
    ExchangeMatrix,
    Seed,
    apply_walk,
    exchange_numerator,
    root_seed,
    seed_key,
    seed_mutate,
    seed_mutate_with_numerator,
    validate_walk,
)
from .tropical import y_mutate

PASS = "pass"
VIOLATION = "violation"
EXCEEDED = "resource-exceeded"
SKIPPED = "skipped"

CHECK_NAMES = (
    "laurent_division",
    "coeff_positivity",
    "route_agreement",
    "neighbor_invariance",
    "positivity",
    "membership",
    "matrix_involution",
)


# -- instance generation --------------------------------------------------


def _random_skew_symmetric(rng: random.Random, rank: int, bound: int) -> ExchangeMatrix:
    rows = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            v = rng.randint(-bound, bound)
            rows[i][j] = v
            rows[j][i] = -v
    return ExchangeMatrix.from_rows(rank, 0, rows)


def _random_skew_symmetrizable(rng: random.Random, rank: int, bound: int) -> ExchangeMatrix:
    # Draw a positive diagonal S (entries <= 3) and a random skew-symmetric
    # A, keep B = S^-1 A when it is integral with entries within the bound;
    # bounded retries, then fall back to plain skew-symmetric.
    for _ in range(64):
        s = [rng.randint(1, 3) for _ in range(rank)]
        rows = [[0] * rank for _ in range(rank)]
        ok = True
        for i in range(rank):
            for j in range(i + 1, rank):
                a = rng.randint(-3 * bound, 3 * bound)
                if a % s[i] or a % s[j]:
                    ok = False
                    break
                bij = a // s[i]
                bji = -a // s[j]
                if abs(bij) > bound or abs(bji) > bound:
                    ok = False
                    break
                rows[i][j] = bij
                rows[j][i] = bji
            if not ok:
                break
        if ok:
            return ExchangeMatrix.from_rows(rank, 0, rows)
    return _random_skew_symmetric(rng, rank, bound)


def gen_matrix(
    rank: int,
    entry_bound: int,
    mode: str = "skew-symmetric",
    rng_seed: int = 0,
) -> ExchangeMatrix:
    """Deterministic random exchange matrix (MT19937 seeded with rng_seed)."""
    if rank < 1:
        raise InputError(f"rank must be at least 1, got {rank}")
    if entry_bound < 1:
        raise InputError(f"entry bound must be at least 1, got {entry_bound}")
    rng = random.Random(rng_seed)
    return _gen_matrix_rng(rng, rank, entry_bound, mode)


def _gen_matrix_rng(
    rng: random.Random, rank: int, entry_bound: int, mode: str
) -> ExchangeMatrix:
    if mode == "skew-symmetric":
        return _random_skew_symmetric(rng, rank, entry_bound)
    if mode in ("skew-symmetrizable", "symmetrizable"):
        return _random_skew_symmetrizable(rng, rank, entry_bound)
    raise InputError(f"unknown generation mode {mode!r}")


def with_principal_rows(matrix: ExchangeMatrix) -> ExchangeMatrix:
    """Append identity coefficient rows (principal coefficients at the root)."""
    if matrix.m:
        raise InputError("matrix already carries coefficient rows")
    n = matrix.n
    rows = list(matrix.rows) + [
        tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
    ]
    return ExchangeMatrix(n, n, tuple(rows))


def random_reduced_walk(n: int, length: int, rng: random.Random) -> tuple[int, ...]:
    if length == 0:
        return ()
    if n == 1:
        if length > 1:
            raise InputError("rank 1 admits no reduced walk longer than 1")
        return (1,)
    walk = [rng.randint(1, n)]
    for _ in range(length - 1):
        r = rng.randint(1, n - 1)
        walk.append(r if r < walk[-1] else r + 1)
    return tuple(walk)


def enumerate_walks(n: int, depth: int, include_shorter: bool = False) -> Iterator[tuple[int, ...]]:
    """All reduced walks of length exactly `depth` (optionally all shorter
    ones too), in ascending lexicographic order. There are n*(n-1)^(depth-1)
    walks of each positive length."""
    if depth < 0:
        raise InputError("depth must be nonnegative")

    def rec(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if include_shorter or len(prefix) == depth:
            yield prefix
        if len(prefix) < depth:
            last = prefix[-1] if prefix else 0
            for k in range(1, n + 1):
                if k != last:
                    yield from rec(prefix + (k,))

    return rec(())


def _suffixes(n: int, last: int, length: int) -> Iterator[tuple[int, ...]]:
    # Reduced continuations of exactly `length` steps after direction `last`.
    if length == 0:
        yield ()
        return
    for k in range(1, n + 1):
        if k != last:
            for rest in _suffixes(n, k, length - 1):
                yield (k,) + rest


# -- trial reports ---------------------------------------------------------


@dataclass
class TrialReport:
    matrix: dict
    preset: str
    walk: tuple[int, ...]
    rng_seed: int | None
    checks: dict[str, str]
    status: str
    witness: dict | None = None
    findings: list = field(default_factory=list)
    detail: str | None = None
    timings: dict | None = None

    def to_json_dict(self) -> dict:
        return {
            "matrix": self.matrix,
            "preset": self.preset,
            "walk": list(self.walk),
            "rng_seed": self.rng_seed,
            "checks": dict(self.checks),
            "status": self.status,
            "witness": self.witness,
            "findings": list(self.findings),
            "detail": self.detail,
            "timings": self.timings,
        }


def reroot_expansion_dvec(
    matrices: Sequence[ExchangeMatrix],
    walk: Sequence[int],
    ref: int,
    home_vertex: int,
    home_pos: int,
    cap: int = DEFAULT_TERM_CAP,
) -> tuple[tuple[int, ...], LaurentPolynomial]:
    """Expansion-route d-vector of x_{home_pos; home_vertex} w.r.t. vertex ref.

    Rebuilds a fresh root at `ref` and replays the walk segment toward the
    variable's home vertex, so the d-vector is read off an actual Laurent
    expansion in the reference cluster. This is the independent confirmation
    used in witnesses and tests; the fast path everywhere else is the
    recurrence table.
    """
    fresh = root_seed(matrices[ref])
    if home_vertex >= ref:
        directions: Sequence[int] = walk[ref:home_vertex]
    else:
        directions = tuple(walk[i] for i in range(ref - 1, home_vertex - 1, -1))
    end = apply_walk(fresh, directions, cap)
    z = end.vars[home_pos]
    return dvec_from_expansion(z, matrices[0].n), z


@dataclass
class _EdgeOutcome:
    """What one mutation edge contributed to a walk's report."""

    advanced: bool
    violations: dict[str, dict] = field(default_factory=dict)  # check -> witness info
    findings: list = field(default_factory=list)
    exceeded: str | None = None


class _WalkChecker:
    """Incremental walk state: extend one edge at a time, backtrack with pop.

    Shared by the single-walk entry point and the exhaustive DFS (which
    reuses common prefixes, so each tree edge is computed exactly once).
    """

    def __init__(self, root: Seed, cap: int, seed_cap: int, preset: str):
        self.root = root
        self.cap = cap
        self.seed_cap = seed_cap
        self.preset = preset
        self.n = root.matrix.n
        self.skew = root.matrix.is_skew_symmetric
        self.seeds = [root]
        self.matrices = [root.matrix]
        self.rec_trace = [neg_basis_dvectors(self.n)]
        self.walk: list[int] = []
        self.registry: dict[LaurentPolynomial, tuple[int, int]] = {
            v: (0, l) for l, v in enumerate(root.vars)
        }
        self.added: list[LaurentPolynomial | None] = []

    def extend(self, k: int) -> _EdgeOutcome:
        outcome = _EdgeOutcome(advanced=False)
        s = self.seeds[-1]
        j = len(self.walk) + 1
        try:
            numerator = exchange_numerator(s, k, self.cap)
            try:
                new_seed = seed_mutate_with_numerator(s, k, numerator, self.cap)
            except NotDivisibleError as exc:
                outcome.violations["laurent_division"] = {
                    "direction": k,
                    "error": str(exc),
                }
                return outcome
            total_terms = sum(len(v) for v in new_seed.vars)
            if total_terms > self.seed_cap:
                raise ResourceExceededError(
                    f"seed holds {total_terms} terms, seed cap is {self.seed_cap}"
                )
        except ResourceExceededError as exc:
            outcome.exceeded = f"vertex {j}, direction {k}: {exc}"
            return outcome

        outcome.advanced = True
        self.walk.append(k)
        self.seeds.append(new_seed)
        self.matrices.append(new_seed.matrix)
        new_var = new_seed.vars[k - 1]

        if new_seed.matrix.mutate(k) != s.matrix:
            outcome.violations["matrix_involution"] = {"direction": k}

        if self.skew and not new_var.coeffs_nonnegative():
            outcome.violations["coeff_positivity"] = {
                "direction": k,
                "expansion": new_var.text(),
            }

        # d-vector routes w.r.t. the root, in lockstep with the walk
        n = self.n
        rec_prev = self.rec_trace[-1]
        rec_now = list(rec_prev)
        rec_now[k - 1] = dvec_recurrence_step(rec_prev, self.matrices[j - 1], k)
        rec_now = tuple(rec_now)
        self.rec_trace.append(rec_now)
        exp_now = tuple(dvec_from_expansion(v, n) for v in new_seed.vars)
        if exp_now != rec_now:
            bad = next(l for l in range(n) if exp_now[l] != rec_now[l])
            outcome.violations["route_agreement"] = {
                "position": bad + 1,
                "dvec_expansion": list(exp_now[bad]),
                "dvec_recurrence": list(rec_now[bad]),
                "expansion": new_seed.vars[bad].text(),
            }

        if new_var not in self.registry:
            self.registry[new_var] = (j, k - 1)
            self.added.append(new_var)
        else:
            self.added.append(None)

        # d-vectors of every tracked variable w.r.t. the two newest clusters
        prefix = tuple(self.walk)
        table_now = dvec_table(self.matrices, prefix, j)
        table_prev = dvec_table(self.matrices, prefix, j - 1)

        for poly, (home_v, home_l) in self.registry.items():
            d_now = table_now[home_v][home_l]
            d_prev = table_prev[home_v][home_l]
            if any(d_now[i] != d_prev[i] for i in range(n) if i != k - 1):
                outcome.violations.setdefault(
                    "neighbor_invariance",
                    {
                        "direction": k,
                        "variable_home": {"vertex": home_v, "position": home_l + 1},
                        "dvec_before": list(d_prev),
                        "dvec_after": list(d_now),
                    },
                )

        current_positions = {poly: l for l, poly in enumerate(new_seed.vars)}
        for poly, (home_v, home_l) in self.registry.items():
            d_now = table_now[home_v][home_l]
            at = current_positions.get(poly)
            if at is not None:
                expected = tuple(-(i == at) for i in range(n))
                if d_now != expected:
                    outcome.violations.setdefault(
                        "membership",
                        {
                            "position": at + 1,
                            "variable_home": {"vertex": home_v, "position": home_l + 1},
                            "dvec_recurrence": list(d_now),
                            "expected": list(expected),
                        },
                    )
            elif any(x < 0 for x in d_now):
                info = {
                    "variable_home": {"vertex": home_v, "position": home_l + 1},
                    "reference_vertex": j,
                    "dvec_recurrence": list(d_now),
                }
                try:
                    d_exp, z_expanded = reroot_expansion_dvec(
                        self.matrices, prefix, j, home_v, home_l, self.cap
                    )
                    info["dvec_expansion"] = list(d_exp)
                    info["expansion"] = z_expanded.text()
                except ResourceExceededError:
                    info["dvec_expansion"] = None
                if self.skew:
                    outcome.violations.setdefault("positivity", info)
                else:
                    outcome.findings.append(
                        {"kind": "negative_dvector", "vertex": j, **info}
                    )
        return outcome

    def pop(self) -> None:
        self.seeds.pop()
        self.matrices.pop()
        self.rec_trace.pop()
        self.walk.pop()
        added = self.added.pop()
        if added is not None:
            del self.registry[added]

    def base_checks(self) -> dict[str, str]:
        checks = {name: PASS for name in CHECK_NAMES}
        if not self.skew:
            checks["coeff_positivity"] = SKIPPED
            checks["positivity"] = SKIPPED
        return checks


def _merge_report(
    checker: _WalkChecker,
    full_walk: tuple[int, ...],
    outcomes: Sequence[_EdgeOutcome],
    *,
    rng_seed: int | None,
    timings: dict | None,
) -> TrialReport:
    checks = checker.base_checks()
    witness: dict | None = None
    findings: list = []
    status = PASS
    detail: str | None = None
    for j, outcome in enumerate(outcomes, 1):
        for check, info in outcome.violations.items():
            checks[check] = VIOLATION
            status = VIOLATION
            if witness is None:
                witness = {
                    "check": check,
                    "vertex": j,
                    "walk_prefix": list(full_walk[:j]),
                    "matrix": checker.root.matrix.to_json_dict(),
                    "preset": checker.preset,
                    **info,
                }
        findings.extend(outcome.findings)
        if outcome.exceeded is not None:
            if status == PASS:
                status = EXCEEDED
            detail = outcome.exceeded
    return TrialReport(
        matrix=checker.root.matrix.to_json_dict(),
        preset=checker.preset,
        walk=full_walk,
        rng_seed=rng_seed,
        checks=checks,
        status=status,
        witness=witness,
        findings=findings,
        detail=detail,
        timings=timings,
    )


def run_check_suite(
    root: Seed,
    walk: Sequence[int],
    *,
    cap: int = DEFAULT_TERM_CAP,
    seed_cap: int | None = None,
    preset: str = "trivial",
    rng_seed: int | None = None,
    with_timings: bool = False,
) -> TrialReport:
    """Walk edge by edge from `root`, running the invariant suite at each vertex.

    Checks per vertex: exactness of the exchange-relation division,
    coefficient positivity of the new expansion (skew-symmetric roots only),
    agreement of the expansion and recurrence d-vector routes w.r.t. the
    root, d-vector stability off the mutated direction across the last edge,
    the membership dichotomy, and d-vector positivity w.r.t. the current
    cluster for every tracked variable outside it. Matrix-level involution
    is verified on every edge. For roots that are only skew-symmetrizable,
    positivity is observational: exceptions land in `findings`, not in the
    pass/fail statistics.
    """
    t0 = time.perf_counter()
    n = root.matrix.n
    path = validate_walk(walk, n)
    if seed_cap is None:
        seed_cap = 5 * cap
    checker = _WalkChecker(root, cap, seed_cap, preset)
    outcomes = []
    for k in path:
        outcome = checker.extend(k)
        outcomes.append(outcome)
        if not outcome.advanced:
            break
    timings = {"total_s": time.perf_counter() - t0} if with_timings else None
    return _merge_report(checker, path, outcomes, rng_seed=rng_seed, timings=timings)


# -- campaigns -------------------------------------------------------------


def summarize(trials: Sequence[TrialReport]) -> dict:
    return {
        "pass": sum(t.status == PASS for t in trials),
        "violations": sum(t.status == VIOLATION for t in trials),
        "resource_exceeded": sum(t.status == EXCEEDED for t in trials),
        "findings": sum(len(t.findings) for t in trials),
    }


def build_report(
    config: dict, trials: Sequence[TrialReport], wall_time: float | None = None
) -> dict:
    return {
        "config": config,
        "trials": [t.to_json_dict() for t in trials],
        "summary": summarize(trials),
        "wall_time": wall_time,
    }


def exhaustive_campaign(
    matrix: ExchangeMatrix,
    depth: int,
    *,
    cap: int = DEFAULT_TERM_CAP,
    seed_cap: int | None = None,
    preset: str = "trivial",
    with_timings: bool = False,
) -> dict:
    """Run the check suite over every reduced walk of length `depth`.

    One trial per maximal walk, exactly as if each walk were run on its
    own; internally the sweep walks the tree depth-first so shared prefixes
    (including prefixes that die at the resource guard) are computed once.
    """
    if depth < 0:
        raise InputError("depth must be nonnegative")
    t0 = time.perf_counter()
    root = root_seed(matrix)
    if seed_cap is None:
        seed_cap = 5 * cap
    checker = _WalkChecker(root, cap, seed_cap, preset)
    n = matrix.n
    trials: list[TrialReport] = []
    outcomes: list[_EdgeOutcome] = []

    def emit(full_walk: tuple[int, ...]) -> None:
        trials.append(
            _merge_report(checker, full_walk, outcomes, rng_seed=None, timings=None)
        )

    def rec(last: int, remaining: int) -> None:
        if remaining == 0:
            emit(tuple(checker.walk))
            return
        for k in range(1, n + 1):
            if k == last:
                continue
            outcome = checker.extend(k)
            outcomes.append(outcome)
            if outcome.advanced:
                rec(k, remaining - 1)
                checker.pop()
            else:
                # Every maximal walk through this dead edge shares its fate.
                stem = tuple(checker.walk) + (k,)
                for suffix in _suffixes(n, k, remaining - 1):
                    emit(stem + suffix)
            outcomes.pop()

    if depth == 0:
        emit(())
    else:
        rec(0, depth)
    config = {
        "kind": "exhaustive",
        "matrix": matrix.to_json_dict(),
        "depth": depth,
        "preset": preset,
        "term_cap": cap,
    }
    wall = time.perf_counter() - t0 if with_timings else None
    return build_report(config, trials, wall)


def fuzz_campaign(
    rank: int,
    entry_bound: int,
    depth: int,
    trials: int,
    master_seed: int,
    *,
    mode: str = "skew-symmetric",
    preset: str = "trivial",
    cap: int = DEFAULT_TERM_CAP,
    with_timings: bool = False,
) -> dict:
    """Fixed-seed randomized campaign over (matrix, walk) pairs.

    Per-trial RNG seeds are drawn once from the master seed, so any single
    trial replays independently of the rest.
    """
    t0 = time.perf_counter()
    master = random.Random(master_seed)
    trial_seeds = [master.getrandbits(63) for _ in range(trials)]
    reports = []
    for ts in trial_seeds:
        rng = random.Random(ts)
        matrix = _gen_matrix_rng(rng, rank, entry_bound, mode)
        walk = random_reduced_walk(matrix.n, depth, rng)
        base = with_principal_rows(matrix) if preset == "principal" else matrix
        reports.append(
            run_check_suite(
                root_seed(base),
                walk,
                cap=cap,
                preset=preset,
                rng_seed=ts,
                with_timings=with_timings,
            )
        )
    config = {
        "kind": "fuzz",
        "rank": rank,
        "entry_bound": entry_bound,
        "depth": depth,
        "trials": trials,
        "seed": master_seed,
        "mode": mode,
        "preset": preset,
        "term_cap": cap,
    }
    wall = time.perf_counter() - t0 if with_timings else None
    return build_report(config, reports, wall)


def report_exit_code(report: dict) -> int:
    """0 all pass, 1 any violation, 3 if every trial was resource-exceeded."""
    s = report["summary"]
    if s["violations"]:
        return 1
    total = len(report["trials"])
    if total and s["resource_exceeded"] == total:
        return 3
    return 0


# -- standalone property campaigns ----------------------------------------


def involution_trials(
    count: int,
    master_seed: int,
    *,
    cap: int = DEFAULT_TERM_CAP,
) -> list[dict]:
    """Random seeds and directions; mutate twice and demand exact identity
    of matrix, coefficients, and all expansions. Returns failures."""
    master = random.Random(master_seed)
    failures = []
    for idx in range(count):
        rng = random.Random(master.getrandbits(63))
        rank = rng.randint(2, 4)
        bound = rng.randint(1, 2)
        mode = rng.choice(["skew-symmetric", "skew-symmetrizable"])
        matrix = _gen_matrix_rng(rng, rank, bound, mode)
        if rng.random() < 0.5:
            matrix = with_principal_rows(matrix)
        walk = random_reduced_walk(rank, rng.randint(0, 3), rng)
        k = rng.randint(1, rank)
        try:
            s = apply_walk(root_seed(matrix), walk, cap)
            once = seed_mutate(s, k, cap)
            twice = seed_mutate(once, k, cap)
        except ResourceExceededError:
            continue
        if twice != s:
            failures.append(
                {"trial": idx, "matrix": matrix.to_json_dict(), "walk": list(walk), "k": k}
            )
    return failures


def tropical_crosscheck_trials(count: int, master_seed: int) -> list[dict]:
    """Coefficient mutation two ways: the tropical rule on y-vectors versus
    mutation of the coefficient rows of the extended matrix. Returns failures."""
    master = random.Random(master_seed)
    failures = []
    for idx in range(count):
        rng = random.Random(master.getrandbits(63))
        rank = rng.randint(2, 4)
        bound = rng.randint(1, 3)
        mode = rng.choice(["skew-symmetric", "skew-symmetrizable"])
        top = _gen_matrix_rng(rng, rank, bound, mode)
        m = rng.randint(1, 3)
        rows = list(top.rows) + [
            tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(m)
        ]
        extended = ExchangeMatrix(rank, m, tuple(rows))
        k = rng.randint(1, rank)
        via_rows = extended.mutate(k).y_elements()
        via_rule = y_mutate(extended.y_elements(), extended.top(), k)
        if via_rows != via_rule:
            failures.append(
                {
                    "trial": idx,
                    "matrix": extended.to_json_dict(),
                    "k": k,
                    "via_rows": [list(t.exps) for t in via_rows],
                    "via_rule": [list(t.exps) for t in via_rule],
                }
            )
    return failures


# -- bounded distance ------------------------------------------------------


def bfs_distance(
    root: Seed,
    z: LaurentPolynomial,
    t_walk: Sequence[int] = (),
    bound: int = 0,
    *,
    cap: int = DEFAULT_TERM_CAP,
) -> int | None:
    """Least number of mutations from the vertex reached by `t_walk` to a
    cluster containing `z` (expansion equality w.r.t. the shared root), or
    None when not found within `bound`.

    Seeds equal up to position relabeling are explored once. If the cap
    truncated exploration at a level that could still hide a closer
    occurrence, the query is inconclusive and raises ResourceExceededError.
    """
    if bound < 0:
        raise InputError("bound must be nonnegative")
    start = apply_walk(root, t_walk, cap)
    n = root.matrix.n
    if any(v == z for v in start.vars):
        return 0
    seen = {seed_key(start)}
    frontier: list[tuple[Seed, int]] = [(start, 0)]
    first_truncation: int | None = None
    for depth in range(1, bound + 1):
        next_frontier: list[tuple[Seed, int]] = []
        found = False
        for s, came in frontier:
            for k in range(1, n + 1):
                if k == came:
                    continue
                try:
                    child = seed_mutate(s, k, cap)
                except ResourceExceededError:
                    if first_truncation is None:
                        first_truncation = depth
                    continue
                key = seed_key(child)
                if key in seen:
                    continue
                seen.add(key)
                if any(v == z for v in child.vars):
                    found = True
                next_frontier.append((child, k))
        if found:
            if first_truncation is not None and first_truncation < depth:
                raise ResourceExceededError(
                    "distance inconclusive: term cap truncated a shallower level"
                )
            return depth
        frontier = next_frontier
        if not frontier:
            break
    if first_truncation is not None:
        raise ResourceExceededError(
            "distance inconclusive: term cap truncated the search"
        )
    return None
