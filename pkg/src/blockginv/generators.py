"""Seeded random instance generation and formula-versus-oracle checking.

Pairs (E, F) are built in an adapted basis: F is conjugated from
diag(C, 0) with C invertible, so its rank and spectral idempotent are known
by construction, and E is conjugated from a block matrix whose zero corner
enforces the wanted one-sided constraint. The bottom-right corner of that
block matrix steers the existence condition, which makes it cheap to draw
instances where the closed form must succeed and instances where it must
refuse.

All randomness flows through ``random.Random`` (the stdlib Mersenne
Twister), seeded explicitly; equal seeds give equal instances on every run
and with any worker count.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .ginverse import NotGroupInvertible, drazin
from .matrices import Matrix, inverse, rank
from .scalars import ZERO, GaussianRational
from .theorems import (
    SHAPE_FOR_THEOREM,
    ConditionReport,
    HypothesisViolated,
    assemble_M,
    block_group_inverse,
    check_conditions,
)

_ATTEMPTS = 64

_RIGHT_FLAVOR = frozenset({"thm2.1", "cor2.2", "thm3.1"})
_LEFT_FLAVOR = frozenset({"thm2.3", "cor2.4", "cor3.2", "cor3.3"})
_COMMUTATION_IDS = frozenset({"cor2.5", "cor3.4"})
_NO_NEGATIVES = frozenset({"cor3.3", "cor3.4"})
_NILPOTENT_NEGATIVES = frozenset({"thm3.1", "cor3.2"})

_EQUIVALENCE_CONDITION = {
    "thm2.1": "E^pi F^pi=0",
    "cor2.2": "E^pi F^pi=0",
    "thm2.3": "F^pi E^pi=0",
    "cor2.4": "F^pi E^pi=0",
    "cor2.5": "F^pi E^pi=0",
    "thm3.1": "EE^pi F^pi=0",
    "cor3.2": "F^pi E^pi E=0",
}


class GenerationExhausted(RuntimeError):
    """No instance with the requested properties could be drawn."""


class Verdict(enum.Enum):
    AGREE_EXISTS = "AgreeExists"
    AGREE_NOT_EXISTS = "AgreeNotExists"
    MISMATCH = "MISMATCH"


@dataclass(frozen=True)
class GenSpec:
    """What to draw: a theorem id, the size n, rank of F, and a target.

    ``satisfy=True`` asks for a pair the closed form must handle;
    ``satisfy=False`` asks for one where every standing hypothesis holds
    but the existence condition fails, so the constructor must refuse.
    """

    theorem: str
    n: int
    rank_f: int
    satisfy: bool = True
    seed: int = 0


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    verdict: Verdict
    formula: Matrix | None
    oracle: Matrix
    oracle_index: int
    mismatch_positions: tuple[tuple[int, int], ...]
    conditions: ConditionReport
    error: str | None


@dataclass(frozen=True)
class Trial:
    spec: GenSpec
    e: Matrix
    f: Matrix
    report: VerificationReport


def _rand_scalar(rng: random.Random) -> GaussianRational:
    real = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    imag = Fraction(0)
    if rng.random() < 0.25:
        imag = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return GaussianRational(real, imag)


def _rand_nonzero_scalar(rng: random.Random) -> GaussianRational:
    while True:
        value = _rand_scalar(rng)
        if value:
            return value


def _rand_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    if rows == 0 or cols == 0:
        return Matrix.zeros(rows, cols)
    return Matrix.from_rows(
        [[_rand_scalar(rng) for _ in range(cols)] for _ in range(rows)]
    )


def _gen_invertible(rng: random.Random, n: int) -> Matrix:
    if n == 0:
        return Matrix.zeros(0, 0)
    for _ in range(1000):
        candidate = _rand_matrix(rng, n, n)
        if rank(candidate) == n:
            return candidate
    raise GenerationExhausted(f"no invertible {n}x{n} draw found")


def _gen_group_invertible(rng: random.Random, n: int, rank_: int) -> Matrix:
    if not 0 <= rank_ <= n:
        raise ValueError(f"rank {rank_} out of range for size {n}")
    p = _gen_invertible(rng, n)
    core = _embed_core(_gen_invertible(rng, rank_), n)
    return p * core * inverse(p)


def _embed_core(core: Matrix, n: int) -> Matrix:
    r = core.rows
    return Matrix.from_blocks([
        [core, Matrix.zeros(r, n - r)],
        [Matrix.zeros(n - r, r), Matrix.zeros(n - r, n - r)],
    ])


def gen_invertible(n: int, seed: int = 0) -> Matrix:
    """A seeded random invertible n x n matrix."""
    return _gen_invertible(random.Random(seed), n)


def gen_group_invertible(n: int, rank_: int, seed: int = 0) -> Matrix:
    """A seeded random n x n matrix of the given rank with Drazin index <= 1."""
    return _gen_group_invertible(random.Random(seed), n, rank_)


def _singular(rng: random.Random, q: int) -> Matrix:
    if q == 1:
        return Matrix.zeros(1, 1)
    return _rand_matrix(rng, q, q - 1) * _rand_matrix(rng, q - 1, q)


def _nilpotent_nonzero(rng: random.Random, q: int) -> Matrix:
    rows = [[ZERO] * q for _ in range(q)]
    for i in range(q):
        for j in range(i + 1, q):
            if rng.random() < 0.5:
                rows[i][j] = _rand_scalar(rng)
    candidate = Matrix.from_rows(rows)
    if candidate.is_zero():
        rows[0][1] = _rand_nonzero_scalar(rng)
        candidate = Matrix.from_rows(rows)
    return candidate


def _diagonal(entries: list[GaussianRational]) -> Matrix:
    n = len(entries)
    return Matrix.from_rows(
        [[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)]
    )


def _conjugate(rng: random.Random, *tilde: Matrix) -> tuple[Matrix, ...]:
    n = tilde[0].rows
    p = _gen_invertible(rng, n)
    p_inv = inverse(p)
    return tuple(p * m * p_inv for m in tilde)


def _draw_flavored(rng: random.Random, spec: GenSpec) -> tuple[Matrix, Matrix]:
    n, r = spec.n, spec.rank_f
    q = n - r
    theorem = spec.theorem
    if theorem == "cor3.3":
        d = _gen_invertible(rng, q)
        if rng.random() < 0.5:
            a = _gen_invertible(rng, r)
            coupling = _rand_matrix(rng, r, q)
        else:
            a = _gen_group_invertible(rng, r, rng.randint(0, r))
            coupling = Matrix.zeros(r, q)
    else:
        a = _rand_matrix(rng, r, r)
        coupling = None
        if theorem in _NILPOTENT_NEGATIVES:
            d = (_gen_group_invertible(rng, q, rng.randint(0, q))
                 if spec.satisfy else _nilpotent_nonzero(rng, q))
        else:
            d = _gen_invertible(rng, q) if spec.satisfy else _singular(rng, q)
    if theorem in _RIGHT_FLAVOR:
        e_tilde = Matrix.from_blocks([
            [a, Matrix.zeros(r, q)],
            [_rand_matrix(rng, q, r), d],
        ])
    else:
        b = coupling if coupling is not None else _rand_matrix(rng, r, q)
        e_tilde = Matrix.from_blocks([[a, b], [Matrix.zeros(q, r), d]])
    f_tilde = _embed_core(_gen_invertible(rng, r), n)
    return _conjugate(rng, e_tilde, f_tilde)


def _draw_cor25(rng: random.Random, spec: GenSpec) -> tuple[Matrix, Matrix]:
    n, r = spec.n, spec.rank_f
    q = n - r
    if not spec.satisfy:
        f_diag = [_rand_nonzero_scalar(rng) for _ in range(r)] + [ZERO] * q
        e_diag = [_rand_scalar(rng) for _ in range(n)]
        e_diag[rng.randrange(r, n)] = ZERO
        return _conjugate(rng, _diagonal(e_diag), _diagonal(f_diag))
    modes = ["diag"]
    if r == n and n >= 2:
        modes.append("entry")
    if 0 < r < n:
        modes.append("align")
    mode = rng.choice(modes)
    if mode == "diag":
        f_diag = [_rand_nonzero_scalar(rng) for _ in range(r)] + [ZERO] * q
        e_diag = ([_rand_scalar(rng) for _ in range(r)]
                  + [_rand_nonzero_scalar(rng) for _ in range(q)])
        return _conjugate(rng, _diagonal(e_diag), _diagonal(f_diag))
    if mode == "entry":
        magnitudes = list(range(1, n + 1))
        rng.shuffle(magnitudes)
        scale = _rand_nonzero_scalar(rng)
        f_diag = [scale * GaussianRational(m * rng.choice((1, -1)))
                  for m in magnitudes]
        i, j = rng.sample(range(n), 2)
        rows = [[ZERO] * n for _ in range(n)]
        rows[i][j] = _rand_nonzero_scalar(rng)
        return _conjugate(rng, Matrix.from_rows(rows), _diagonal(f_diag))
    # EF^2 = FEF without a scalar law: F is a nonzero multiple of a rank-r
    # coordinate projection and E couples the two coordinate blocks.
    scale = _rand_nonzero_scalar(rng)
    f_tilde = scale * _embed_core(Matrix.identity(r), n)
    b = _rand_matrix(rng, r, q)
    if b.is_zero():
        rows = b.to_lists()
        rows[rng.randrange(r)][rng.randrange(q)] = _rand_nonzero_scalar(rng)
        b = Matrix.from_rows(rows)
    e_tilde = Matrix.from_blocks([
        [_rand_matrix(rng, r, r), b],
        [Matrix.zeros(q, r), _gen_invertible(rng, q)],
    ])
    return _conjugate(rng, e_tilde, f_tilde)


def _draw_cor34(rng: random.Random, spec: GenSpec) -> tuple[Matrix, Matrix]:
    n, r = spec.n, spec.rank_f
    q = n - r
    modes = ["diag"]
    if r == n and n >= 2:
        modes.append("swap")
    mode = rng.choice(modes)
    if mode == "diag":
        f_diag = [_rand_nonzero_scalar(rng) for _ in range(r)] + [ZERO] * q
        e_diag = [_rand_scalar(rng) for _ in range(n)]
        return _conjugate(rng, _diagonal(e_diag), _diagonal(f_diag))
    # A pair with EF = -FE: E swaps the first two coordinates, F negates
    # one of them; both stay group invertible.
    c = _rand_nonzero_scalar(rng)
    f_diag = [c, -c] + [_rand_nonzero_scalar(rng) for _ in range(n - 2)]
    rows = [[ZERO] * n for _ in range(n)]
    one = GaussianRational(1)
    rows[0][1] = one
    rows[1][0] = one
    return _conjugate(rng, Matrix.from_rows(rows), _diagonal(f_diag))


def _negative_target(report: ConditionReport, theorem: str) -> bool:
    """Standing hypotheses hold, only the existence condition fails."""
    blocker = _EQUIVALENCE_CONDITION[theorem]
    if report.holds(blocker):
        return False
    for condition in report.conditions:
        if condition.name == blocker:
            continue
        if condition.name in ("EF=lambda FE", "EF^2=FEF"):
            continue
        if not condition.holds:
            return False
    if theorem in _COMMUTATION_IDS:
        return report.holds("EF=lambda FE") or report.holds("EF^2=FEF")
    return True


def _check_feasible(spec: GenSpec) -> None:
    if spec.theorem not in SHAPE_FOR_THEOREM:
        raise ValueError(f"unknown theorem id {spec.theorem!r}")
    if spec.n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= spec.rank_f <= spec.n:
        raise ValueError(f"rank_f {spec.rank_f} out of range for n {spec.n}")
    if spec.satisfy:
        return
    if spec.theorem in _NO_NEGATIVES:
        raise GenerationExhausted(
            f"{spec.theorem}: the inverse exists whenever the hypotheses "
            "hold, so there are no refusal instances"
        )
    if spec.theorem in _NILPOTENT_NEGATIVES:
        if spec.rank_f > spec.n - 2:
            raise GenerationExhausted(
                f"{spec.theorem}: refusal instances need rank_f <= n-2"
            )
    elif spec.rank_f >= spec.n:
        raise GenerationExhausted(
            f"{spec.theorem}: refusal instances need rank_f < n"
        )


def gen_pair(spec: GenSpec) -> tuple[Matrix, Matrix]:
    """Draw a pair (E, F) matching a GenSpec, rechecking every candidate.

    Raises GenerationExhausted when the request is structurally impossible
    (see ``_check_feasible``) or when no draw hits the target within the
    attempt budget.
    """
    _check_feasible(spec)
    rng = random.Random(spec.seed)
    for _ in range(_ATTEMPTS):
        if spec.theorem == "cor2.5":
            e, f = _draw_cor25(rng, spec)
        elif spec.theorem == "cor3.4":
            e, f = _draw_cor34(rng, spec)
        else:
            e, f = _draw_flavored(rng, spec)
        report = check_conditions(e, f, spec.theorem)
        if spec.satisfy:
            if report.satisfied():
                return e, f
        elif _negative_target(report, spec.theorem):
            return e, f
    raise GenerationExhausted(
        f"{spec.theorem}: no draw hit the target in {_ATTEMPTS} attempts "
        f"(n={spec.n}, rank_f={spec.rank_f}, satisfy={spec.satisfy}, "
        f"seed={spec.seed})"
    )


def verify_instance(e: Matrix, f: Matrix, theorem: str) -> VerificationReport:
    """Compare the closed form against the from-scratch Drazin computation.

    AgreeExists: the formula produced a matrix equal to the Drazin inverse
    of the assembled block matrix, whose index is at most 1. AgreeNotExists:
    the formula refused with NotGroupInvertible and the index is at least 2.
    Anything else, including a standing-hypothesis violation, is MISMATCH.
    """
    conditions = check_conditions(e, f, theorem)
    big = assemble_M(e, f, SHAPE_FOR_THEOREM[theorem])
    oracle = drazin(big)
    formula = None
    error = None
    refused = False
    try:
        formula = block_group_inverse(theorem, e, f).assembled
    except NotGroupInvertible as exc:
        error = str(exc)
        refused = True
    except HypothesisViolated as exc:
        error = str(exc)
    if formula is not None and formula == oracle.drazin and oracle.index <= 1:
        verdict = Verdict.AGREE_EXISTS
    elif refused and oracle.index >= 2:
        verdict = Verdict.AGREE_NOT_EXISTS
    else:
        verdict = Verdict.MISMATCH
    positions: tuple[tuple[int, int], ...] = ()
    if formula is not None and formula != oracle.drazin:
        positions = tuple(
            (i, j)
            for i in range(formula.rows)
            for j in range(formula.cols)
            if formula[i, j] != oracle.drazin[i, j]
        )
    return VerificationReport(
        theorem, verdict, formula, oracle.drazin, oracle.index,
        positions, conditions, error,
    )


def _run_trial(spec: GenSpec) -> Trial:
    e, f = gen_pair(spec)
    return Trial(spec, e, f, verify_instance(e, f, spec.theorem))


def _draw_dims(rng: random.Random, theorem: str, max_n: int,
               negative: bool) -> tuple[int, int]:
    if not negative:
        n = rng.randint(1, max_n)
        return n, rng.randint(0, n)
    if theorem in _NILPOTENT_NEGATIVES:
        if max_n < 2:
            raise GenerationExhausted(
                f"{theorem}: refusal instances need n >= 2"
            )
        n = rng.randint(2, max_n)
        return n, rng.randint(0, n - 2)
    n = rng.randint(1, max_n)
    return n, rng.randint(0, n - 1)


def run_campaign(theorem: str, trials: int, max_n: int, seed: int,
                 negative: bool = False, jobs: int = 1) -> list[Trial]:
    """Generate and verify a batch of instances for one theorem id.

    Sizes are drawn from a campaign-level stream seeded with ``seed``; each
    trial i then generates from seed*1000003 + i. Results are identical for
    any ``jobs`` value, which only spreads the work over processes.
    """
    if theorem not in SHAPE_FOR_THEOREM:
        raise ValueError(f"unknown theorem id {theorem!r}")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    if negative and theorem in _NO_NEGATIVES:
        raise GenerationExhausted(
            f"{theorem}: the inverse exists whenever the hypotheses hold, "
            "so there are no refusal instances"
        )
    rng = random.Random(seed)
    specs = []
    for i in range(trials):
        n, rank_f = _draw_dims(rng, theorem, max_n, negative)
        specs.append(GenSpec(theorem, n, rank_f, not negative,
                             seed * 1_000_003 + i))
    if jobs <= 1:
        return [_run_trial(spec) for spec in specs]
    from concurrent.futures import ProcessPoolExecutor

    chunk = max(1, len(specs) // (jobs * 4) or 1)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_trial, specs, chunksize=chunk))
