"""
Rational homotopy ranks of simply connected four-manifolds.

M is rationally the adjunction space (wedge of b2 two-spheres) with one 4-cell, so its
Lie model is L(v_1..v_b2, w) with |v_i| = 1, |w| = 3, dv_i = 0 and dw = z, the
attaching cycle. rk pi_{n+1}(M) = dim H_n of that model. Two closed routes serve
b2 >= 2: the Mobius-sum formula and the low-degree polynomials.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from fractions import Fraction
from functools import lru_cache

from sympy import binomial, divisors
from tqdm import tqdm

from rational_fourfolds import config
from rational_fourfolds.errors import BudgetExceededError, ConsistencyError, DomainError
from rational_fourfolds.freelie import (
    Generator,
    LieElement,
    LieModel,
    bracket,
    check_budget,
    homology_dim,
)
from rational_fourfolds.schema import CohomologyRing, IntersectionForm, MethodComparison, RankTable
from rational_fourfolds.series import (
    GradedDims,
    TruncatedSeries,
    mobius,
    pbw_hilbert,
    power_sums,
    witt_decompose,
)

logger = logging.getLogger(__name__)

BABENKO_CONVENTION_NOTE = (
    "suspension ranks use S_d = power sums of the inverse roots of 2 - P and the Mobius "
    "index j/d; this convention is pinned by the Witt count of the reduced homology"
)
CLOSED_GATE_NOTE = "closed formulas are stated for b2 >= 2; b2 <= 1 is served by the Lie model"


def attaching_cycle(form: IntersectionForm) -> LieElement:
    """z = sum_{i<=b+} [v_i, v_i] - sum_{j>b+} [v_j, v_j] in degree 2."""
    z = LieElement.zero(2)
    for i in range(form.b2):
        v = LieElement.word((i,), 1)
        sign = 1 if i < form.b2_plus else -1
        z = z + sign * bracket(v, v)
    return z


@lru_cache(maxsize=32)
def fourfold_model(form: IntersectionForm) -> LieModel:
    b2 = form.b2
    generators = tuple(Generator(i, 1, f"v{i + 1}") for i in range(b2)) + (
        Generator(b2, 3, "w"),
    )
    z = attaching_cycle(form)
    differential = {} if z.is_zero() else {b2: z}
    return LieModel(generators, differential)


def ranks_lie(
    form: IntersectionForm,
    max_k: int,
    *,
    max_degree: int | None = None,
    max_words: int | None = None,
    max_basis: int | None = None,
) -> RankTable:
    """rk pi_k for 2 <= k <= max_k as dim H_{k-1} of the Lie model.

    H_{max_k - 1} needs the basis in degree max_k, so every budget is checked there
    before any degree is computed.
    """
    if max_k < 2:
        raise DomainError(f"rank tables start at pi_2, got max_k={max_k}")
    max_degree = config.MAX_HOMOLOGY_DEGREE if max_degree is None else max_degree
    if max_k - 1 > max_degree:
        raise BudgetExceededError(
            f"Lie-model homology for b2={form.b2} is capped", max_k - 1, max_k - 1, max_degree
        )
    model = fourfold_model(form)
    budget = {"max_words": max_words, "max_basis": max_basis}
    check_budget(model, max_k, **budget)
    ranks = {}
    for k in tqdm(range(2, max_k + 1), desc=f"H_* {form.label()}", disable=not config.PROGRESS):
        ranks[k] = homology_dim(model, k - 1, **budget)
    if ranks[2] != form.b2:
        raise ConsistencyError("rk pi_2 must equal b2", form.b2, ranks[2])
    logger.info("Lie-model ranks for %s up to pi_%d: %s", form.label(), max_k, ranks)
    return RankTable(ranks=ranks, max_degree=max_k, method="lie-model")


def _require_closed_domain(b2: int):
    if b2 < 2:
        raise DomainError(f"{CLOSED_GATE_NOTE} (got b2={b2}); use ranks_lie")


def ranks_closed(b2: int, n: int) -> int:
    """rk pi_{n+1}(M) from the Mobius-sum formula in b2 alone."""
    _require_closed_domain(b2)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    total = Fraction(0)
    for d in divisors(n):
        m = n // d
        inner = Fraction(0)
        for b in range(m // 2 + 1):
            a = m - 2 * b
            inner += (-1) ** b * int(binomial(a + b, b)) * Fraction(b2**a, a + b)
        total += (-1) ** (n + m) * Fraction(mobius(d), d) * inner
    if total.denominator != 1 or total < 0:
        raise ConsistencyError(
            f"closed rank formula at b2={b2}, n={n}", "non-negative integer", total
        )
    return int(total)


def ranks_low_degree(b2: int) -> tuple[int, int, int]:
    """(rk pi_2, rk pi_3, rk pi_4) = (b2, b2(b2+1)/2 - 1, b2(b2^2-4)/3)."""
    _require_closed_domain(b2)
    return b2, b2 * (b2 + 1) // 2 - 1, b2 * (b2 * b2 - 4) // 3


def rank_table_closed(b2: int, max_k: int) -> RankTable:
    if max_k < 2:
        raise DomainError(f"rank tables start at pi_2, got max_k={max_k}")
    ranks = {k: ranks_closed(b2, k - 1) for k in range(2, max_k + 1)}
    return RankTable(ranks=ranks, max_degree=max_k, method="closed")


def rank_table_low_degree(b2: int) -> RankTable:
    ranks = dict(zip((2, 3, 4), ranks_low_degree(b2), strict=True))
    return RankTable(ranks=ranks, max_degree=4, method="low-degree")


def _low_degree_upto(b2: int, max_k: int) -> RankTable:
    table = rank_table_low_degree(b2)
    ranks = {k: r for k, r in table.ranks.items() if k <= max_k}
    return RankTable(ranks=ranks, max_degree=min(4, max_k), method="low-degree")


def reduced_homology_dims(poincare: TruncatedSeries, order: int) -> GradedDims:
    counts = {k: int(poincare[k]) for k in range(1, poincare.order + 1) if poincare[k]}
    return GradedDims.from_counts(counts, order)


def ranks_suspension_babenko(poincare: TruncatedSeries, max_j: int) -> dict[int, int]:
    """rk pi_{j+1}(Sigma X) = ((-1)^j / j) sum_{d|j} (-1)^d mu(j/d) S_d(2 - P)."""
    if poincare[0] != 1:
        raise DomainError(f"Poincare polynomial needs P(0) = 1, got {poincare[0]}")
    if any(c < 0 or c.denominator != 1 for c in poincare.coefficients):
        raise DomainError("Poincare polynomial needs non-negative integer coefficients")
    if max_j < 1:
        raise DomainError(f"max_j must be >= 1, got {max_j}")
    q = 2 - poincare
    sums = power_sums(q, max_j)
    ranks = {}
    for j in range(1, max_j + 1):
        total = sum(
            (Fraction((-1) ** d * mobius(j // d)) * sums[d - 1] for d in divisors(j)), Fraction(0)
        )
        value = Fraction((-1) ** j, j) * total
        if value.denominator != 1 or value < 0:
            raise ConsistencyError(f"suspension rank at j={j}", "non-negative integer", value)
        ranks[j] = int(value)

    witt = witt_decompose(reduced_homology_dims(poincare, max_j), max_j)
    for j, value in ranks.items():
        if witt.dim(j) != value:
            raise ConsistencyError(f"suspension rank at j={j} vs Witt count", witt.dim(j), value)
    logger.info(BABENKO_CONVENTION_NOTE)
    return ranks


def loop_hilbert(form: IntersectionForm, order: int, **budget) -> TruncatedSeries:
    """Hilbert series of H_*(Omega M; Q) = U(pi_*(Omega M) (x) Q)."""
    if order < 1:
        raise DomainError(f"order must be >= 1, got {order}")
    table = ranks_lie(form, order + 1, **budget)
    dims = GradedDims.from_counts({k - 1: r for k, r in table.ranks.items()}, order)
    return pbw_hilbert(dims, order)


def poincare_polynomial(form: IntersectionForm) -> TruncatedSeries:
    return TruncatedSeries((1, 0, form.b2, 0, 1), 4)


def cohomology_ring(form: IntersectionForm) -> CohomologyRing:
    """x_1^2 = .. = x_{b+}^2 = -x_{b+ + 1}^2 = .. = -x_{b2}^2 and x_i x_j = 0 for i != j."""
    _require_closed_domain(form.b2)
    names = [f"x{i + 1}" for i in range(form.b2)]
    squares = [f"{x}^2" if i < form.b2_plus else f"-{x}^2" for i, x in enumerate(names)]
    relations = [f"{squares[0]} = {s}" for s in squares[1:]]
    relations += [f"{a}*{b} = 0" for i, a in enumerate(names) for b in names[i + 1 :]]
    return CohomologyRing(form=form, generators=names, relations=relations)


def ranks_suspension_of_manifold(form: IntersectionForm, max_j: int) -> dict[int, int]:
    """Rational ranks of pi_{j+1}(Sigma M)."""
    return ranks_suspension_babenko(poincare_polynomial(form), max_j)


def compare_methods(form: IntersectionForm, max_k: int, **budget) -> MethodComparison:
    """Run the Lie-model, closed and low-degree routes side by side."""
    comparison = MethodComparison(form=form)
    jobs = {"lie-model": lambda: ranks_lie(form, max_k, **budget)}
    if form.b2 >= 2:
        jobs["closed"] = lambda: rank_table_closed(form.b2, max_k)
        jobs["low-degree"] = lambda: _low_degree_upto(form.b2, max_k)
    else:
        comparison.notes.append(CLOSED_GATE_NOTE)

    with ThreadPoolExecutor(max_workers=config.WORKERS) as executor:
        futures = {executor.submit(job): name for name, job in jobs.items()}
        for future in as_completed(futures):
            comparison.tables[futures[future]] = future.result()

    comparison.tables = {name: comparison.tables[name] for name in jobs}
    reference = comparison.tables["lie-model"].ranks
    for table in comparison.tables.values():
        for k, rank in table.ranks.items():
            if k in reference and reference[k] != rank and k not in comparison.disagreements:
                comparison.disagreements.append(k)
    comparison.disagreements.sort()
    comparison.agree = not comparison.disagreements
    if not comparison.agree:
        logger.warning(
            "rank routes disagree for %s at k=%s", form.label(), comparison.disagreements
        )
    return comparison


def signature_splits(b2: int) -> list[IntersectionForm]:
    return [IntersectionForm(b2_plus=p, b2_minus=b2 - p) for p in range(b2, -1, -1)]


def signature_independence(b2: int, max_k: int, **budget) -> tuple[dict[str, RankTable], bool]:
    """Lie-model tables for every split of b2; the flag says whether they coincide."""
    tables = {form.label(): ranks_lie(form, max_k, **budget) for form in signature_splits(b2)}
    first = next(iter(tables.values())).ranks
    return tables, all(t.ranks == first for t in tables.values())
