"""
Rational cohomology and loop-space homology rings for gauge groups and spaces of
connections over a simply connected four-manifold.

Rational homotopy of a compact simple simply connected G sits in degrees 2m + 1, one
class per exponent m. All counts below are linear in b2 and in rk pi_j(G); the loop
rings are exterior because the homotopy Lie algebras of these formal spaces with free
cohomology are abelian.
"""

import logging
from collections import Counter

from rational_fourfolds.errors import ConsistencyError, DomainError, NotSimplyConnectedError
from rational_fourfolds.schema import (
    BundleContext,
    ConnectivityReport,
    ConsistencyReport,
    DegreeComparison,
    RingPresentation,
    SimpleGroup,
    Space,
)
from rational_fourfolds.series import GradedDims, TruncatedSeries, pbw_hilbert

logger = logging.getLogger(__name__)

_EXCEPTIONAL_EXPONENTS = {
    "G2": (1, 5),
    "F4": (1, 5, 7, 11),
    "E6": (1, 4, 5, 7, 8, 11),
    "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29),
}

COHOMOLOGY_SPACES = (Space.GAUGE_GROUP, Space.BTILDE, Space.BSTAR)
LOOP_SPACES = (Space.LOOP_BTILDE, Space.LOOP_BSTAR)


def exponents(group: SimpleGroup) -> tuple[int, ...]:
    """Exponents with multiplicity (Spin(4k) repeats 2k - 1)."""
    n = group.parameter
    match group.family:
        case "SU":
            return tuple(range(1, n))
        case "Sp":
            return tuple(range(1, 2 * n, 2))
        case "Spin" if n % 2:
            return tuple(range(1, n - 1, 2))
        case "Spin":
            half = n // 2
            return tuple(sorted((*range(1, 2 * half - 2, 2), half - 1)))
        case family:
            return _EXCEPTIONAL_EXPONENTS[family]


def group_rank(group: SimpleGroup) -> int:
    return len(exponents(group))


def pi_rank(group: SimpleGroup, j: int) -> int:
    """rk pi_j(G) (x) Q: the multiplicity of (j - 1)/2 among the exponents."""
    if j <= 2 or j % 2 == 0:
        return 0
    return Counter(exponents(group))[(j - 1) // 2]


def exhaustive_degree(group: SimpleGroup) -> int:
    """A degree bound past which no presentation has generators."""
    return 2 * max(exponents(group)) + 5


def _self_check():
    su3 = SimpleGroup(family="SU", parameter=3)
    su2 = SimpleGroup(family="SU", parameter=2)
    observed = {
        "SU(3) pi_3": pi_rank(su3, 3),
        "SU(3) pi_5": pi_rank(su3, 5),
        "SU(3) pi_7": pi_rank(su3, 7),
        "SU(2) pi_3": pi_rank(su2, 3),
        "SU(2) pi_4": pi_rank(su2, 4),
    }
    expected = {"SU(3) pi_3": 1, "SU(3) pi_5": 1, "SU(3) pi_7": 0, "SU(2) pi_3": 1, "SU(2) pi_4": 0}
    if observed != expected:
        raise ConsistencyError("exponent table self-check", expected, observed)


_self_check()


def _cohomology_count(ctx: BundleContext, space: Space, j: int) -> int:
    g, b2 = ctx.group, ctx.b2
    match space:
        case Space.GAUGE_GROUP:
            return b2 * pi_rank(g, j + 2) + pi_rank(g, j) + pi_rank(g, j + 4)
        case Space.BTILDE:
            return b2 * pi_rank(g, j + 1) + pi_rank(g, j + 3)
        case Space.BSTAR:
            return b2 * pi_rank(g, j + 1) + pi_rank(g, j - 3) + pi_rank(g, j + 3)
    raise DomainError(f"{space} is not a cohomology space")


def _loop_count(ctx: BundleContext, space: Space, j: int) -> int:
    g, b2 = ctx.group, ctx.b2
    match space:
        case Space.LOOP_BTILDE:
            return b2 * pi_rank(g, j + 2) + pi_rank(g, j + 4)
        case Space.LOOP_BSTAR:
            return b2 * pi_rank(g, j + 2) + pi_rank(g, j) + pi_rank(g, j + 4)
    raise DomainError(f"{space} is not a loop space")


def cohomology_presentation(
    ctx: BundleContext, space: Space, max_degree: int | None = None
) -> RingPresentation:
    """H^*(G^e) exterior; H^*(B~), H^*(B*) polynomial; generator counts per degree."""
    space = Space(space)
    if space not in COHOMOLOGY_SPACES:
        raise DomainError(f"{space} has no cohomology presentation here")
    max_degree = exhaustive_degree(ctx.group) if max_degree is None else max_degree
    counts = {j: _cohomology_count(ctx, space, j) for j in range(1, max_degree + 1)}
    kind = "exterior" if space is Space.GAUGE_GROUP else "polynomial"
    return RingPresentation(
        kind=kind, generators={j: c for j, c in counts.items() if c}, label=space.label
    )


def simply_connected_status(ctx: BundleContext) -> ConnectivityReport:
    """Connectivity of the gauge group and pi_1 of B~ and B*, where it is known."""
    g = ctx.group
    if (g.family == "SU" and g.parameter >= 3) or (g.family == "Spin" and g.parameter >= 6):
        return ConnectivityReport(
            gauge_group_connected="yes",
            pi1_btilde="0",
            pi1_bstar="0",
            notes=[f"pi_2({g.label()}) = pi_4({g.label()}) = 0, so the gauge group is connected"],
        )
    if is_su2(g):
        return _su2_status(ctx)
    return ConnectivityReport(
        gauge_group_connected="unknown",
        pi1_btilde="unknown",
        pi1_bstar="unknown",
        notes=[f"no connectivity criterion is available for {g.label()}"],
    )


def is_su2(group: SimpleGroup) -> bool:
    return (group.family, group.parameter) in (("SU", 2), ("Sp", 1))


def _su2_status(ctx: BundleContext) -> ConnectivityReport:
    if ctx.form_parity == "odd":
        return ConnectivityReport(
            gauge_group_connected="yes",
            pi1_btilde="0",
            pi1_bstar="0",
            notes=["odd form: pi_0 of the gauge group vanishes"],
        )
    if ctx.form_parity == "unspecified":
        return ConnectivityReport(
            gauge_group_connected="unknown",
            pi1_btilde="unknown",
            pi1_bstar="unknown",
            notes=["SU(2): pi_1 depends on the parity of the intersection form (--form)"],
        )
    notes = ["even form: pi_0 of the gauge group is Z2, so pi_1(B~) = Z2"]
    match ctx.c2_parity:
        case "odd":
            pi1_bstar = "0"
            notes.append("c2 odd: the centre maps onto pi_0, so B* is simply connected")
        case "even":
            pi1_bstar = "Z2"
            notes.append("c2 even: the centre maps trivially, so pi_1(B*) = Z2")
        case _:
            pi1_bstar = "unknown"
            notes.append("SU(2), even form: pi_1(B*) depends on the parity of c2(P) (--c2)")
    return ConnectivityReport(
        gauge_group_connected="no", pi1_btilde="Z2", pi1_bstar=pi1_bstar, notes=notes
    )


def connectivity_criterion(group: SimpleGroup) -> dict[str, str]:
    """pi_2(G) = 0 always; pi_4(G) from Bott periodicity where known."""
    if (group.family == "SU" and group.parameter >= 3) or (
        group.family == "Spin" and group.parameter >= 6
    ):
        pi4 = "yes"
    elif is_su2(group):
        pi4 = "no"
    else:
        pi4 = "unknown"
    return {"pi2_zero": "yes", "pi4_zero": pi4}


def loop_presentation(
    ctx: BundleContext,
    space: Space,
    max_degree: int | None = None,
    *,
    assume_simply_connected: bool = False,
) -> RingPresentation:
    """H_*(Omega B~) and H_*(Omega B*) as exterior algebras (Milnor-Moore)."""
    space = Space(space)
    if space not in LOOP_SPACES:
        raise DomainError(f"{space} is not a loop space")
    status = simply_connected_status(ctx)
    pi1 = status.pi1_btilde if space is Space.LOOP_BTILDE else status.pi1_bstar
    base = "B~" if space is Space.LOOP_BTILDE else "B*"
    if pi1 == "Z2" and not assume_simply_connected:
        raise NotSimplyConnectedError(base, f"pi_1({base}) = Z2; " + "; ".join(status.notes))
    if pi1 == "unknown":
        logger.warning(
            "pi_1(%s) is unknown for %s; assuming simply connected", base, ctx.group.label()
        )
    max_degree = exhaustive_degree(ctx.group) if max_degree is None else max_degree
    counts = {j: _loop_count(ctx, space, j) for j in range(1, max_degree + 1)}
    return RingPresentation(
        kind="exterior", generators={j: c for j, c in counts.items() if c}, label=space.label
    )


def expected_total(group: SimpleGroup, b2: int, space: Space) -> int:
    rank = group_rank(group)
    if Space(space) in (Space.GAUGE_GROUP, Space.BSTAR, Space.LOOP_BSTAR):
        return (b2 + 2) * rank - 1
    return (b2 + 1) * rank - 1


def consistency_report(ctx: BundleContext, max_degree: int) -> ConsistencyReport:
    """Degree-j loop counts against degree-(j+1) cohomology counts, for B~ and B*."""
    comparisons: dict[str, list[DegreeComparison]] = {}
    mismatches: dict[str, list[int]] = {}
    pairs = ((Space.LOOP_BTILDE, Space.BTILDE), (Space.LOOP_BSTAR, Space.BSTAR))
    for loop_space, space in pairs:
        rows = []
        for j in range(1, max_degree + 1):
            loop_count = _loop_count(ctx, loop_space, j)
            shifted = _cohomology_count(ctx, space, j + 1)
            rows.append(
                DegreeComparison(
                    loop_degree=j,
                    loop_count=loop_count,
                    shifted_count=shifted,
                    agree=loop_count == shifted,
                )
            )
        comparisons[space.value] = rows
        mismatches[space.value] = [r.loop_degree for r in rows if not r.agree]
        if mismatches[space.value]:
            logger.warning(
                "%s: loop counts differ from shifted cohomology counts at degrees %s",
                space.label,
                mismatches[space.value],
            )
    return ConsistencyReport(
        context=ctx, max_degree=max_degree, comparisons=comparisons, mismatches=mismatches
    )


def presentation_hilbert(presentation: RingPresentation, order: int) -> TruncatedSeries:
    """Hilbert series of the free graded-commutative algebra on the presentation."""
    counts = {d: c for d, c in presentation.generators.items() if d <= order}
    return pbw_hilbert(GradedDims.from_counts(counts, order), order)
