"""Pointwise verdicts for u C_phi and audits of the implications between them.

Every "almost everywhere" statement becomes "at every atom" because all atoms
carry positive mass.  On tail spaces the universal quantifier over the
infinite tail is decided exactly with :func:`wcop.geopoly.summarize_signs`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .calculus import delta, j_table, completely_alternating
from .errors import InfiniteValue
from .geopoly import AtomFunction, GeoPoly, linear_combination, summarize_signs
from .scalars import DEFAULT_TOL, FLOAT, INF, is_inf, sign, to_field
from .space import (
    WeightedSystem,
    is_injective,
    is_surjective,
    mu_total,
    mu_u_total,
)

YES, NO, BLOCKED = "yes", "no", "blocked"


@dataclass
class DenseVerdict:
    verdict: bool
    witness: Optional[int] = None


@dataclass
class InvarianceVerdict:
    status: str
    c_star: object = None
    witness: Optional[int] = None
    reason: str = ""


@dataclass
class OrderVerdict:
    n: int
    status: str  # "decided" or "blocked"
    isometry: Optional[bool] = None
    expansive: Optional[bool] = None
    margin: object = None  # max of Delta_{J,n} over the evaluated atoms
    worst_atom: Optional[int] = None
    witness: Optional[int] = None  # first atom with Delta > 0
    nonzero_atom: Optional[int] = None  # first atom with Delta != 0
    within_tolerance: bool = False
    window: Optional[int] = None
    reason: str = ""


@dataclass
class AlternatingVerdict:
    depth: tuple
    status: str  # "pass" | "fail" | "blocked"
    certified: bool = False
    failures: list = field(default_factory=list)  # (atom, m, n, value)
    reason: str = ""


@dataclass
class AuditResult:
    name: str
    applies: bool
    holds: Optional[bool] = None
    detail: str = ""

    @property
    def violated(self) -> bool:
        return self.applies and self.holds is False


@dataclass
class ClassificationReport:
    densely_defined: DenseVerdict
    domain_invariant: InvarianceVerdict
    orders: list
    hyperexpansive_up_to: int
    completely_alternating: AlternatingVerdict
    audits: list = field(default_factory=list)
    tolerance: float = 0.0

    def order(self, n: int) -> OrderVerdict:
        return self.orders[n - 1]

    @property
    def findings(self) -> list:
        return [a for a in self.audits if a.violated]


def _tol(system: WeightedSystem, tol: Optional[float]) -> float:
    if system.field != FLOAT:
        return 0.0
    return DEFAULT_TOL if tol is None else tol


def _table(system: WeightedSystem, N: int, jt=None):
    if jt is not None and jt.orders >= N:
        return jt
    return j_table(system, N)


def densely_defined(system: WeightedSystem, jt=None) -> DenseVerdict:
    """The natural domain is dense iff J_1 < inf at every atom."""
    j1 = _table(system, 1, jt).J(1)
    k = j1.first_infinite()
    return DenseVerdict(k is None, k)


def _one_plus(f: AtomFunction, one) -> AtomFunction:
    vals = tuple(INF if is_inf(v) else one + v for v in f.values)
    return AtomFunction(vals, None if f.tail is None else f.tail + GeoPoly.constant(one))


def domain_invariance(system: WeightedSystem, jt=None, max_iter: int = 10_000) -> InvarianceVerdict:
    """Whether J_2 <= c (1 + J_1) for some c, with the least such c."""
    jt = _table(system, 2, jt)
    j1, j2 = jt.J(1), jt.J(2)
    k = j1.first_infinite()
    if k is not None:
        return InvarianceVerdict(BLOCKED, witness=k, reason=f"not densely defined (J_1 = inf at atom {k})")
    k = j2.first_infinite()
    if k is not None:
        return InvarianceVerdict(NO, witness=k, reason=f"J_2 = inf at atom {k}")
    one = to_field(1, system.field)
    den = _one_plus(j1, one)
    if system.finite:
        ratios = [a / b for a, b in zip(j2.values, den.values)]
        k = max(range(len(ratios)), key=lambda i: (ratios[i], -i))
        return InvarianceVerdict(YES, ratios[k], witness=k)

    P = max(len(j1.values), len(j2.values))
    j2, den = j2.extended(P), den.extended(P)
    A, B = j2.tail, den.tail
    a_lead, b_lead = A.lead, B.lead
    if a_lead is not None and a_lead[1] > b_lead[1]:
        return InvarianceVerdict(NO, reason="J_2 / (1 + J_1) is unbounded on the tail")
    limit = 0
    if a_lead is not None and a_lead[1] == b_lead[1]:
        limit = a_lead[0] / b_lead[0]
    ratios = [a / b for a, b in zip(j2.values, den.values)]
    k_best = max(range(P), key=lambda i: (ratios[i], -i)) if P else None
    c = max([limit] + ratios)
    if P and ratios[k_best] != c:
        k_best = None
    for _ in range(max_iter):
        gap = AtomFunction((0,) * P, B.scale(c) - A)
        s = summarize_signs(gap)
        if s.first_negative is None:
            return InvarianceVerdict(YES, c, witness=k_best,
                                     reason="" if k_best is not None else "supremum is the tail limit")
        k_best = s.first_negative
        c = A(k_best) / B(k_best)
    raise RuntimeError("supremum search did not terminate")


def _order_verdict(jt, n: int, tol: float) -> OrderVerdict:
    try:
        d = delta(jt, n)
    except InfiniteValue as exc:
        return OrderVerdict(n, BLOCKED, reason=f"J involved in order {n} is inf at atom {exc.atom}")
    s = summarize_signs(d, tol)
    within = False
    if tol:
        within = any(v != 0 and abs(v) <= tol for v in d.window(s.window))
    return OrderVerdict(
        n, "decided",
        isometry=s.zero,
        expansive=s.nonpositive,
        margin=s.max_value,
        worst_atom=s.max_atom,
        witness=s.first_positive,
        nonzero_atom=None if s.zero else min(k for k in (s.first_positive, s.first_negative) if k is not None),
        within_tolerance=within,
        window=None if d.bounded else s.window,
    )


def _alternating(system: WeightedSystem, jt, depth: tuple, tol: float, orders: list) -> AlternatingVerdict:
    m_max, n_max = depth
    failures = []
    try:
        if system.finite:
            for k in range(system.size):
                res = completely_alternating(jt.sequence(k)[:m_max + n_max + 1], n_max, m_max, tol)
                if not res.passed:
                    failures.append((k, res.witness[0], res.witness[1], res.value))
        else:
            seen = set()
            for n in range(1, n_max + 1):
                for m in range(m_max + 1):
                    d = delta(jt, n, m)
                    s = summarize_signs(d, tol)
                    if s.first_positive is not None and s.first_positive not in seen:
                        seen.add(s.first_positive)
                        failures.append((s.first_positive, m, n, d[s.first_positive]))
            failures.sort()
    except InfiniteValue as exc:
        return AlternatingVerdict(depth, BLOCKED, reason=f"J is inf at atom {exc.atom}")

    certified = False
    if not failures and len(orders) >= 2:
        o1, o2 = orders[0], orders[1]
        # Delta_2 = 0 and Delta_1 <= 0 everywhere make J_i affine and
        # nondecreasing in i at every atom, so every shifted sum is <= 0
        certified = (o1.status == o2.status == "decided" and o1.expansive and o2.isometry
                     and not o2.within_tolerance)
    return AlternatingVerdict(depth, "fail" if failures else "pass", certified, failures)


def expansivity(system: WeightedSystem, K: int = 4, alt_depth: tuple = (4, 4),
                tol: Optional[float] = None, jt=None) -> ClassificationReport:
    """Dense definedness, domain invariance and the order-by-order verdicts.

    ``alt_depth`` is (m_max, n_max) for the bounded completely-alternating
    test.  Audits are not run here; see :func:`classify`.
    """
    tol = _tol(system, tol)
    m_max, n_max = alt_depth
    jt = _table(system, max(K, m_max + n_max, 2), jt)
    dense = densely_defined(system, jt)
    inv = domain_invariance(system, jt)
    if not dense.verdict:
        reason = f"not densely defined (J_1 = inf at atom {dense.witness})"
        orders = [OrderVerdict(n, BLOCKED, reason=reason) for n in range(1, K + 1)]
        alt = AlternatingVerdict(tuple(alt_depth), BLOCKED, reason=reason)
        return ClassificationReport(dense, inv, orders, 0, alt, tolerance=tol)

    orders = [_order_verdict(jt, n, tol) for n in range(1, max(K, 2) + 1)]
    upto = 0
    for o in orders[:K]:
        if o.status != "decided" or not o.expansive:
            break
        upto = o.n
    alt = _alternating(system, jt, tuple(alt_depth), tol, orders)
    return ClassificationReport(dense, inv, orders[:K], upto, alt, tolerance=tol)


def _weights_at_most_one(system: WeightedSystem) -> bool:
    if any(w > 1 for w in system.usq):
        return False
    if system.finite:
        return True
    g = system.tail_usq
    return g.a == 0 or (g.a <= 1 and g.r <= 1)


def _weights_positive(system: WeightedSystem) -> bool:
    return all(w > 0 for w in system.usq) and (system.finite or system.tail_usq.a > 0)


def audit_two_expansive(system: WeightedSystem, report: ClassificationReport,
                        jt=None, tol: Optional[float] = None) -> list:
    """Check the consequences of 2-expansivity on this system.

    Each returned :class:`AuditResult` applies only when the system is
    2-expansive; a result with ``holds=False`` is a theorem violation.
    """
    tol = _tol(system, tol)
    jt = _table(system, 3, jt)
    names = ["two-expansive-invariant-domain", "two-expansive-monotone-ladder",
             "two-expansive-finite-weight-isometry", "two-expansive-unitary"]
    if not report.densely_defined.verdict:
        return [AuditResult(n, False, detail="not densely defined") for n in names]
    o2 = report.order(2) if len(report.orders) >= 2 else _order_verdict(jt, 2, tol)
    if o2.status != "decided" or not o2.expansive:
        return [AuditResult(n, False, detail="not 2-expansive") for n in names]

    out = []
    one = to_field(1, system.field)
    j1, j2 = jt.J(1), jt.J(2)
    # J_2 <= 2 J_1 - 1 is the pointwise form of the order-2 inequality
    slack = linear_combination([(1, j2), (-2, j1), (1, AtomFunction(
        (one,) * len(j1.values), None if j1.bounded else GeoPoly.constant(one)))])
    ineq = summarize_signs(slack, tol).nonpositive
    inv = report.domain_invariant
    out.append(AuditResult(names[0], True, inv.status == YES and ineq,
                           f"domain invariant: {inv.status}; J_2 <= 2 J_1 - 1: {ineq}"))

    bad = None
    for k in range(1, jt.orders + 1):
        step = linear_combination([(1, jt.J(k - 1)), (-1, jt.J(k))])
        s = summarize_signs(step, tol)
        if s.first_positive is not None:
            bad = (k, s.first_positive)
            break
    out.append(AuditResult(names[1], True, bad is None,
                           f"J_k >= J_(k-1) for k <= {jt.orders}" if bad is None
                           else f"J_{bad[0]} < J_{bad[0] - 1} at atom {bad[1]}"))

    mu, mu_u = mu_total(system), mu_u_total(system)
    infinite_case = is_inf(mu) and not is_inf(mu_u)
    bounded_case = not is_inf(mu_u) and _weights_at_most_one(system)
    if infinite_case or bounded_case:
        s = summarize_signs(linear_combination([(1, j1), (-1, AtomFunction(
            (one,) * len(j1.values), None if j1.bounded else GeoPoly.constant(one)))]), tol)
        why = "infinite measure, finite weighted measure" if infinite_case else "finite weighted measure, |u| <= 1"
        out.append(AuditResult(names[2], True, s.zero,
                               f"{why}; J_1 = 1 everywhere: {s.zero}"))
    else:
        out.append(AuditResult(names[2], False, detail="measure hypotheses not met"))

    if _weights_positive(system) and is_injective(system):
        if system.finite:
            from .oracle import unitary_check

            ok = unitary_check(system)
            out.append(AuditResult(names[3], True, ok, f"oracle unitary check: {ok}"))
        else:
            s = summarize_signs(linear_combination([(1, j1), (-1, AtomFunction(
                (one,) * len(j1.values), GeoPoly.constant(one)))]), tol)
            ok = s.zero and is_surjective(system)
            out.append(AuditResult(names[3], True, ok,
                                   f"isometric: {s.zero}; phi onto: {is_surjective(system)}"))
    else:
        out.append(AuditResult(names[3], False, detail="needs |u| > 0 everywhere and phi injective"))
    return out


def classify(system: WeightedSystem, K: int = 4, alt_depth: tuple = (4, 4),
             tol: Optional[float] = None) -> ClassificationReport:
    """Full report: verdicts plus theorem audits."""
    m_max, n_max = alt_depth
    jt = j_table(system, max(K, m_max + n_max, 3))
    report = expansivity(system, K, alt_depth, tol, jt=jt)
    report.audits = audit_two_expansive(system, report, jt=jt, tol=tol)
    return report
