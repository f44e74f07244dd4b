"""Bound formulas and instance-level checks of the spectral inequalities.

Every check returns a :class:`CheckReport`.  A check whose hypotheses do not
hold reports ``"vacuous"`` and never ``"fail"``.  Rational quantities (Cheeger
constants, bound gaps) are computed with :class:`~fractions.Fraction` and only
converted to float when compared against an eigenvalue; strict inequalities
against float eigenvalues are given a ``MARGIN`` of slack.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .cheeger import CutWitness, edge_ratio, vertex_ratio
from .graphs import CountGraph, is_bipartite_bfs, is_connected_bfs, sum_relation_counts
from .groups import ElementSet, FiniteGroup
from .spectra import Spectrum, is_connected_spectral

MARGIN = 1e-8
PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"

SHARP_ROWS = ((477, 3), (330, 4), (257, 5), (214, 6), (187, 7), (167, 8), (153, 9), (142, 10))


@dataclass(frozen=True)
class SharpTable:
    """Pairs ``(kappa, d0)``: for degree ``d >= d0`` the gap ``h^4 / (kappa d^8)`` applies."""

    rows: tuple[tuple[int, int], ...] = SHARP_ROWS

    def __post_init__(self):
        kappas = [k for k, _ in self.rows]
        if any(a <= b for a, b in zip(kappas, kappas[1:])):
            raise ValueError("kappa must be strictly decreasing along the table")

    def kappa_for(self, d: int) -> int | None:
        """Constant of the largest ``d0 <= d``; None below the first row."""
        usable = [(d0, k) for k, d0 in self.rows if d0 <= d]
        return max(usable)[1] if usable else None


SHARP_TABLE = SharpTable()


@dataclass
class CheckReport:
    check: str
    hypotheses_held: bool
    verdict: str
    lhs: float | None = None
    rhs: float | None = None
    margin: float | None = None
    witness: Any = None
    instance_id: str | None = None

    def __post_init__(self):
        if (self.verdict == VACUOUS) == self.hypotheses_held:
            raise ValueError("verdict is vacuous exactly when the hypotheses fail")

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in ("check", "instance_id", "verdict", "hypotheses_held", "lhs", "rhs", "margin", "witness")}

    @classmethod
    def from_dict(cls, data: dict) -> CheckReport:
        return cls(**data)


def _vacuous(check, reason, **kw):
    return CheckReport(check, False, VACUOUS, witness={"reason": reason}, **kw)


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# -- formulas ---------------------------------------------------------------


def main_gap(h, d: int) -> Fraction:
    """``h^4 / (2^9 d^8)`` exactly."""
    return _as_fraction(h) ** 4 / (512 * d**8)


def main_lower_bound(h, d: int) -> float:
    return float(-1 + main_gap(h, d))


def upper_gap_bound(h, d: int) -> float:
    return float(1 - _as_fraction(h) ** 2 / (2 * d * d))


def sharp_gap(h, d: int, table: SharpTable = SHARP_TABLE) -> Fraction | None:
    kappa = table.kappa_for(d)
    if kappa is None:
        return None
    return _as_fraction(h) ** 4 / (kappa * d**8)


def sharp_lower_bound(h, d: int, table: SharpTable = SHARP_TABLE) -> float | None:
    """``-1 + h^4 / (kappa d^8)``, or None (not applicable) when ``d < 3``."""
    gap = sharp_gap(h, d, table)
    return None if gap is None else float(-1 + gap)


@dataclass(frozen=True)
class BoundParams:
    """Derived constants for a given expansion ``epsilon`` and degree ``d``.

    ``ell = eps^4 / (2^9 d^8)``, ``tau = d^2 sqrt(2 ell (2 - ell))``,
    ``r = 1 - (d tau / eps^2)(eps + d + 2)`` and, when ``zeta`` is given,
    ``beta = d^2 sqrt(2 zeta (2 - zeta))``.
    """

    epsilon: Fraction
    d: int
    zeta: float | None = None
    beta: float | None = field(default=None)
    tau: float = field(default=0.0)
    r: float = field(default=0.0)
    ell: Fraction = field(default=Fraction(0))

    @classmethod
    def build(cls, epsilon, d: int, zeta: float | None = None) -> BoundParams:
        eps = _as_fraction(epsilon)
        ell = main_gap(eps, d)
        ell_f = float(ell)
        tau = d * d * math.sqrt(2 * ell_f * (2 - ell_f))
        r = 1 - (d * tau / float(eps) ** 2) * (float(eps) + d + 2) if eps else float("-inf")
        beta = None if zeta is None else d * d * math.sqrt(2 * zeta * (2 - zeta))
        return cls(eps, d, zeta, beta, tau, r, ell)

    def consistent(self) -> bool:
        again = BoundParams.build(self.epsilon, self.d, self.zeta)
        return again == self


# -- set arithmetic ---------------------------------------------------------


class SetAlgebra:
    """Products, translates and inverses of element subsets as boolean masks."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.n = group.order

    def mask(self, members) -> np.ndarray:
        if isinstance(members, np.ndarray) and members.dtype == bool:
            return members
        m = np.zeros(self.n, dtype=bool)
        m[list(members)] = True
        return m

    def inverse(self, a: np.ndarray) -> np.ndarray:
        return a[self.group.inv]

    def right(self, a: np.ndarray, g: int) -> np.ndarray:
        """``A g``."""
        return a[self.group.mul[:, self.group.inv[g]]]

    def left(self, g: int, a: np.ndarray) -> np.ndarray:
        """``g A``."""
        return a[self.group.mul[self.group.inv[g], :]]

    def product(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.zeros(self.n, dtype=bool)
        ia, ib = np.flatnonzero(a), np.flatnonzero(b)
        if ia.size and ib.size:
            out[np.unique(self.group.mul[np.ix_(ia, ib)])] = True
        return out


def aexists_quantities(group: FiniteGroup, subset, a_set) -> dict:
    """Exact integer quantities entering the five conditions on a set ``A``.

    Returns the maxima over ``g`` (and ``s``) of the left-hand sides together
    with ``|A|``, ``|SAS - A|`` and ``|G|``.
    """
    alg = SetAlgebra(group)
    s_mask = alg.mask(subset)
    a = alg.mask(a_set)
    members = np.flatnonzero(s_mask)
    c2 = c3 = c4 = c5 = 0
    for g in range(group.order):
        for label, x in (("right", alg.right(a, g)), ("inv", alg.right(alg.inverse(a), g))):
            x_inv = alg.inverse(x)
            inter = int((x & alg.product(x_inv, s_mask)).sum())
            sym = max(int((alg.right(x_inv, s) ^ ~x).sum()) for s in members)
            if label == "right":
                c2, c3 = max(c2, inter), max(c3, sym)
            else:
                c4, c5 = max(c4, inter), max(c5, sym)
    sas = alg.product(alg.product(s_mask, a), s_mask)
    return {
        "n": group.order,
        "size": int(a.sum()),
        "sas_minus_a": int((sas & ~a).sum()),
        "c2": c2,
        "c3": c3,
        "c4": c4,
        "c5": c5,
    }


def aexists_conditions(group: FiniteGroup, subset, a_set, beta: float, eps) -> dict:
    """Evaluate conditions (1)-(5) for ``A`` with parameters ``beta`` and ``eps``."""
    q = aexists_quantities(group, subset, a_set)
    d = len(set(subset))
    e = float(eps)
    size = q["size"]
    small = beta / e * size
    sym = beta / e * (e + d + 2) * size
    ok = {
        1: q["n"] / (2 + beta + d * beta / e) <= size and 2 * size <= q["n"],
        2: q["c2"] <= small,
        3: q["c3"] <= sym,
        4: q["c4"] <= small,
        5: q["c5"] <= sym,
    }
    return {"quantities": q, "ok": ok, "all": all(ok.values())}


def _subsets_lex(n: int, lo: int, hi: int):
    """Subsets of ``range(n)`` with ``lo <= size <= hi`` in sorted-sequence lex order."""
    stack = [()]
    while stack:
        cur = stack.pop()
        if lo <= len(cur) <= hi and cur:
            yield cur
        if len(cur) < hi:
            start = cur[-1] + 1 if cur else 0
            for v in range(n - 1, start - 1, -1):
                stack.append(cur + (v,))


def search_aexists(group: FiniteGroup, subset, beta: float, eps) -> ElementSet | None:
    """First subset (lex order) satisfying all five conditions, or None."""
    d = len(set(subset))
    e = float(eps)
    n = group.order
    lo = max(1, math.ceil(n / (2 + beta + d * beta / e) - 1e-12))
    for cand in _subsets_lex(n, lo, n // 2):
        if aexists_conditions(group, subset, cand, beta, eps)["all"]:
            return group.element_set(cand)
    return None


# -- theorem checks ---------------------------------------------------------


def _connected_nonbipartite(graph, spectrum):
    connected = is_connected_spectral(spectrum)
    bipartite = connected and spectrum.n >= 2 and spectrum.adjacency_eigs[-1] <= -1 + spectrum.tol
    return connected, bipartite


def check_theorem_main(graph: CountGraph, spectrum: Spectrum, h, margin: float = MARGIN) -> CheckReport:
    name = "theorem_main"
    if graph.kind != "cayley_sum":
        return _vacuous(name, "not a Cayley sum graph")
    connected, bipartite = _connected_nonbipartite(graph, spectrum)
    if not connected or bipartite or graph.n < 2 or h <= 0:
        return _vacuous(name, "disconnected" if not connected else "bipartite")
    t_n = float(spectrum.adjacency_eigs[-1])
    bound = main_lower_bound(h, graph.d)
    ok = t_n > bound - margin
    return CheckReport(name, True, PASS if ok else FAIL, t_n, bound, t_n - bound,
                       None if ok else {"t_n": t_n, "h": str(h), "d": graph.d})


def check_upper_gap(graph: CountGraph, spectrum: Spectrum, h, margin: float = MARGIN) -> CheckReport:
    name = "upper_gap"
    if graph.n < 2:
        return _vacuous(name, "no second eigenvalue")
    if not is_connected_spectral(spectrum):
        return _vacuous(name, "disconnected")
    t2 = float(spectrum.adjacency_eigs[1])
    bound = upper_gap_bound(h, graph.d)
    ok = t2 <= bound + margin
    return CheckReport(name, True, PASS if ok else FAIL, t2, bound, bound - t2,
                       None if ok else {"t_2": t2, "h": str(h), "d": graph.d})


def check_bis19(graph: CountGraph, spectrum: Spectrum, h, margin: float = MARGIN) -> CheckReport:
    name = "bis19"
    if graph.kind != "cayley":
        return _vacuous(name, "not a Cayley graph")
    if graph.n == 3:
        return _vacuous(name, "group of order 3")
    connected, bipartite = _connected_nonbipartite(graph, spectrum)
    if not connected or bipartite or graph.n < 2 or h <= 0:
        return _vacuous(name, "disconnected" if not connected else "bipartite")
    lam_n = 1.0 - float(spectrum.adjacency_eigs[-1])
    bound = float(2 - main_gap(h, graph.d))
    ok = lam_n < bound + margin
    return CheckReport(name, True, PASS if ok else FAIL, lam_n, bound, bound - lam_n,
                       None if ok else {"lambda_n": lam_n, "h": str(h), "d": graph.d})


def check_sharp(graph: CountGraph, spectrum: Spectrum, h, minimal: bool, margin: float = MARGIN,
                table: SharpTable = SHARP_TABLE) -> CheckReport:
    name = "sharp"
    if graph.kind not in ("cayley", "cayley_sum"):
        return _vacuous(name, "not a Cayley or Cayley sum graph")
    if graph.d < 3:
        return _vacuous(name, "degree below 3")
    if not minimal:
        return _vacuous(name, "a proper symmetric subset generates")
    connected, bipartite = _connected_nonbipartite(graph, spectrum)
    if not connected or bipartite or h <= 0:
        return _vacuous(name, "disconnected" if not connected else "bipartite")
    t_n = float(spectrum.adjacency_eigs[-1])
    bound = sharp_lower_bound(h, graph.d, table)
    ok = t_n > bound - margin
    return CheckReport(name, True, PASS if ok else FAIL, t_n, bound, t_n - bound,
                       {"kappa": table.kappa_for(graph.d)} if ok else
                       {"t_n": t_n, "h": str(h), "d": graph.d, "kappa": table.kappa_for(graph.d)})


def check_epsilon_bounds(graph: CountGraph, h, minimal: bool) -> list[CheckReport]:
    """``h <= d - 1`` for sum graphs (non-bipartite) and Cayley graphs (order >= 4);
    ``h <= 2`` for non-bipartite sum graphs with a minimal generating set."""
    h = _as_fraction(h)
    d = graph.d
    out = []
    bipartite = is_bipartite_bfs(graph)

    def exact(name, bound):
        ok = h <= bound
        return CheckReport(name, True, PASS if ok else FAIL, float(h), float(bound), float(bound - h),
                           None if ok else {"h": str(h), "bound": str(bound)})

    if graph.kind == "cayley_sum" and not bipartite:
        out.append(exact("epsilon_sum_d_minus_1", Fraction(d - 1)))
    else:
        out.append(_vacuous("epsilon_sum_d_minus_1", "not a non-bipartite Cayley sum graph"))
    if graph.kind == "cayley" and graph.n >= 4:
        out.append(exact("epsilon_cayley_d_minus_1", Fraction(d - 1)))
    else:
        out.append(_vacuous("epsilon_cayley_d_minus_1", "not a Cayley graph on at least 4 elements"))
    if graph.kind == "cayley_sum" and not bipartite and minimal:
        out.append(exact("epsilon_minimal_2", Fraction(2)))
    else:
        out.append(_vacuous("epsilon_minimal_2", "not a non-bipartite sum graph with minimal set"))
    return out


def check_bipartite_lemma(group: FiniteGroup, subset, sum_graph: CountGraph,
                          spectrum: Spectrum | None = None) -> CheckReport:
    """Bipartite sum graph iff some index-two subgroup avoids S."""
    s = set(subset)
    avoiding = [h.members for h in group.index_two_subgroups() if not s & set(h.members)]
    structural = bool(avoiding)
    bfs = is_bipartite_bfs(sum_graph)
    agree = bfs == structural
    witness = {"bipartite_bfs": bfs, "avoiding_subgroup": list(avoiding[0]) if avoiding else None}
    if spectrum is not None:
        spectral = bool(spectrum.n >= 2 and spectrum.adjacency_eigs[-1] <= -1 + spectrum.tol)
        witness["bipartite_spectral"] = spectral
        agree = agree and spectral == structural
    return CheckReport("bipartite_lemma", True, PASS if agree else FAIL,
                       float(bfs), float(structural), 0.0 if agree else -1.0, witness)


def check_vertex_expansion_complement(group: FiniteGroup, subset, a_set, eps) -> CheckReport:
    """``|A^-1 S - A| >= (eps/d) |G - A|`` for every ``A`` with ``|A| >= |G|/2``."""
    name = "vertex_expansion_complement"
    alg = SetAlgebra(group)
    a = alg.mask(a_set)
    if 2 * int(a.sum()) < group.order:
        return _vacuous(name, "|A| < |G|/2")
    s = alg.mask(subset)
    d = int(s.sum())
    lhs = Fraction(int((alg.product(alg.inverse(a), s) & ~a).sum()))
    rhs = _as_fraction(eps) / d * int((~a).sum())
    ok = lhs >= rhs
    return CheckReport(name, True, PASS if ok else FAIL, float(lhs), float(rhs), float(lhs - rhs),
                       None if ok else {"A": np.flatnonzero(a).tolist()})


def _eigen_in_window(spectrum: Spectrum, zeta: float) -> bool:
    t = spectrum.adjacency_eigs
    return bool(((t > -1 + spectrum.tol) & (t <= -1 + zeta)).any())


def find_aexists_witness(group: FiniteGroup, subset, spectrum: Spectrum, zeta: float, eps,
                         cap: int = 24) -> tuple[ElementSet | None, CheckReport]:
    """Search for ``A`` satisfying conditions (1)-(5) when an eigenvalue lies in ``(-1, -1+zeta]``."""
    name = "aexists_witness"
    d = len(set(subset))
    e = _as_fraction(eps)
    if e <= 0:
        return None, _vacuous(name, "epsilon is not positive")
    zmax = float(e * e / (4 * d**4))
    if not 0 < zeta <= zmax:
        return None, _vacuous(name, f"zeta outside (0, {zmax}]")
    if not _eigen_in_window(spectrum, zeta):
        return None, _vacuous(name, "no eigenvalue in (-1, -1+zeta]")
    if group.order > cap:
        return None, _vacuous(name, "group above the exhaustive-search cap")
    beta = BoundParams.build(e, d, zeta).beta
    found = search_aexists(group, subset, beta, e)
    ok = found is not None
    return found, CheckReport(name, True, PASS if ok else FAIL, None, None, None,
                              {"A": list(found.members), "beta": beta} if ok else {"zeta": zeta, "beta": beta})


def dichotomy_quantities(group: FiniteGroup, a_set, g: int) -> tuple[int, int]:
    """``(|A ∩ Ag|, |A ∩ A^-1 g|)``."""
    alg = SetAlgebra(group)
    a = alg.mask(a_set)
    return int((a & alg.right(a, g)).sum()), int((a & alg.right(alg.inverse(a), g)).sum())


def check_dichotomy(group: FiniteGroup, subset, a_set, g: int | None, beta: float, eps, h=None) -> CheckReport:
    """Both ``|A ∩ Ag|`` and ``|A ∩ A^-1 g|`` fall in exactly one of the two ranges.

    Hypotheses: ``beta < eps^2 / (4 d (d+1))``, ``0 < eps <= h`` and ``A``
    satisfies conditions (1)-(5) with ``beta``.  ``g=None`` checks every element.
    """
    name = "dichotomy"
    d = len(set(subset))
    e = _as_fraction(eps)
    if e <= 0 or (h is not None and e > _as_fraction(h)):
        return _vacuous(name, "epsilon not in (0, h]")
    if not beta < float(e * e / (4 * d * (d + 1))):
        return _vacuous(name, "beta precondition fails")
    cond = aexists_conditions(group, subset, a_set, beta, e)
    if not cond["all"]:
        return _vacuous(name, "A does not satisfy conditions (1)-(5)")
    size = cond["quantities"]["size"]
    frac = d * beta / float(e) ** 2 * (float(e) + d + 2)
    low, high = frac * size, (1 - frac) * size
    elements = range(group.order) if g is None else [g]
    bad = []
    for x in elements:
        values = dichotomy_quantities(group, a_set, x)
        if not all((v <= low) != (v >= high) for v in values):
            bad.append({"g": x, "right": values[0], "inverse": values[1]})
    ok = not bad
    return CheckReport(name, True, PASS if ok else FAIL, None, low, high - low,
                       {"low": low, "high": high, "elements": len(elements)} if ok else {"violations": bad})


# -- structural and Cheeger invariants ---------------------------------------


def check_sandwich(d: int, vertex: CutWitness, edge: CutWitness) -> CheckReport:
    """``h/d <= hh <= h`` in exact arithmetic."""
    h, hh = vertex.value, edge.value
    ok = h / d <= hh <= h
    return CheckReport("cheeger_sandwich", True, PASS if ok else FAIL, float(hh), float(h),
                       float(min(hh - h / d, h - hh)), None if ok else {"h": str(h), "edge_h": str(hh)})


def check_cheeger_buser(spectrum: Spectrum, edge_value, margin: float = MARGIN, name: str = "cheeger_buser") -> CheckReport:
    if spectrum.n < 2:
        return _vacuous(name, "single vertex")
    lam2 = 1.0 - float(spectrum.adjacency_eigs[1])
    hh = _as_fraction(edge_value)
    lo, hi = float(hh * hh / 2), float(2 * hh)
    ok = lo - margin <= lam2 <= hi + margin
    return CheckReport(name, True, PASS if ok else FAIL, lam2, float(hh), min(lam2 - lo, hi - lam2),
                       None if ok else {"lambda_2": lam2, "edge_h": str(hh)})


def check_witness(graph: CountGraph, witness: CutWitness) -> CheckReport:
    ratio = vertex_ratio if witness.kind == "vertex" else edge_ratio
    recomputed = ratio(graph, witness.subset)
    ok = recomputed == witness.value and 1 <= len(witness.subset) and 2 * len(witness.subset) <= graph.n
    return CheckReport(f"witness_{witness.kind}_{witness.method}", True, PASS if ok else FAIL,
                       float(recomputed), float(witness.value), 0.0,
                       None if ok else {"subset": list(witness.subset), "recomputed": str(recomputed)})


def check_sweep(exact: CutWitness, sweep: CutWitness) -> CheckReport:
    ok = sweep.value >= exact.value
    return CheckReport(f"sweep_{exact.kind}", True, PASS if ok else FAIL, float(sweep.value),
                       float(exact.value), float(sweep.value - exact.value),
                       None if ok else {"sweep": list(sweep.subset)})


def check_pair_square(sum_graph: CountGraph, pair_graph: CountGraph) -> CheckReport:
    """Pair-multigraph counts equal the square of the sum-graph counts."""
    sq = sum_graph.counts @ sum_graph.counts
    ok = bool(np.array_equal(sq, pair_graph.counts))
    diff = int(np.abs(sq - pair_graph.counts).max())
    return CheckReport("pair_square_identity", True, PASS if ok else FAIL, float(diff), 0.0, float(-diff), None)


def check_undirected_conjugation(group: FiniteGroup, subset) -> CheckReport:
    """The raw sum relation is symmetric iff S is closed under conjugation."""
    raw = sum_relation_counts(group, subset)
    s = set(subset)
    closed = all(group.conjugate(x, y) in s for x in s for y in range(group.order))
    sym = bool(np.array_equal(raw, raw.T))
    ok = sym == closed
    return CheckReport("undirected_iff_conjugation_closed", True, PASS if ok else FAIL, float(sym),
                       float(closed), 0.0, {"symmetric_relation": sym, "conjugation_closed": closed})


def check_spectral_identities(graph: CountGraph, spectrum: Spectrum) -> list[CheckReport]:
    from .spectra import frobenius_identity_error, trace_identity_error

    bound = 10 * spectrum.tol
    out = []
    for name, err in (("trace_identity", trace_identity_error(graph, spectrum)),
                      ("frobenius_identity", frobenius_identity_error(graph, spectrum)),
                      ("reconstruction", spectrum.residual)):
        ok = err < bound
        out.append(CheckReport(name, True, PASS if ok else FAIL, err, bound, bound - err, None))
    conn_ok = is_connected_spectral(spectrum) == is_connected_bfs(graph)
    out.append(CheckReport("connectivity_agreement", True, PASS if conn_ok else FAIL, None, None, None, None))
    if is_connected_bfs(graph) and graph.n >= 2:
        spec_bip = bool(spectrum.adjacency_eigs[-1] <= -1 + spectrum.tol)
        ok = spec_bip == is_bipartite_bfs(graph)
        out.append(CheckReport("bipartite_agreement", True, PASS if ok else FAIL, None, None, None, None))
    else:
        out.append(_vacuous("bipartite_agreement", "disconnected or single vertex"))
    return out


def check_pair_spectrum(sum_spectrum: Spectrum, pair_spectrum: Spectrum) -> CheckReport:
    """Pair-multigraph eigenvalues are the squares of the sum-graph eigenvalues."""
    sq = np.sort(sum_spectrum.adjacency_eigs ** 2)
    other = np.sort(pair_spectrum.adjacency_eigs)
    err = float(np.abs(sq - other).max())
    bound = 100 * sum_spectrum.tol
    ok = err < bound
    return CheckReport("pair_spectrum_squares", True, PASS if ok else FAIL, err, bound, bound - err, None)
