"""Estimator-style front end that runs the whole pipeline on one instance.

>>> from cayley_spectra import CayleyAnalyzer
>>> an = CayleyAnalyzer(kind="cayley_sum").fit("cyclic:5", "1,4")
>>> an.vertex_cheeger_.value
Fraction(1, 2)
>>> an.failed_checks()
[]
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import bounds
from .bounds import CheckReport
from .cheeger import DEFAULT_EXACT_CAP, cheeger_exact, sweep_upper_bound
from .exceptions import TooLarge
from .graphs import build_cayley, build_cayley_sum, build_pair_multigraph, is_bipartite_bfs, validate
from .spectra import DEFAULT_TOL, eig_symmetric, fiedler_vector, is_connected_spectral
from .validation import check_epsilon, check_generating_set, check_group, check_kind

SCHEMA_VERSION = 1


class CayleyAnalyzer(BaseEstimator):
    """Spectrum, exact Cheeger constants and bound checks for ``C(G,S)`` or ``C_Σ(G,S)``.

    Parameters
    ----------
    kind : {"cayley_sum", "cayley"}
    tol : float
        Eigensolver and spectral-test tolerance.
    max_exact_n : int
        Largest vertex count for exhaustive Cheeger enumeration.
    epsilon : Fraction, str or None
        Expansion constant used in the bound checks; defaults to the exact
        vertex Cheeger constant and must not exceed it.
    margin : float
        Slack granted to float eigenvalues in strict inequalities.

    Attributes
    ----------
    group_, generating_set_, graph_, spectrum_ :
        Validated inputs and the graph with its spectrum.
    vertex_cheeger_, edge_cheeger_ : CutWitness
    epsilon_ : Fraction
    pair_graph_, pair_spectrum_, pair_edge_cheeger_ :
        Pair multigraph data (sum graphs only, else None).
    reports_ : list of CheckReport
    """

    def __init__(self, kind="cayley_sum", tol=DEFAULT_TOL, max_exact_n=DEFAULT_EXACT_CAP, epsilon=None,
                 margin=bounds.MARGIN):
        self.kind = kind
        self.tol = tol
        self.max_exact_n = max_exact_n
        self.epsilon = epsilon
        self.margin = margin

    def fit(self, group, generating_set, instance_id=None):
        kind = check_kind(self.kind)
        g = check_group(group)
        members = check_generating_set(g, generating_set)
        gs = validate(g, members, require_conjugation_closed=kind == "cayley_sum")
        graph = build_cayley_sum(g, gs) if kind == "cayley_sum" else build_cayley(g, gs)
        if graph.n > self.max_exact_n:
            raise TooLarge(graph.n, self.max_exact_n)
        if graph.n < 2:
            raise ValueError("need a group of order >= 2")
        spectrum = eig_symmetric(graph, self.tol)
        vertex, edge = cheeger_exact(graph, self.max_exact_n)
        eps = check_epsilon(self.epsilon, vertex.value)

        self.group_ = g
        self.generating_set_ = gs
        self.graph_ = graph
        self.spectrum_ = spectrum
        self.vertex_cheeger_ = vertex
        self.edge_cheeger_ = edge
        self.epsilon_ = eps
        fiedler = fiedler_vector(spectrum)
        self.sweep_vertex_ = sweep_upper_bound(graph, fiedler, "vertex")
        self.sweep_edge_ = sweep_upper_bound(graph, fiedler, "edge")
        self.pair_graph_ = self.pair_spectrum_ = self.pair_edge_cheeger_ = self.pair_vertex_cheeger_ = None
        self.aexists_witness_ = None
        if kind == "cayley_sum":
            self.pair_graph_ = build_pair_multigraph(g, gs)
            self.pair_spectrum_ = eig_symmetric(self.pair_graph_, self.tol)
            self.pair_vertex_cheeger_, self.pair_edge_cheeger_ = cheeger_exact(
                self.pair_graph_, self.max_exact_n, require_connected=False)
        self.instance_id_ = instance_id or f"{kind}/{g.name}/{'.'.join(map(str, gs.members))}"
        self.reports_ = self._run_checks()
        for r in self.reports_:
            r.instance_id = self.instance_id_
        return self

    # -- checks -------------------------------------------------------------

    def _run_checks(self) -> list[CheckReport]:
        g, gs, graph, spec = self.group_, self.generating_set_, self.graph_, self.spectrum_
        h, eps = self.vertex_cheeger_.value, self.epsilon_
        m = self.margin
        out = []
        out += bounds.check_spectral_identities(graph, spec)
        out.append(bounds.check_witness(graph, self.vertex_cheeger_))
        out.append(bounds.check_witness(graph, self.edge_cheeger_))
        out.append(bounds.check_witness(graph, self.sweep_vertex_))
        out.append(bounds.check_witness(graph, self.sweep_edge_))
        out.append(bounds.check_sweep(self.vertex_cheeger_, self.sweep_vertex_))
        out.append(bounds.check_sweep(self.edge_cheeger_, self.sweep_edge_))
        out.append(bounds.check_sandwich(graph.d, self.vertex_cheeger_, self.edge_cheeger_))
        out.append(bounds.check_cheeger_buser(spec, self.edge_cheeger_.value, m))
        out.append(bounds.check_upper_gap(graph, spec, h, m))
        out += bounds.check_epsilon_bounds(graph, h, gs.minimal)
        out.append(bounds.check_sharp(graph, spec, eps, gs.minimal, m))
        complement = [v for v in range(graph.n) if v not in set(self.vertex_cheeger_.subset)]
        if graph.kind == "cayley_sum":
            out.append(bounds.check_theorem_main(graph, spec, eps, m))
            out.append(bounds.check_bipartite_lemma(g, gs.members, graph, spec))
            out.append(bounds.check_undirected_conjugation(g, gs.members))
            out.append(bounds.check_pair_square(graph, self.pair_graph_))
            out.append(bounds.check_pair_spectrum(spec, self.pair_spectrum_))
            pair_cb = bounds.check_cheeger_buser(self.pair_spectrum_, self.pair_edge_cheeger_.value, m,
                                                 name="cheeger_buser_pair")
            out.append(pair_cb)
            out.append(_rename(bounds.check_sandwich(self.pair_graph_.d, self.pair_vertex_cheeger_,
                                                     self.pair_edge_cheeger_), "cheeger_sandwich_pair"))
            out.append(bounds.check_vertex_expansion_complement(g, gs.members, complement, eps))
            out += self._conditional_checks()
        else:
            out.append(bounds.check_bis19(graph, spec, eps, m))
        return out

    def _conditional_checks(self) -> list[CheckReport]:
        g, gs, spec = self.group_, self.generating_set_, self.spectrum_
        eps, d = self.epsilon_, gs.d
        zeta = float(eps * eps / (4 * d**4))
        witness, report = bounds.find_aexists_witness(g, gs.members, spec, zeta, eps, self.max_exact_n)
        self.aexists_witness_ = witness
        out = [report]
        beta_cap = float(eps * eps / (4 * d * (d + 1)))
        if witness is not None:
            beta = bounds.BoundParams.build(eps, d, zeta).beta
            out.append(bounds.check_dichotomy(g, gs.members, witness, None, beta, eps, self.vertex_cheeger_.value))
        else:
            out.append(bounds._vacuous("dichotomy", "no set A from the witness search"))
        # In a bipartite sum graph an index-two subgroup avoiding S satisfies
        # all five conditions for every beta, so the dichotomy is testable.
        avoiding = [hh for hh in g.index_two_subgroups() if not set(hh.members) & set(gs.members)]
        if avoiding:
            r = bounds.check_dichotomy(g, gs.members, avoiding[0], None, beta_cap / 2, eps,
                                       self.vertex_cheeger_.value)
        else:
            r = bounds._vacuous("dichotomy", "no index-two subgroup avoids S")
        out.append(_rename(r, "dichotomy_index_two"))
        return out

    # -- results ------------------------------------------------------------

    def failed_checks(self) -> list[CheckReport]:
        check_is_fitted(self, "reports_")
        return [r for r in self.reports_ if r.verdict == bounds.FAIL]

    def report(self, descriptor: dict | None = None) -> AnalysisReport:
        check_is_fitted(self, "reports_")
        return AnalysisReport.from_analyzer(self, descriptor or {})


def _rename(report: CheckReport, name: str) -> CheckReport:
    report.check = name
    return report


def _frac(x) -> str | None:
    return None if x is None else str(Fraction(x))


def _witness_dict(w):
    if w is None:
        return None
    return {"subset": list(w.subset), "value": _frac(w.value), "kind": w.kind, "method": w.method}


@dataclass
class AnalysisReport:
    """Serializable summary; each top-level section is named after the module that produced it."""

    instance: dict
    graphs: dict
    spectra: dict
    cheeger: dict
    bounds: dict
    checks: list = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_analyzer(cls, an: CayleyAnalyzer, descriptor: dict) -> AnalysisReport:
        spec, graph, gs = an.spectrum_, an.graph_, an.generating_set_
        t = [float(x) for x in spec.adjacency_eigs]
        h, d = an.vertex_cheeger_.value, graph.d
        connected = bool(is_connected_spectral(spec))
        instance = {"id": an.instance_id_, "group": an.group_.name, "order": an.group_.order,
                    "set": list(gs.members), "kind": graph.kind}
        instance.update(descriptor)
        sharp = bounds.sharp_lower_bound(an.epsilon_, d)
        return cls(
            instance=instance,
            graphs={"n": graph.n, "d": d, "connected": connected, "bipartite": is_bipartite_bfs(graph),
                    "conjugation_closed": gs.conjugation_closed, "minimal": gs.minimal,
                    "loops": int(np.trace(graph.counts))},
            spectra={"t_1": t[0], "t_2": t[1], "t_n": t[-1], "lambda_2": 1.0 - t[1], "lambda_n": 1.0 - t[-1],
                     "residual": spec.residual, "tol": spec.tol},
            cheeger={"h": _frac(h), "edge_h": _frac(an.edge_cheeger_.value),
                     "vertex_witness": _witness_dict(an.vertex_cheeger_),
                     "edge_witness": _witness_dict(an.edge_cheeger_),
                     "sweep_vertex": _witness_dict(an.sweep_vertex_), "sweep_edge": _witness_dict(an.sweep_edge_),
                     "pair_edge_h": None if an.pair_edge_cheeger_ is None else _frac(an.pair_edge_cheeger_.value)},
            bounds={"epsilon": _frac(an.epsilon_), "main_lower": bounds.main_lower_bound(an.epsilon_, d),
                    "main_gap": _frac(bounds.main_gap(an.epsilon_, d)),
                    "sharp_lower": sharp, "upper_gap": bounds.upper_gap_bound(h, d)},
            checks=[r.to_dict() for r in an.reports_],
        )

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "instance": self.instance, "graphs": self.graphs,
                "spectra": self.spectra, "cheeger": self.cheeger, "bounds": self.bounds, "checks": self.checks}

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> AnalysisReport:
        return cls(**data)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.checks if c["verdict"] == bounds.FAIL]

    def verdict(self, check: str) -> str | None:
        for c in self.checks:
            if c["check"] == check:
                return c["verdict"]
        return None
