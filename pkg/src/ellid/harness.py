"""Randomized verification harness: sampling, suite execution, reporting.

Parameter draws are derived counter-style from a SHA-256 stream keyed by
(seed, identity, n, trial), so a draw depends only on its coordinates, never
on execution order or thread count.  Draws that hit a pole of the identity
(any denominator theta factor within the pole tolerance) are rejected and
redrawn from the same stream.

Reports serialize to a stable JSON schema:

    { "config": {...},
      "results": [ { "id", "mode", "n", "trial", "lhs": [re, im],
                     "rhs": [re, im], "abs_err", "rel_err", "pass",
                     "params": { name: [re, im] } } ],
      "summary": { id: { "trials", "failures", "max_rel_err" } },
      "timings": {...} }

Complex numbers are two-element real arrays; exact-mode entries replace
lhs/rhs by canonical coefficient maps { exponent: "rational-string" } of the
cross-normalized Laurent polynomials (lhs.num * rhs.den and rhs.num * lhs.den,
which are equal exactly when the identity holds).  Two runs with the same
configuration produce byte-identical JSON except for the timings block.
"""

from __future__ import annotations

import cmath
import hashlib
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainRejected, ModeUnsupported, ResamplingExhausted
from .identities import (MODE_EXACT_Q, MODE_EXACT_RATIONAL, MODE_NUMERIC,
                         VerificationResult, edges, evaluate, get_edge,
                         get_identity, reduce_chain_check)
from .qexact import RationalFn
from .theta import POLE_TOL, ThetaConfig

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class SampleConfig:
    """Sampling boxes and determinism controls for the harness."""

    seed: int = 0
    trials: int = 100
    p_radius: float = 0.5
    q_annulus: tuple = (0.3, 0.9)
    box: tuple = (-1.0, 1.0)
    box_exclusion: float = 0.05
    pole_tol: float = POLE_TOL
    max_resamples: int = 1000

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 0.0 <= self.p_radius <= 0.9:
            raise ValueError("p_radius must lie in [0, 0.9]")

    def to_dict(self) -> dict:
        return {"seed": self.seed, "trials": self.trials,
                "p_radius": self.p_radius, "q_annulus": list(self.q_annulus),
                "box": list(self.box), "box_exclusion": self.box_exclusion,
                "pole_tol": self.pole_tol, "max_resamples": self.max_resamples}


class _CounterRng:
    """Uniform deviates from a SHA-256 counter stream keyed by coordinates."""

    __slots__ = ("_prefix", "_i")

    def __init__(self, seed: int, *key):
        self._prefix = str(seed) + "|" + "|".join(str(k) for k in key)
        self._i = 0

    def _u64(self) -> int:
        h = hashlib.sha256(f"{self._prefix}|{self._i}".encode()).digest()
        self._i += 1
        return int.from_bytes(h[:8], "big")

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * (self._u64() / 2.0**64)

    def randint(self, lo: int, hi: int) -> int:
        return lo + self._u64() % (hi - lo + 1)


def _draw_box(rng: _CounterRng, cfg: SampleConfig) -> complex:
    lo, hi = cfg.box
    while True:
        z = complex(rng.uniform(lo, hi), rng.uniform(lo, hi))
        if abs(z) >= cfg.box_exclusion:
            return z


def _draw_q(rng: _CounterRng, cfg: SampleConfig) -> complex:
    rmin, rmax = cfg.q_annulus
    mod = rng.uniform(rmin, rmax)
    ang = rng.uniform(-math.pi, math.pi)
    return mod * cmath.exp(1j * ang)


def _draw_p(rng: _CounterRng, cfg: SampleConfig) -> complex:
    r = cfg.p_radius
    if r == 0.0:
        return 0j
    while True:
        z = complex(rng.uniform(-r, r), rng.uniform(-r, r))
        if abs(z) <= r:
            return z


def _draw_params(rng: _CounterRng, signature, cfg: SampleConfig, ident_id: str,
                 fixed: dict | None = None) -> dict:
    prm: dict = {}
    fixed = fixed or {}
    for name, kind in signature:
        if name in fixed:
            prm[name] = fixed[name]
        elif name == "q":
            prm[name] = _draw_q(rng, cfg)
        elif name == "p":
            prm[name] = _draw_p(rng, cfg)
        elif name == "r":
            prm[name] = prm["q"] ** 2
        elif name == "s":
            prm[name] = prm["q"] ** 3
        elif name == "m":
            prm[name] = rng.randint(0 if ident_id == "tel-a" else 1, 3)
        else:
            prm[name] = _draw_box(rng, cfg)
    return prm


def sample_params(ident, cfg: SampleConfig, trial_index: int, n: int = 4,
                  theta_cfg: ThetaConfig = ThetaConfig(),
                  fixed: dict | None = None) -> dict:
    """First admissible parameter draw for (identity, n, trial_index).

    The draw stream is keyed by (seed, id, n, trial_index); rejected draws
    advance the same stream, so acceptance history cannot shift later trials.
    The domain predicate is realized by attempting both evaluators: a draw is
    admissible exactly when no sub-evaluation hits the pole tolerance.
    """
    desc = get_identity(ident)
    rng = _CounterRng(cfg.seed, desc.id, n, trial_index)
    for _ in range(cfg.max_resamples):
        prm = _draw_params(rng, desc.param_signature, cfg, desc.id, fixed)
        try:
            evaluate(desc, prm, n, MODE_NUMERIC, theta_cfg,
                     pole_tol=cfg.pole_tol)
        except DomainRejected:
            continue
        return prm
    raise ResamplingExhausted(
        f"no admissible draw for {desc.id} (n={n}, trial={trial_index}) "
        f"within {cfg.max_resamples} resamples")


def _edge_signature(edge) -> tuple:
    """Child signature extended by any parent-only parameter names."""
    child = get_identity(edge.child)
    parent = get_identity(edge.parent)
    names = {name for name, _ in child.param_signature}
    sig = list(child.param_signature)
    for name, kind in parent.param_signature:
        if name not in names:
            sig.append((name, kind))
            names.add(name)
    return tuple(sig)


def sample_edge_params(parent_id: str, child_id: str, cfg: SampleConfig,
                       trial_index: int, n: int,
                       theta_cfg: ThetaConfig = ThetaConfig()) -> dict:
    """Admissible draw for a degeneration edge (both endpoints evaluable)."""
    edge = get_edge(parent_id, child_id)
    rng = _CounterRng(cfg.seed, f"{parent_id}->{child_id}", n, trial_index)
    sig = _edge_signature(edge)
    for _ in range(cfg.max_resamples):
        prm = _draw_params(rng, sig, cfg, child_id)
        try:
            reduce_chain_check(parent_id, child_id, prm, n,
                               cfg=theta_cfg, pole_tol=cfg.pole_tol)
        except DomainRejected:
            continue
        return prm
    raise ResamplingExhausted(
        f"no admissible draw for edge {parent_id}->{child_id} (n={n})")


# ---------------------------------------------------------------------------
# reporting
# ---------------------------------------------------------------------------

def _cnum(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _coeff_map(poly) -> dict:
    return {str(e): str(c) for e, c in sorted(poly.coeffs.items())}


def _exact_sides(lhs: RationalFn, rhs: RationalFn) -> tuple[dict, dict]:
    return (_coeff_map(lhs.num * rhs.den), _coeff_map(rhs.num * lhs.den))


def result_record(res: VerificationResult) -> dict:
    """One VerificationResult in the JSON schema."""
    if isinstance(res.lhs, RationalFn) and isinstance(res.rhs, RationalFn):
        lhs, rhs = _exact_sides(res.lhs, res.rhs)
    else:
        lhs, rhs = _cnum(res.lhs), _cnum(res.rhs)
    params = {}
    for k in sorted(res.params):
        v = res.params[k]
        params[k] = _cnum(v) if not isinstance(v, (int, Fraction)) else [float(v), 0.0]
    return {"id": res.identity, "mode": res.mode, "n": res.n, "trial": res.trial,
            "lhs": lhs, "rhs": rhs, "abs_err": res.abs_err, "rel_err": res.rel_err,
            "pass": res.passed, "params": params}


@dataclass
class SuiteReport:
    """Aggregated suite outcome; serializes losslessly to the JSON schema."""

    config: dict
    results: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(r["pass"] for r in self.results)

    def to_dict(self) -> dict:
        return {"config": self.config, "results": self.results,
                "summary": self.summary, "timings": self.timings}

    def to_json(self, indent: int = 1) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @staticmethod
    def from_json(text: str) -> "SuiteReport":
        d = json.loads(text)
        return SuiteReport(d["config"], d["results"], d["summary"], d["timings"])


def _summarize(records: list) -> dict:
    summary: dict = {}
    for r in records:
        s = summary.setdefault(r["id"], {"trials": 0, "failures": 0,
                                         "max_rel_err": 0.0})
        s["trials"] += 1
        if not r["pass"]:
            s["failures"] += 1
        if isinstance(r["rel_err"], (int, float)) and r["rel_err"] > s["max_rel_err"]:
            s["max_rel_err"] = r["rel_err"]
    return dict(sorted(summary.items()))


def _exact_sidecar_params(desc, cfg: SampleConfig, n: int) -> dict | None:
    """Deterministic small-integer parameters for the per-n exact run."""
    if not desc.param_signature or desc.param_signature == (("q", "complex"),):
        return {}
    rng = _CounterRng(cfg.seed, desc.id, n, "exact")
    for _ in range(cfg.max_resamples):
        prm = {}
        for name, kind in desc.param_signature:
            if name == "q":
                continue
            prm[name] = rng.randint(1, 3) if name in ("c", "d") else rng.randint(0, 3)
        if desc.exact_domain is None or desc.exact_domain(prm):
            return prm
    return None


def run_suite(ids, n_max: int, cfg: SampleConfig, tol: float = DEFAULT_TOL,
              theta_cfg: ThetaConfig = ThetaConfig(), include_edges: bool = False,
              workers: int = 1) -> SuiteReport:
    """Verify each identity for n in [0, n_max] over cfg.trials random draws.

    Identities with an exact mode additionally run one exact check per n with
    deterministic small-integer parameters.  Per-trial failures (including
    resampling exhaustion) are recorded in the report, never raised.  With
    workers > 1 the trials run concurrently; aggregation is keyed by
    (id, mode, n, trial) so the report is identical to a serial run.
    """
    t0 = time.monotonic()
    descs = [get_identity(i) for i in ids]
    tasks = []
    for desc in descs:
        for n in range(desc.min_n, n_max + 1):
            if MODE_NUMERIC in desc.modes:
                for trial in range(cfg.trials):
                    tasks.append(("id", desc.id, n, trial))
            if MODE_EXACT_Q in desc.modes or MODE_EXACT_RATIONAL in desc.modes:
                tasks.append(("exact", desc.id, n, None))
    if include_edges:
        for edge in edges():
            child = get_identity(edge.child)
            lo = max(edge.min_n, child.min_n)
            for n in range(lo, n_max + 1):
                for trial in range(cfg.trials):
                    tasks.append(("edge", f"{edge.parent}->{edge.child}", n, trial))

    def run_one(task):
        kind, ident, n, trial = task
        try:
            if kind == "id":
                prm = sample_params(ident, cfg, trial, n, theta_cfg)
                res = evaluate(ident, prm, n, MODE_NUMERIC, theta_cfg, tol,
                               cfg.pole_tol, trial)
            elif kind == "exact":
                desc = get_identity(ident)
                mode = (MODE_EXACT_Q if MODE_EXACT_Q in desc.modes
                        else MODE_EXACT_RATIONAL)
                prm = _exact_sidecar_params(desc, cfg, n)
                if prm is None:
                    raise ResamplingExhausted(f"no admissible exact parameters for {ident}")
                res = evaluate(ident, prm, n, mode, theta_cfg, tol, cfg.pole_tol)
            else:
                parent, child = ident.split("->")
                prm = sample_edge_params(parent, child, cfg, trial, n, theta_cfg)
                res = reduce_chain_check(parent, child, prm, n, cfg=theta_cfg,
                                         tol=1e-10, pole_tol=cfg.pole_tol,
                                         trial=trial)
            return task, result_record(res)
        except (DomainRejected, ResamplingExhausted, ModeUnsupported) as exc:
            return task, {"id": ident, "mode": kind, "n": n, "trial": trial,
                          "lhs": None, "rhs": None, "abs_err": math.inf,
                          "rel_err": math.inf, "pass": False,
                          "params": {}, "error": str(exc)}

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = dict(pool.map(run_one, tasks))
    else:
        outcomes = dict(run_one(t) for t in tasks)

    records = [outcomes[t] for t in tasks]  # task list order is deterministic
    report = SuiteReport(config={"sample": cfg.to_dict(),
                                 "theta": {"max_terms": theta_cfg.max_terms,
                                           "tail_tol": theta_cfg.tail_tol},
                                 "tol": tol, "n_max": n_max,
                                 "ids": [d.id for d in descs],
                                 "edges": include_edges},
                         results=records,
                         summary=_summarize(records),
                         timings={"total_seconds": time.monotonic() - t0})
    return report
