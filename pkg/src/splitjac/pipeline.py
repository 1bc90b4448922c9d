"""Search for split hyperelliptic curves, certificates, and their verification."""

from __future__ import annotations

import copy
import datetime as _dt
import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import jsonschema

from . import __version__
from .construct import (
    PAIRINGS,
    HyperellipticModel,
    NotSquarefreeDefect,
    TwoTorsionNotRational,
    build_D,
    build_D_prime,
    compute_frame,
)
from .elliptic import (
    EllipticCurve,
    count_points,
    full_two_torsion,
    has_rational_four_torsion,
    trace_and_ordinary,
)
from .finite_field import FieldElement, FiniteField, Polynomial, embedding, is_prime, make_field
from .finite_field.field import element_from_json, field_from_json
from .isogeny import enumerate_rational_kernels, kernel_data, velu
from .twist import (
    FactorNotFound,
    TwistRecord,
    becomes_isomorphic_over_extension,
    build_twist,
    make_twist,
    rank_bound,
    twist_field,
)
from .zeta import (
    LPolynomial,
    SplitCertificate,
    base_change,
    cartier_manin,
    count_points_hyperelliptic,
    inert_shape_check,
    lpoly_from_counts,
    p_rank,
    power_of_elliptic,
    split_certificate,
)

SCHEMA_VERSION = 1

REJECTIONS = (
    "not_inert",
    "degenerate",
    "p_prime_on_two_torsion",
    "not_squarefree",
    "not_inert_shape",
    "not_power",
    "not_ordinary",
    "no_elliptic_factor",
)


class ConfigError(ValueError):
    pass


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# -- configuration ---------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    p: int
    ell: int
    max_base_degree: int = 2
    paper_faithful: bool = False
    max_candidates: int | None = None
    seed: int = 0
    max_certificates: int | None = None
    allow_ell_equals_p: bool = False
    min_base_degree: int = 1

    def __post_init__(self):
        for name in ("p", "ell"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 3 or not is_prime(v):
                raise ConfigError(f"{name} must be an odd prime, got {v!r}")
        if self.p == self.ell and not self.allow_ell_equals_p:
            raise ConfigError("ell = p is excluded (pass allow_ell_equals_p to opt in)")
        if not 1 <= self.min_base_degree <= self.max_base_degree:
            raise ConfigError("need 1 <= min_base_degree <= max_base_degree")
        for name in ("max_candidates", "max_certificates"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ConfigError(f"{name} must be non-negative")

    def to_json(self):
        return asdict(self)


# -- enumeration -------------------------------------------------------------------

def isomorphism_key(E: EllipticCurve):
    """Complete invariant of the F_q-isomorphism class (full 2-torsion only).

    Isomorphisms act on the 2-torsion abscissae by x -> u^2 x + r, which
    preserves the cross-ratio-like lambda and the square class of a root
    difference for every ordering of the roots.
    """
    e = full_two_torsion(E)
    F = E.base
    best = None
    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        d = e[j] - e[i]
        lam = (e[k] - e[i]) / d
        cand = (lam.value, F.chi(d.value))
        if best is None or cand < best:
            best = cand
    return best


def class_representatives(F: FiniteField) -> list[EllipticCurve]:
    """One model per isomorphism class of curves with full 2-torsion.

    Each class is represented by y^2 = x(x - d)(x - d*lam) with d = 1 or the
    least nonsquare; the list is sorted by (a2, a4, a6).
    """
    nonsq = next(v for v in range(1, F.order) if F.chi(v) == -1)
    seen = set()
    reps = []
    for dv in (1, nonsq):
        d = FieldElement(F, dv)
        for lv in range(2, F.order):
            E = EllipticCurve.from_roots(F, F.zero(), d, d * FieldElement(F, lv))
            key = isomorphism_key(E)
            if key in seen:
                continue
            seen.add(key)
            reps.append(E)
    reps.sort(key=lambda E: E.key())
    return reps


def select_E_prime(F: FiniteField) -> EllipticCurve | None:
    """Lexicographically first ordinary curve over F with full 2-torsion."""
    q = F.order
    for a2 in range(q):
        for a4 in range(q):
            for a6 in range(q):
                try:
                    E = EllipticCurve(F, FieldElement(F, a2), FieldElement(F, a4), FieldElement(F, a6))
                except ValueError:
                    continue
                if full_two_torsion(E) is not None and trace_and_ordinary(E)[1]:
                    return E
    return None


# -- certificates ----------------------------------------------------------------

def canonical_bytes(doc) -> bytes:
    body = {k: v for k, v in doc.items() if k not in ("timestamp", "hash")}
    return json.dumps(body, sort_keys=True, separators=(",", ":")).encode()


def canonical_hash(doc) -> str:
    return hashlib.sha256(canonical_bytes(doc)).hexdigest()


def _curve_json(E: EllipticCurve):
    return {"a2": E.a2.to_json(), "a4": E.a4.to_json(), "a6": E.a6.to_json()}


def _curve_from_json(F, doc) -> EllipticCurve:
    return EllipticCurve(F, *(element_from_json(F, doc[k]) for k in ("a2", "a4", "a6")))


def _twist_json(R: TwistRecord):
    return {
        "field": R.curve.base.to_json(),
        "factor_field": R.factor.base.to_json(),
        "factor": _curve_json(R.factor),
        "A2": R.curve.A2.to_json(),
        "A4": R.curve.A4.to_json(),
        "A6": R.curve.A6.to_json(),
        "j": R.j.to_json(),
        "rank_bound": R.rank.bound,
        "split_reference": R.rank.provenance,
    }


def build_certificate(cfg: SearchConfig, E_prime, K, pairing, frame, I, D, Dp, counts, split, tw):
    F = I.domain.base
    doc = {
        "schema": SCHEMA_VERSION,
        "artifact_version": __version__,
        "config": cfg.to_json(),
        "field": F.to_json(),
        "E_prime": _curve_json(E_prime),
        "E_tilde": _curve_json(I.domain),
        "E": _curve_json(I.codomain),
        "pairing": list(pairing),
        "kernel": {
            "poly": K.kernel_poly.to_json(),
            "chi": K.chi,
            "chi_order": K.point_field_degree,
        },
        "isogeny": {
            "N": I.N.to_json(),
            "M": I.M.to_json(),
            "v_num": I.y_map_factor.num.to_json(),
            "v_den": I.y_map_factor.den.to_json(),
        },
        "mobius": frame.mu.to_json(),
        "c": frame.P_prime.to_json(),
        "D": {"h": D.h.to_json(), "genus": D.genus},
        "D_prime": {"h": Dp.h.to_json(), "genus": Dp.genus},
        "counts": list(counts),
        "split": split.to_json(),
        "twist": _twist_json(tw),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    doc["hash"] = canonical_hash(doc)
    return doc


# -- search ----------------------------------------------------------------------

@dataclass
class SearchReport:
    config: SearchConfig
    counters: dict = field(default_factory=lambda: {k: 0 for k in REJECTIONS})
    accepted: int = 0
    examined: int = 0
    curves: dict = field(
        default_factory=lambda: {
            "examined": 0,
            "supersingular": 0,
            "no_four_torsion": 0,
            "no_rational_kernel": 0,
        }
    )
    fields_skipped: list = field(default_factory=list)
    fields_without_E_prime: list = field(default_factory=list)
    truncated: bool = False

    @property
    def found(self) -> bool:
        return self.accepted > 0

    def partition_ok(self) -> bool:
        return sum(self.counters.values()) + self.accepted == self.examined

    def advice(self) -> str:
        if self.found:
            return ""
        return (
            "no certificate found; inert candidates become plentiful over larger "
            "fields, so raise --max-base-degree"
        )

    def to_json(self):
        return {
            "config": self.config.to_json(),
            "examined": self.examined,
            "accepted": self.accepted,
            "rejections": dict(self.counters),
            "curves": dict(self.curves),
            "fields_skipped": self.fields_skipped,
            "fields_without_E_prime": self.fields_without_E_prime,
            "truncated": self.truncated,
            "advice": self.advice(),
        }


NotFoundReport = SearchReport


def evaluate_curve(cfg: SearchConfig, E_prime: EllipticCurve, E: EllipticCurve):
    """All candidates on one curve: ('curve', reason) or a list of (label, doc)."""
    if not trace_and_ordinary(E)[1]:
        return "supersingular", []
    if cfg.paper_faithful and not has_rational_four_torsion(E):
        return "no_four_torsion", []
    kernels = enumerate_rational_kernels(E, cfg.ell, allow_ell_p=cfg.allow_ell_equals_p)
    if not kernels:
        return "no_rational_kernel", []
    out = []
    for K in kernels:
        if not K.inert:
            out.extend(("not_inert", None) for _ in PAIRINGS)
            continue
        I = velu(K)
        for pairing in PAIRINGS:
            out.append(_evaluate_candidate(cfg, E_prime, K, I, pairing))
    return None, out


def _evaluate_candidate(cfg, E_prime, K, I, pairing):
    frame, report = compute_frame(I, E_prime, pairing)
    if report.flag:
        return "degenerate", None
    if frame.P_prime_on_two_torsion:
        return "p_prime_on_two_torsion", None
    try:
        D = build_D(I, frame)
        Dp = build_D_prime(I, frame)
    except NotSquarefreeDefect:
        return "not_squarefree", None
    split, reason = split_certificate(D, cfg.ell)
    if split is None:
        return reason, None
    if not split.inert_shape_ok:
        return "not_inert_shape", None
    if not split.ordinary or split.p_rank != D.genus:
        return "not_ordinary", None
    try:
        tw = build_twist(D, split, seed=cfg.seed)
    except FactorNotFound:
        return "no_elliptic_factor", None
    counts = split.L_over_k.counts()
    doc = build_certificate(cfg, E_prime, K, pairing, frame, I, D, Dp, counts, split, tw)
    return "accepted", doc


def _curve_task(args):
    cfg_json, field_key, ep_key, e_key = args
    cfg = SearchConfig(**cfg_json)
    F = make_field(*field_key)
    Ep = EllipticCurve(F, *(FieldElement(F, v) for v in ep_key))
    E = EllipticCurve(F, *(FieldElement(F, v) for v in e_key))
    return evaluate_curve(cfg, Ep, E)


class SearchRun:
    """Iterate to receive certificate documents in enumeration order.

    ``report`` holds the rejection counters; it is complete once the
    iteration finishes.
    """

    def __init__(self, cfg: SearchConfig, jobs: int = 1):
        self.cfg = cfg
        self.jobs = max(1, jobs)
        self.report = SearchReport(cfg)

    def _fields(self):
        cfg = self.cfg
        for a in range(cfg.min_base_degree, cfg.max_base_degree + 1):
            F = make_field(cfg.p, a)
            if cfg.paper_faithful and F.order % 4 != 1:
                self.report.fields_skipped.append(F.order)
                continue
            yield F

    def _results(self, F, Ep, curves):
        if self.jobs == 1:
            for E in curves:
                yield evaluate_curve(self.cfg, Ep, E)
            return
        tasks = [(self.cfg.to_json(), (F.p, F.degree), Ep.key(), E.key()) for E in curves]
        with ProcessPoolExecutor(self.jobs) as pool:
            yield from pool.map(_curve_task, tasks)

    def __iter__(self):
        cfg, rep = self.cfg, self.report
        for F in self._fields():
            Ep = select_E_prime(F)
            if Ep is None:
                rep.fields_without_E_prime.append(F.order)
                continue
            curves = class_representatives(F)
            for reason, outcomes in self._results(F, Ep, curves):
                rep.curves["examined"] += 1
                if reason is not None:
                    rep.curves[reason] += 1
                    continue
                for label, doc in outcomes:
                    if cfg.max_candidates is not None and rep.examined >= cfg.max_candidates:
                        rep.truncated = True
                        return
                    rep.examined += 1
                    if label == "accepted":
                        rep.accepted += 1
                        yield doc
                        if cfg.max_certificates is not None and rep.accepted >= cfg.max_certificates:
                            return
                    else:
                        rep.counters[label] += 1


def search(cfg: SearchConfig, jobs: int = 1) -> SearchRun:
    return SearchRun(cfg, jobs)


# -- verification ---------------------------------------------------------------

_ELEM = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_POLY = {"type": "array", "items": _ELEM}
_CURVE = {
    "type": "object",
    "required": ["a2", "a4", "a6"],
    "properties": {"a2": _ELEM, "a4": _ELEM, "a6": _ELEM},
    "additionalProperties": False,
}
_FIELD = {
    "type": "object",
    "required": ["p", "degree", "modulus"],
    "properties": {
        "p": {"type": "integer"},
        "degree": {"type": "integer", "minimum": 1},
        "modulus": {"type": ["array", "null"], "items": {"type": "integer"}},
    },
    "additionalProperties": False,
}
_INTS = {"type": "array", "items": {"type": "integer"}}
_MODEL = {
    "type": "object",
    "required": ["h", "genus"],
    "properties": {"h": _POLY, "genus": {"type": "integer"}},
    "additionalProperties": False,
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": [
        "schema", "artifact_version", "config", "field", "E_prime", "E_tilde", "E",
        "pairing", "kernel", "isogeny", "mobius", "c", "D", "D_prime", "counts",
        "split", "twist", "timestamp", "hash",
    ],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "artifact_version": {"type": "string"},
        "config": {
            "type": "object",
            "required": [
                "p", "ell", "max_base_degree", "paper_faithful", "max_candidates", "seed",
                "max_certificates", "allow_ell_equals_p", "min_base_degree",
            ],
            "additionalProperties": False,
            "properties": {
                "p": {"type": "integer"},
                "ell": {"type": "integer"},
                "max_base_degree": {"type": "integer"},
                "paper_faithful": {"type": "boolean"},
                "max_candidates": {"type": ["integer", "null"]},
                "seed": {"type": "integer"},
                "max_certificates": {"type": ["integer", "null"]},
                "allow_ell_equals_p": {"type": "boolean"},
                "min_base_degree": {"type": "integer"},
            },
        },
        "field": _FIELD,
        "E_prime": _CURVE,
        "E_tilde": _CURVE,
        "E": _CURVE,
        "pairing": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
        "kernel": {
            "type": "object",
            "required": ["poly", "chi", "chi_order"],
            "properties": {"poly": _POLY, "chi": {"type": "integer"}, "chi_order": {"type": "integer"}},
            "additionalProperties": False,
        },
        "isogeny": {
            "type": "object",
            "required": ["N", "M", "v_num", "v_den"],
            "properties": {"N": _POLY, "M": _POLY, "v_num": _POLY, "v_den": _POLY},
            "additionalProperties": False,
        },
        "mobius": {"type": "array", "items": _ELEM, "minItems": 4, "maxItems": 4},
        "c": _ELEM,
        "D": _MODEL,
        "D_prime": _MODEL,
        "counts": _INTS,
        "split": {
            "type": "object",
            "required": [
                "L_k", "ell", "K_degree", "L_K", "a", "q_K", "ordinary",
                "inert_shape_ok", "p_rank", "cartier_manin_rank",
            ],
            "additionalProperties": False,
            "properties": {
                "L_k": _INTS,
                "ell": {"type": "integer"},
                "K_degree": {"type": "integer"},
                "L_K": _INTS,
                "a": {"type": "integer"},
                "q_K": {"type": "integer"},
                "ordinary": {"type": "boolean"},
                "inert_shape_ok": {"type": "boolean"},
                "p_rank": {"type": "integer"},
                "cartier_manin_rank": {"type": "integer"},
            },
        },
        "twist": {
            "type": "object",
            "required": [
                "field", "factor_field", "factor", "A2", "A4", "A6", "j", "rank_bound",
                "split_reference",
            ],
            "additionalProperties": False,
            "properties": {
                "field": _FIELD,
                "factor_field": _FIELD,
                "factor": _CURVE,
                "A2": _POLY,
                "A4": _POLY,
                "A6": _POLY,
                "j": _ELEM,
                "rank_bound": {"type": "integer"},
                "split_reference": {"type": "string"},
            },
        },
        "timestamp": {"type": "string"},
        "hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
    },
}


def _path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def validate_schema(doc):
    """Raise SchemaError (with a JSON path) on structurally malformed input."""
    validator = jsonschema.Draft202012Validator(CERTIFICATE_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(_path(err.absolute_path), err.message)


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)  # (name, passed, detail)

    def add(self, name, passed, detail=""):
        self.checks.append((name, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [name for name, ok, _ in self.checks if not ok]

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks],
        }


def _decode(decoder, path, *args):
    try:
        return decoder(*args)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(path, str(exc)) from exc


def _lpoly(coeffs, q, g):
    return LPolynomial(tuple(coeffs), q, g)


def verify(doc) -> VerificationReport:
    """Re-derive every claim of a certificate from its inputs."""
    validate_schema(doc)
    rep = VerificationReport()
    rep.add("hash", canonical_hash(doc) == doc["hash"], "canonical sha256")

    cfg_doc = doc["config"]
    try:
        cfg = SearchConfig(**cfg_doc)
    except ConfigError as exc:
        raise SchemaError("$.config", str(exc)) from exc
    F = _decode(field_from_json, "$.field", doc["field"])
    p, ell = cfg.p, cfg.ell
    rep.add(
        "config matches field",
        F.p == p and cfg.min_base_degree <= F.degree <= cfg.max_base_degree,
    )
    g = (ell - 1) // 2

    # curves
    Ep = _decode(_curve_from_json, "$.E_prime", F, doc["E_prime"])
    Et = _decode(_curve_from_json, "$.E_tilde", F, doc["E_tilde"])
    E_claim = _decode(_curve_from_json, "$.E", F, doc["E"])
    rep.add("E_prime selection", select_E_prime(F) == Ep, "lexicographically first ordinary")
    rep.add(
        "E_tilde ordinary with full 2-torsion",
        trace_and_ordinary(Et)[1] and full_two_torsion(Et) is not None,
    )
    if cfg.paper_faithful:
        rep.add("paper-faithful filters", F.order % 4 == 1 and has_rational_four_torsion(Et))

    # kernel and isogeny
    ker = _decode(Polynomial.from_json, "$.kernel.poly", F, doc["kernel"]["poly"])
    try:
        K = kernel_data(Et, ell, ker, allow_ell_p=cfg.allow_ell_equals_p)
    except ValueError as exc:
        rep.add("kernel", False, str(exc))
        return rep
    rep.add("kernel", True)
    rep.add("frobenius character", K.chi == doc["kernel"]["chi"])
    rep.add("inert", K.point_field_degree == doc["kernel"]["chi_order"] and K.inert)
    I = velu(K)
    rep.add("velu codomain", I.codomain == E_claim)
    rep.add(
        "isogeny x-map",
        I.N.to_json() == doc["isogeny"]["N"] and I.M.to_json() == doc["isogeny"]["M"],
    )
    rep.add(
        "isogeny y-map",
        I.y_map_factor.num.to_json() == doc["isogeny"]["v_num"]
        and I.y_map_factor.den.to_json() == doc["isogeny"]["v_den"],
    )

    # frame and curves D, D'
    pairing = tuple(doc["pairing"])
    if sorted(pairing) != [0, 1, 2]:
        raise SchemaError("$.pairing", "not a permutation of 0, 1, 2")
    try:
        frame, deg = compute_frame(I, Ep, pairing)
    except TwoTorsionNotRational as exc:
        rep.add("mobius map", False, str(exc))
        return rep
    rep.add("mobius map", frame.mu.to_json() == doc["mobius"])
    if not rep.add("non-degenerate frame", not deg.flag and not frame.P_prime_on_two_torsion):
        return rep
    rep.add("P' abscissa", frame.P_prime.to_json() == doc["c"])
    try:
        D = build_D(I, frame)
        Dp = build_D_prime(I, frame)
    except NotSquarefreeDefect as exc:
        rep.add("h reconstruction", False, str(exc))
        return rep
    rep.add("h reconstruction", D.h.to_json() == doc["D"]["h"])
    rep.add("genus of D", D.genus == g == doc["D"]["genus"])
    rep.add("h' reconstruction", Dp.h.to_json() == doc["D_prime"]["h"])
    rep.add("genus of D'", Dp.genus == (ell + 1) // 2 == doc["D_prime"]["genus"])

    # point counts and L-polynomials
    counts = [count_points_hyperelliptic(D, m) for m in range(1, g + 1)]
    rep.add("point counts", counts == doc["counts"])
    L_k = lpoly_from_counts(counts, F.order, g)
    s = doc["split"]
    rep.add("L_k", list(L_k.coeffs) == s["L_k"])
    rep.add("functional equation", L_k.functional_equation_ok() and L_k.weil_ok())
    shape = inert_shape_check(L_k)
    rep.add("inert shape", shape and s["inert_shape_ok"] is True)
    L_K = base_change(L_k, ell - 1)
    rep.add("base change", list(L_K.coeffs) == s["L_K"] and s["K_degree"] == ell - 1)
    rep.add("K order", s["q_K"] == F.order ** (ell - 1) and s["ell"] == ell)
    try:
        claimed_LK = _lpoly(s["L_K"], s["q_K"], g)
        pw = power_of_elliptic(claimed_LK, g, p)
    except (ValueError, ZeroDivisionError):
        pw = None
    rep.add(
        "power_of_elliptic",
        pw is not None and pw["a"] == s["a"] and pw["q_K"] == s["q_K"],
    )
    rep.add("ordinary", pw is not None and pw["ordinary"] and s["ordinary"] is True)
    pr = p_rank(L_k, p)
    cm = cartier_manin(D)[1]
    rep.add("p-rank", pr == g == s["p_rank"])
    rep.add("Cartier-Manin rank", cm == pr == s["cartier_manin_rank"])

    # twist
    split = SplitCertificate(L_k, ell - 1, L_K, s["a"], s["q_K"], bool(s["ordinary"]), shape, pr, cm, ell)
    _verify_twist(rep, doc["twist"], D, split)
    return rep


def _verify_twist(rep, t, D: HyperellipticModel, split: SplitCertificate):
    try:
        rb = rank_bound(split)
    except ValueError as exc:
        rep.add("rank bound", False, str(exc))
        return
    rep.add("rank bound", rb.bound == t["rank_bound"] == split.L_over_k.g)
    rep.add("split reference", rb.provenance == t["split_reference"])
    base = D.base
    g = split.L_over_k.g
    Fg = _decode(field_from_json, "$.twist.factor_field", t["factor_field"])
    K = _decode(field_from_json, "$.twist.field", t["field"])
    if Fg.p != base.p or Fg.degree != base.degree * g or K != twist_field(base, split.ell):
        rep.add("twist fields", False)
        return
    rep.add("twist fields", True)
    B = _decode(_curve_from_json, "$.twist.factor", Fg, t["factor"])
    b = -split.L_over_k.coeffs[g]
    rep.add("elliptic factor trace", count_points(B) == Fg.order + 1 - b)
    BK = B.base_change(embedding(Fg, K))
    hK = embedding(base, K).poly(D.h)
    T = make_twist(BK, hK)
    rep.add(
        "twist coefficients",
        [T.A2.to_json(), T.A4.to_json(), T.A6.to_json()] == [t["A2"], t["A4"], t["A6"]],
    )
    j = T.constant_j()
    rep.add("constant j", j is not None and j == BK.j_invariant() and j.to_json() == t["j"])
    rep.add("nonconstant discriminant", T.discriminant().degree >= 1)
    rep.add("isomorphic over K(D)", becomes_isomorphic_over_extension(T, BK, hK))


def tamper_paths(doc, prefix=()):
    """Every leaf path of a certificate, excluding the unhashed timestamp."""
    if isinstance(doc, dict):
        for k in sorted(doc):
            if prefix == () and k == "timestamp":
                continue
            yield from tamper_paths(doc[k], prefix + (k,))
    elif isinstance(doc, list) and doc:
        for i, v in enumerate(doc):
            yield from tamper_paths(v, prefix + (i,))
    else:
        yield prefix


def mutate(doc, path, rng):
    """Copy of doc with the leaf at path changed to a different value."""
    out = copy.deepcopy(doc)
    node = out
    for k in path[:-1]:
        node = node[k]
    leaf = node[path[-1]]
    if isinstance(leaf, bool):
        new = not leaf
    elif isinstance(leaf, int):
        new = leaf + rng.choice([-2, -1, 1, 2, 7])
    elif isinstance(leaf, str):
        new = leaf[:-1] + ("0" if leaf[-1:] != "0" else "1") if leaf else "x"
    elif leaf is None:
        new = 1
    else:
        new = None
    node[path[-1]] = new
    return out
