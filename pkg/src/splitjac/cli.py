"""Command-line interface: search, verify, construct, zeta, twist.

Field elements on the command line are packed integers sum(c_i * p^i) in
the canonical basis; polynomials are comma-separated little-endian lists of
such integers.  Exit status: 0 success, 1 verification failure, 2 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .construct import PAIRINGS, NotSquarefreeDefect, build_D, build_D_prime, compute_frame
from .elliptic import EllipticCurve
from .finite_field import FieldElement, Polynomial, make_field
from .isogeny import kernel_data, velu
from .pipeline import (
    ConfigError,
    SchemaError,
    SearchConfig,
    build_certificate,
    search,
    select_E_prime,
    verify,
)
from .twist import FactorNotFound, build_twist
from .construct import HyperellipticModel
from .zeta import cartier_manin, lpolynomial, p_rank, split_certificate


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _field(p: int, degree: int):
    try:
        return make_field(p, degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _poly(F, text):
    cs = _ints(text)
    if any(not 0 <= c < F.order for c in cs):
        raise UsageError("polynomial coefficient outside the field")
    return Polynomial._raw(F, cs)


def _curve(F, text):
    cs = _ints(text)
    if len(cs) != 3 or any(not 0 <= c < F.order for c in cs):
        raise UsageError("a curve is given as a2,a4,a6")
    try:
        return EllipticCurve(F, *(FieldElement(F, c) for c in cs))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _write_json(doc, out: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# -- subcommands -----------------------------------------------------------------

def cmd_search(args) -> int:
    try:
        cfg = SearchConfig(
            p=args.p,
            ell=args.ell,
            max_base_degree=args.max_base_degree,
            min_base_degree=args.min_base_degree,
            paper_faithful=args.paper_faithful,
            max_candidates=args.max_candidates,
            seed=args.seed,
            max_certificates=args.max_certificates,
            allow_ell_equals_p=args.allow_ell_equals_p,
        )
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    run = search(cfg, jobs=args.jobs)
    written = []
    for doc in run:
        q = doc["field"]["p"] ** doc["field"]["degree"]
        name = f"p{cfg.p}_l{cfg.ell}_q{q}_{len(written) + 1:04d}.json"
        if out:
            (out / name).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        written.append((name, q, doc["split"]["a"], doc["hash"][:16]))
    rep = run.report
    print(f"{'certificate':<32} {'q':>8} {'a':>14}  hash")
    for name, q, a, h in written:
        print(f"{name:<32} {q:>8} {a:>14}  {h}")
    print(f"examined {rep.examined} candidates, accepted {rep.accepted}")
    for k, v in rep.counters.items():
        print(f"  {k:<24} {v}")
    for k, v in rep.curves.items():
        print(f"  curves.{k:<17} {v}")
    if not rep.found:
        print(rep.advice())
    if args.report:
        _write_json(rep.to_json(), args.report)
    return 0


def _load(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError("$", f"cannot read {path}: {exc}") from exc


def cmd_verify(args) -> int:
    status = 0
    for path in args.files:
        try:
            rep = verify(_load(path))
        except SchemaError as exc:
            print(f"{path}: schema error at {exc}")
            status = 1
            continue
        for name, ok, detail in rep.checks:
            line = f"  [{'pass' if ok else 'FAIL'}] {name}"
            if detail and not ok:
                line += f" ({detail})"
            print(line)
        print(f"{path}: {'OK' if rep.passed else 'FAILED'}")
        if not rep.passed:
            status = 1
    return status


def cmd_construct(args) -> int:
    F = _field(args.p, args.degree)
    Et = _curve(F, args.E_tilde)
    Ep = _curve(F, args.E_prime) if args.E_prime else select_E_prime(F)
    if Ep is None:
        raise UsageError("no ordinary curve with full 2-torsion over this field")
    pairing = tuple(_ints(args.pairing))
    if pairing not in PAIRINGS:
        raise UsageError("pairing must be a permutation of 0,1,2")
    try:
        K = kernel_data(Et, args.ell, _poly(F, args.kernel), allow_ell_p=args.allow_ell_equals_p)
        I = velu(K)
        frame, deg = compute_frame(I, Ep, pairing)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {
        "E": I.codomain.key(),
        "chi": K.chi,
        "chi_order": K.point_field_degree,
        "inert": K.inert,
        "degenerate": deg.flag,
    }
    if deg.flag:
        doc["note"] = deg.description
        _write_json(doc, args.out)
        return 0
    try:
        D = build_D(I, frame)
        Dp = build_D_prime(I, frame)
    except NotSquarefreeDefect as exc:
        doc["defect"] = str(exc)
        _write_json(doc, args.out)
        return 0
    split, reason = split_certificate(D, args.ell)
    doc.update(
        {
            "c": frame.P_prime.value,
            "h": list(D.h.coeffs),
            "h_prime": list(Dp.h.coeffs),
            "genus_D": D.genus,
            "genus_D_prime": Dp.genus,
            "split": split.to_json() if split else reason,
        }
    )
    if args.certify:
        if split is None or not (K.inert and split.inert_shape_ok and split.ordinary):
            doc["certificate"] = "candidate does not pass the filters"
        else:
            try:
                cfg = SearchConfig(
                    p=args.p,
                    ell=args.ell,
                    max_base_degree=args.degree,
                    min_base_degree=args.degree,
                    allow_ell_equals_p=args.allow_ell_equals_p,
                )
                tw = build_twist(D, split)
            except (ConfigError, FactorNotFound) as exc:
                raise UsageError(str(exc)) from exc
            counts = split.L_over_k.counts()
            doc["certificate"] = build_certificate(cfg, Ep, K, pairing, frame, I, D, Dp, counts, split, tw)
    _write_json(doc, args.out)
    return 0


def cmd_zeta(args) -> int:
    F = _field(args.p, args.degree)
    try:
        H = HyperellipticModel(F, _poly(F, args.h))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    L, counts = lpolynomial(H)
    print(f"field    GF({F.p}^{F.degree})")
    print(f"genus    {H.genus}")
    print(f"counts   {counts}")
    print(f"L        {list(L.coeffs)}")
    print(f"p-rank   {p_rank(L, F.p)}")
    print(f"CM rank  {cartier_manin(H)[1]}")
    return 0


def cmd_twist(args) -> int:
    try:
        doc = _load(args.certificate)
        rep = verify(doc)
    except SchemaError as exc:
        print(f"schema error at {exc}", file=sys.stderr)
        return 1
    if not rep.passed:
        print("certificate fails verification: " + ", ".join(rep.failures()), file=sys.stderr)
        return 1
    t = doc["twist"]
    out = {
        "K": t["field"],
        "A2": t["A2"],
        "A4": t["A4"],
        "A6": t["A6"],
        "j": t["j"],
        "rank_bound": t["rank_bound"],
        "certificate": doc["hash"],
    }
    _write_json(out, args.out)
    return 0


# -- parser ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="splitjac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("search", help="search for certificates")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--max-base-degree", type=int, default=2)
    s.add_argument("--min-base-degree", type=int, default=1)
    s.add_argument("--paper-faithful", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--max-candidates", type=int)
    s.add_argument("--max-certificates", type=int, help="stop after this many certificates")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--allow-ell-equals-p", action="store_true")
    s.add_argument("--report", help="write the rejection report as JSON")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="re-verify certificate files")
    v.add_argument("files", nargs="+")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="build D and D' from an explicit curve and kernel")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--degree", type=int, default=1)
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--E-tilde", required=True, help="a2,a4,a6 of the curve carrying the kernel")
    c.add_argument("--kernel", required=True, help="kernel polynomial, little-endian")
    c.add_argument("--E-prime", help="a2,a4,a6 (default: lexicographically first)")
    c.add_argument("--pairing", default="0,1,2")
    c.add_argument("--allow-ell-equals-p", action="store_true")
    c.add_argument("--certify", action="store_true", help="also emit a certificate")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    z = sub.add_parser("zeta", help="point counts and L-polynomial of y^2 = h(x)")
    z.add_argument("--h", required=True)
    z.add_argument("--p", type=int, required=True)
    z.add_argument("--degree", type=int, default=1)
    z.set_defaults(func=cmd_zeta)

    t = sub.add_parser("twist", help="emit the function-field twist of a certificate")
    t.add_argument("certificate")
    t.add_argument("--out")
    t.set_defaults(func=cmd_twist)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"splitjac: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
