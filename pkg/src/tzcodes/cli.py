"""Command-line front end.

Every command prints one JSON report to stdout (and to ``--json PATH`` when
given).  Counts are decimal strings and every number that comes from a
computation carries a ``source`` tag.  Exit status: 0 when every requested
verification matched, 1 when one did not, 2 for invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from dataclasses import dataclass
from math import gcd

from . import counts as cnt
from .construct import (EVEN_M_REMARK, FamilyParams, FormulaError, InvalidParameters, build_Ce,
                        build_extended_augmented, predicted_dual_low_weights, predicted_wd_base,
                        predicted_wd_extended, predicted_wd_shortened)
from .designs import (DesignFailure, blocks_from_code, design_identity_holds,
                      predicted_lambda_dual8, predicted_lambda_min_weight, verify_t_design)
from .fixtures import SCOPES, run_fixture, select, shortened_prediction
from .gf2m import FieldError, FieldSpec, get_field
from .lincode import (EnumerationGuardError, WeightDistribution, dual, enumerate_weight_distribution,
                      macwilliams_dual_distribution, shorten)

ENUMERATED, CLOSED_FORM = "enumerated", "closed-form"


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    m: int
    e: int
    modulus: int | None
    generator: int | None
    guard: int | None
    threads: int
    json_path: str | None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        modulus = None
        if args.modulus is not None:
            try:
                modulus = int(args.modulus, 16)
            except ValueError:
                raise UsageError(f"--modulus must be hex, got {args.modulus!r}") from None
        generator = None
        if args.generator is not None:
            try:
                generator = int(args.generator, 0)
            except ValueError:
                raise UsageError(f"--generator must be an integer bit pattern, got {args.generator!r}") from None
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return cls(args.m, args.e, modulus, generator, args.guard, args.threads, args.json)

    @property
    def field(self) -> FieldSpec:
        return get_field(self.m, self.modulus, self.generator)

    @property
    def params(self) -> FamilyParams:
        return FamilyParams(self.m, self.e)

    def header(self, with_e: bool = True) -> dict:
        F = self.field
        out = {"m": self.m}
        if with_e:
            out["e"] = self.e
        out.update(modulus=f"{F.modulus:#x}", generator=f"{F.generator:#x}")
        return out


def _wd(wd: WeightDistribution, source: str, **extra) -> dict:
    out = wd.to_dict()
    out["source"] = source
    out.update(extra)
    return out


def _code(cfg: RunConfig, extended: bool):
    cfg.params
    F = cfg.field
    return build_extended_augmented(F, cfg.e) if extended else build_Ce(F, cfg.e)


def _predicted(cfg: RunConfig, extended: bool) -> tuple[WeightDistribution | None, str | None]:
    try:
        wd = predicted_wd_extended(cfg.m, cfg.e) if extended else predicted_wd_base(cfg.m, cfg.e)
    except (FormulaError, InvalidParameters, ValueError) as exc:
        return None, str(exc)
    return wd, None


def _positions(cfg: RunConfig, code, tokens: list[str]) -> list[int]:
    F = cfg.field
    out = []
    for tok in tokens:
        x = F.parse(tok)
        if x not in code.coordinate_labels:
            raise UsageError(f"{tok} is not a coordinate of {code!r}")
        out.append(code.position(x))
    if len(set(out)) != len(out):
        raise UsageError("T has repeated elements")
    return out


def _split_T(value: str | None) -> list[str]:
    if value is None:
        return []
    return [t.strip() for t in value.split(",") if t.strip()]


# -- commands -----------------------------------------------------------------------------


def cmd_build(cfg: RunConfig, args) -> tuple[dict, bool]:
    code = _code(cfg, args.extended)
    report = cfg.header()
    report.update(code="extended-augmented" if args.extended else "cyclic", n=code.n, k=code.k)
    ok = True
    predicted, reason = _predicted(cfg, args.extended)
    if predicted is not None:
        report["predicted"] = _wd(predicted, CLOSED_FORM)
    else:
        report["predicted_unavailable"] = reason
    if args.enumerate:
        wd = enumerate_weight_distribution(code, cfg.guard, cfg.threads)
        report["d"] = wd.min_distance
        report["distribution"] = _wd(wd, ENUMERATED)
        if predicted is not None:
            report["matches"] = ok = wd == predicted
    return report, ok


def cmd_shorten(cfg: RunConfig, args) -> tuple[dict, bool]:
    code = _code(cfg, args.extended)
    tokens = _split_T(args.T)
    if not tokens:
        raise UsageError("shorten needs --T")
    positions = _positions(cfg, code, tokens)
    short = shorten(code, positions)
    wd = enumerate_weight_distribution(short, cfg.guard, cfg.threads)
    report = cfg.header()
    report.update(code="extended-augmented" if args.extended else "cyclic", T=tokens,
                  n=short.n, k=short.k, d=wd.min_distance, distribution=_wd(wd, ENUMERATED))
    ok = True
    t = len(tokens)
    if args.extended or t > 4:
        report["predicted_unavailable"] = "closed forms cover the cyclic code with #T <= 4"
    elif cfg.m % 2 == 0:
        report["predicted_unavailable"] = EVEN_M_REMARK
    elif gcd(cfg.m, cfg.e) != 1:
        report["predicted_unavailable"] = "closed forms assume gcd(m, e) = 1"
    else:
        T = [cfg.field.parse(tok) for tok in tokens]
        if 0 in T:
            raise UsageError("0 is not a coordinate of the cyclic code")
        predicted, info = shortened_prediction(cfg.m, cfg.e, T)
        counts_info = {k: (v if v is None else str(v)) for k, v in info.items()}
        if counts_info:
            counts_info["source"] = cnt.FORMULA
            report["counts"] = counts_info
        report["predicted"] = _wd(predicted, CLOSED_FORM)
        ok = wd == predicted
        report["verdict"] = "match" if ok else "mismatch"
    return report, ok


def cmd_dual(cfg: RunConfig, args) -> tuple[dict, bool]:
    code = _code(cfg, args.extended)
    report = cfg.header()
    report.update(code="dual of " + ("extended-augmented" if args.extended else "cyclic"),
                  n=code.n, k=code.n - code.k)
    primal = enumerate_weight_distribution(code, cfg.guard, cfg.threads)
    transformed = macwilliams_dual_distribution(primal)
    report["distribution"] = _wd(transformed, ENUMERATED, via="macwilliams")
    report["d"] = transformed.min_distance
    ok = True
    if args.extended:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                low = predicted_dual_low_weights(cfg.m, cfg.params.d, strict=False)
            except FormulaError as exc:
                low = None
                report["predicted_unavailable"] = str(exc)
        if low is not None:
            integral = {w: v for w, v in low.items() if isinstance(v, int)}
            report["predicted_low_weights"] = {"counts": {str(w): str(v) for w, v in low.items()},
                                               "source": CLOSED_FORM}
            mismatched = [w for w, v in low.items() if v != transformed[w]]
            report["predicted_low_weights"]["mismatched"] = [str(w) for w in mismatched]
            ok = not mismatched and len(integral) == len(low)
    if args.enumerate:
        direct = enumerate_weight_distribution(dual(code), cfg.guard, cfg.threads)
        report["enumerated"] = _wd(direct, ENUMERATED)
        ok = ok and direct == transformed
    return report, ok


def cmd_wdist(cfg: RunConfig, args) -> tuple[dict, bool]:
    code = _code(cfg, args.extended)
    tokens = _split_T(args.T)
    if tokens:
        code = shorten(code, _positions(cfg, code, tokens))
    if args.dual:
        code = dual(code)
    wd = enumerate_weight_distribution(code, cfg.guard, cfg.threads)
    return _wd(wd, ENUMERATED), True


def _element(cfg: RunConfig, value: str) -> int:
    return cfg.field.parse(value)


def cmd_counts(cfg: RunConfig, args) -> tuple[dict, bool]:
    F = cfg.field
    report = cfg.header(with_e=False)
    report["quantity"] = args.quantity
    what = args.quantity
    if what in ("kloosterman", "cubic-c", "cubic-g"):
        a = _element(cfg, args.a)
        if what == "kloosterman":
            value, inputs = cnt.kloosterman(F, a), {"a": F.format(a)}
        else:
            b = _element(cfg, args.b)
            fn = cnt.cubic_sum_C if what == "cubic-c" else cnt.cubic_sum_G
            value, inputs = fn(F, a, b), {"a": F.format(a), "b": F.format(b)}
        report.update(inputs=inputs, value=str(value), source=cnt.BRUTE)
        return report, True
    if what == "lambda":
        code = _code(cfg, args.extended)
        if args.dual:
            code = dual(code)
        tokens = _split_T(args.T)
        value = cnt.lambda_T_w(code, _positions(cfg, code, tokens), args.w, cfg.guard)
        report.update(e=cfg.e, code=("dual of " if args.dual else "") +
                      ("extended-augmented" if args.extended else "cyclic"),
                      T=tokens, w=args.w, value=str(value), source=ENUMERATED)
        return report, True
    method = args.method
    if what == "quadruple":
        r = cnt.quadruple_count(F, _element(cfg, args.a), _element(cfg, args.b), _element(cfg, args.c), method)
    elif what == "zero-a":
        r = cnt.zero_a_quadruple_count(F, _element(cfg, args.b), _element(cfg, args.c), method)
    else:
        T = F.parse_many(_split_T(args.T))
        if what == "n-of-triple":
            r = cnt.n_of_triple(cnt.TripleSpec(F, T), method)
        elif what == "nbar":
            r = cnt.nbar_of_quad(cnt.QuadSpec(F, T), method)
        else:
            r = cnt.combined_N_t4(cnt.QuadSpec(F, T), method)
    report.update(r.to_dict())
    return report, r.agrees is not False


def cmd_design_verify(cfg: RunConfig, args) -> tuple[dict, bool]:
    code = _code(cfg, not args.cyclic)
    if args.dual:
        code = dual(code)
    design = blocks_from_code(code, args.w, cfg.guard)
    report = cfg.header()
    report["code"] = ("dual of " if args.dual else "") + ("cyclic" if args.cyclic else "extended-augmented")
    if design.b == 0:
        raise UsageError(f"no codewords of weight {args.w}")
    result = verify_t_design(design, args.t, args.method)
    if isinstance(result, DesignFailure):
        report["design"] = {"v": design.v, "k": design.k, "t": args.t, "verified": False,
                            "b": design.b, **result.to_dict(), "source": ENUMERATED}
        return report, False
    report["design"] = design.to_dict(include_blocks=args.blocks)
    report["design"]["source"] = ENUMERATED
    identity = design_identity_holds(design)
    report["identity_holds"] = identity
    ok = identity
    predicted = None
    if not args.cyclic and cfg.m % 2 == 1 and gcd(cfg.m, cfg.e) == 1 and args.t == 3:
        if not args.dual and args.w == 2 ** (cfg.m - 1) - 2 ** ((cfg.m + 1) // 2):
            predicted = predicted_lambda_min_weight(cfg.m)
        elif args.dual and args.w == 8:
            predicted = predicted_lambda_dual8(cfg.m)
    if predicted is not None:
        report["predicted_lambda"] = {"value": str(predicted), "source": CLOSED_FORM}
        ok = ok and predicted == result
    return report, ok


def cmd_predict(cfg: RunConfig, args) -> tuple[dict, bool]:
    report = cfg.header(with_e=args.table != "shortened")
    report["table"] = args.table
    if args.table == "base":
        report["distribution"] = _wd(predicted_wd_base(cfg.m, cfg.e), CLOSED_FORM)
    elif args.table == "extended":
        report["distribution"] = _wd(predicted_wd_extended(cfg.m, cfg.e), CLOSED_FORM)
    elif args.table == "dual-low":
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            low = predicted_dual_low_weights(cfg.m, cfg.params.d, strict=False)
        report["counts"] = {str(w): str(v) for w, v in low.items()}
        report["source"] = CLOSED_FORM
        if caught:
            report["warnings"] = [str(w.message) for w in caught]
    elif args.table == "shortened":
        if args.t is None:
            raise UsageError("--table shortened needs --t")
        wd = predicted_wd_shortened(cfg.m, args.t, args.N, args.Nbar, args.trace_one)
        report["t"] = args.t
        report["distribution"] = _wd(wd, CLOSED_FORM)
    else:
        report["lambda_min_weight"] = str(predicted_lambda_min_weight(cfg.m))
        report["lambda_dual_weight8"] = str(predicted_lambda_dual8(cfg.m))
        report["source"] = CLOSED_FORM
    return report, True


def cmd_verify_examples(cfg: RunConfig, args) -> tuple[dict, bool]:
    results = []
    for fixture in select(args.scope):
        res = run_fixture(fixture)
        print(f"{'PASS' if res.passed else 'FAIL'} {res.name}", file=sys.stderr)
        results.append(res.to_dict())
    failed = [r["name"] for r in results if not r["passed"]]
    report = {"scope": args.scope, "total": len(results), "passed": len(results) - len(failed),
              "failed": failed, "fixtures": results}
    return report, not failed


COMMANDS = {
    "build": cmd_build, "shorten": cmd_shorten, "dual": cmd_dual, "wdist": cmd_wdist,
    "counts": cmd_counts, "design-verify": cmd_design_verify, "predict": cmd_predict,
    "verify-examples": cmd_verify_examples,
}


# -- parser -------------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--m", type=int, default=5, help="field degree (default 5)")
    g.add_argument("--e", type=int, default=1, help="family parameter e (default 1)")
    g.add_argument("--modulus", help="defining polynomial in hex, e.g. 0x25")
    g.add_argument("--generator", help="primitive element as a bit pattern (default: smallest)")
    g.add_argument("--guard", type=int, help="largest dimension allowed for exhaustive enumeration")
    g.add_argument("--json", metavar="PATH", help="also write the report to PATH")
    g.add_argument("--threads", type=int, default=1, help="enumeration worker threads")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="tzcodes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="construct C^(e) or its extended augmented code")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--enumerate", action="store_true", help="enumerate and compare with the closed form")

    p = sub.add_parser("shorten", parents=[common], help="shorten on T and compare with the closed form")
    p.add_argument("--T", required=True, help='comma-separated "w^k" tokens or 0')
    p.add_argument("--extended", action="store_true")

    p = sub.add_parser("dual", parents=[common], help="dual distribution via MacWilliams")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--enumerate", action="store_true", help="also enumerate the dual directly")

    p = sub.add_parser("wdist", parents=[common], help="enumerated weight distribution")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--dual", action="store_true")
    p.add_argument("--T", help="shorten on T first")

    p = sub.add_parser("counts", help="exponential sums and subset counts")
    qsub = p.add_subparsers(dest="quantity", required=True)
    for name, fields in (("kloosterman", "a"), ("cubic-c", "ab"), ("cubic-g", "ab"),
                         ("quadruple", "abc"), ("zero-a", "bc")):
        q = qsub.add_parser(name, parents=[common])
        for f in fields:
            q.add_argument(f"--{f}", required=True)
        if name in ("quadruple", "zero-a"):
            q.add_argument("--method", choices=[cnt.FORMULA, cnt.BRUTE, "both"], default="both")
    for name in ("n-of-triple", "nbar", "combined-n"):
        q = qsub.add_parser(name, parents=[common])
        q.add_argument("--T", required=True)
        q.add_argument("--method", choices=[cnt.FORMULA, cnt.BRUTE, "both"], default="both")
    q = qsub.add_parser("lambda", parents=[common], help="weight-w codewords whose support contains T")
    q.add_argument("--T", required=True)
    q.add_argument("--w", type=int, required=True)
    q.add_argument("--dual", action="store_true")
    q.add_argument("--extended", action="store_true")

    p = sub.add_parser("design-verify", parents=[common], help="check that weight-w supports form a t-design")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--dual", action="store_true")
    p.add_argument("--cyclic", action="store_true", help="use C^(e) instead of the extended code")
    p.add_argument("--method", choices=["auto", "tuples", "gram"], default="auto")
    p.add_argument("--blocks", action="store_true", help="include the blocks in the report")

    p = sub.add_parser("predict", parents=[common], help="evaluate a closed form")
    p.add_argument("--table", choices=["base", "extended", "dual-low", "shortened", "lambda"], required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--Nbar", type=int)
    p.add_argument("--trace-one", action="store_true")

    p = sub.add_parser("verify-examples", parents=[common], help="run the embedded example fixtures")
    p.add_argument("--scope", choices=("all",) + SCOPES, default="all")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        cfg.field
        report, ok = COMMANDS[args.command](cfg, args)
    except (UsageError, FieldError, InvalidParameters, FormulaError, EnumerationGuardError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2) + "\n"
    sys.stdout.write(text)
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            fh.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
