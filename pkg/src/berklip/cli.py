"""Batch command line front end.

Commands: invariants | bounds | profile | sample | verify, each reading a
map file (see serialize) and emitting JSON (default) or a plain table.
Output is byte-deterministic given the input file, options and seed.

Exit codes: 0 success, 1 parse error, 2 degenerate map, 3 factored form
required, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .berk import berk_equal, diam_gauss, gauss_point, push_forward
from .errors import (
    BerkError,
    DegenerateMapError,
    FactoredFormRequiredError,
    ParseError,
)
from .invariants import bundle, gpr, rp_ord
from .lipschitz import (
    bound_report,
    mobius_exact,
    radial_profile,
    resultant_bounds,
    sample_ratios,
)
from .ratmap import (
    RationalMap,
    gir_minors,
    normalize,
    resultant_ord,
    resultant_ord_product,
)
from .serialize import (
    bundle_json,
    parse_map_data,
    ppow_json,
    profile_json,
    report_json,
)
from .valued import parse_fraction, ppow_compare

__all__ = ["RunConfig", "run", "main"]


@dataclass
class RunConfig:
    command: str
    input: str
    p: int | None = None
    seed: int = 0
    n: int = 1000
    center: str = "0"
    tmin: str = "0"
    b0_ord: str | None = None
    fmt: str = "json"


def _load_map(cfg: RunConfig) -> RationalMap:
    try:
        text = Path(cfg.input).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {cfg.input}: {e}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {cfg.input}: {e}") from None
    return parse_map_data(data, cfg.p)


def _emit(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2)
    lines = []

    def walk(prefix: str, val):
        if isinstance(val, dict):
            for k in sorted(val):
                walk(f"{prefix}{k}.", val[k])
        elif isinstance(val, list):
            lines.append(f"{prefix[:-1]:<40} {val}")
        else:
            lines.append(f"{prefix[:-1]:<40} {val}")

    walk("", obj)
    return "\n".join(lines)


def _verify_checks(m: RationalMap, cfg: RunConfig):
    """Per-map property suite for the verify command."""
    checks = []

    def add(name, fn):
        try:
            fn()
            checks.append((name, True, ""))
        except BerkError as e:
            checks.append((name, False, str(e)))
        except AssertionError as e:
            checks.append((name, False, str(e)))

    def chain():
        bundle(m)  # raises on any violated inequality

    def norm_idempotent():
        n1 = normalize(m)
        n2 = normalize(n1)
        assert n1.f == n2.f and n1.g == n2.g, "normalize not idempotent"

    def gir_push():
        img = push_forward(m, gauss_point())
        assert diam_gauss(m.p, img) == gir_minors(m), "gir minors disagree with image"

    add("invariant-chain", chain)
    add("normalize-idempotent", norm_idempotent)
    add("gir-matches-pushforward", gir_push)

    if m.factored is not None:

        def res_product():
            assert resultant_ord(m) == resultant_ord_product(m), "resultant mismatch"

        def gpr_verified():
            res = gpr(m)
            assert berk_equal(
                m.p, push_forward(m, res.argmin), gauss_point()
            ), "gpr argmin does not map to the Gauss point"

        def rp_vs_res():
            assert rp_ord(m) <= resultant_ord(m), "RP below |Res|"

        def sampled():
            sample_ratios(m, max(cfg.n, 1), cfg.seed)  # raises if bound exceeded

        add("resultant-product-agrees", res_product)
        add("gpr-argmin-verified", gpr_verified)
        add("rp-dominates-resultant", rp_vs_res)
        add("sampled-ratios-bounded", sampled)
    else:

        def sampled_res_bound():
            cl, _ = resultant_bounds(m)
            s, _ = sample_ratios(m, max(cfg.n, 1), cfg.seed)
            assert ppow_compare(m.p, s, cl) <= 0, "sample exceeded resultant bound"

        add("sampled-ratios-bounded", sampled_res_bound)

    if m.d == 1:
        add("mobius-constants-agree", lambda: mobius_exact(m))
    return checks


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    m = _load_map(cfg)
    if cfg.command == "invariants":
        print(_emit(bundle_json(bundle(m)), cfg.fmt))
        return 0
    if cfg.command == "bounds":
        if m.factored is None:
            raise FactoredFormRequiredError("factored form required")
        b0 = parse_fraction(cfg.b0_ord) if cfg.b0_ord is not None else None
        rep = bound_report(m, n=cfg.n, seed=cfg.seed, b0_ord=b0)
        print(_emit(report_json(rep), cfg.fmt))
        return 0
    if cfg.command == "profile":
        pr = radial_profile(m, parse_fraction(cfg.center), parse_fraction(cfg.tmin))
        print(_emit(profile_json(pr), cfg.fmt))
        return 0
    if cfg.command == "sample":
        s, pair = sample_ratios(m, cfg.n, cfg.seed)
        obj = {
            "p": m.p,
            "n": cfg.n,
            "seed": cfg.seed,
            "max_ratio": ppow_json(m.p, s),
            "witness": None if pair is None else [str(pair[0]), str(pair[1])],
        }
        print(_emit(obj, cfg.fmt))
        return 0
    if cfg.command == "verify":
        checks = _verify_checks(m, cfg)
        ok = True
        for name, passed, detail in checks:
            tag = "PASS" if passed else "FAIL"
            suffix = f": {detail}" if detail and not passed else ""
            print(f"{tag} {name}{suffix}")
        ok = all(passed for _, passed, _ in checks)
        return 0 if ok else 4
    raise ParseError(f"unknown command {cfg.command!r}")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="berklip",
        description="Exact invariants and Lipschitz bounds of rational maps "
        "over a p-adically valued field.",
    )
    ap.add_argument(
        "command",
        choices=["invariants", "bounds", "profile", "sample", "verify"],
    )
    ap.add_argument("--input", required=True, help="map file (JSON)")
    ap.add_argument("--p", type=int, default=None, help="prime; must match the file")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n", type=int, default=1000, help="sample count")
    ap.add_argument("--center", default="0", help="profile ray center (rational)")
    ap.add_argument("--tmin", default="0", help="profile top radius exponent")
    ap.add_argument("--b0-ord", dest="b0_ord", default=None,
                    help="user ball-radius exponent for the invariant bound")
    ap.add_argument("--format", dest="fmt", choices=["json", "table"], default="json")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        p=args.p,
        seed=args.seed,
        n=args.n,
        center=args.center,
        tmin=args.tmin,
        b0_ord=args.b0_ord,
        fmt=args.fmt,
    )
    try:
        return run(cfg)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except DegenerateMapError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FactoredFormRequiredError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
