"""Command-line front end.

Subcommands::

    pushforward --q 2 --r 1 --N 2 --k 0 [--substitute-t]
    gb --ideal FILE [--vars "x,y~"] [--order grevlex|block] [--primes 2,3,5]
    ring --name m2|bg|delta1|complement|mbar2 [--output json|text]
    verify-all [--primes 2,3,5,7,11,13] [--appendix]

Exit status: 0 when every requested check passes, 1 on a mismatch with a
reference value, 2 on a usage or input error, 3 when the step budget runs
out.  JSON output is written with sorted keys and carries no timings, so
identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from dataclasses import dataclass

from .fixtures import FixtureError, set_fixture_file
from .groebner import (
    DEFAULT_PRIMES,
    DEFAULT_STEP_BUDGET,
    InfiniteRankError,
    PolynomializedRing,
    StepBudgetExceeded,
    quotient_report,
    strong_gb,
)
from .laurent import VariableAlphabet, parse_polynomial
from .moduli import (
    build_k0_bg,
    build_k0_complement,
    build_k0_delta1,
    build_k0_m2,
    build_k0_mbar2,
    verify_transcribed_bases,
)
from .pushforward import pushforward_on_moduli_chart, pushforward_power_map

__all__ = ["RunConfig", "run", "main", "build_parser"]

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "K0GENUS2_STEP_BUDGET"

RING_NAMES = {"m2": "M2", "bg": "BG", "delta1": "Delta1", "complement": "Complement", "mbar2": "Mbar2"}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    q: int | None = None
    r: int | None = None
    N: int | None = None
    k: int | None = None
    substitute_t: bool = False
    ring: str | None = None
    ideal: str | None = None
    variables: str | None = None
    order: str = "grevlex"
    primes: tuple = tuple(DEFAULT_PRIMES)
    output: str = "text"
    budget: int = DEFAULT_STEP_BUDGET
    out_path: str | None = None
    appendix: bool = False
    fixtures: str | None = None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _primes(text: str) -> tuple:
    try:
        ps = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    bad = [p for p in ps if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1))]
    if not ps or bad:
        raise argparse.ArgumentTypeError(f"not a list of primes: {text!r}")
    return ps


# ---------------------------------------------------------------------------
# builders

def _build_rings(names, primes) -> dict:
    out = {}
    if "M2" in names:
        out["M2"] = build_k0_m2(primes)
    if "BG" in names:
        out["BG"] = build_k0_bg(primes)
    if "Delta1" in names or "Mbar2" in names:
        out["Delta1"] = build_k0_delta1(primes)
    if "Complement" in names or "Mbar2" in names:
        out["Complement"] = build_k0_complement(primes)
    if "Mbar2" in names:
        out["Mbar2"] = build_k0_mbar2(primes, out["Delta1"], out["Complement"])
    return {k: v for k, v in out.items() if k in names}


def _ring_text(ring) -> list[str]:
    rep = ring.report
    lines = [f"ring {ring.name}: {'ok' if ring.ok else 'MISMATCH'} ({ring.seconds:.2f} s)"]
    lines.append(f"  variables: {', '.join(ring.presentation.alphabet.names)}"
                 f" (invertible: {', '.join(ring.presentation.alphabet.invertible) or 'none'})")
    lines.append(f"  relations: {len(ring.presentation.relations)}")
    for r in ring.presentation.relations:
        s = str(r)
        lines.append(f"    {s if len(s) <= 100 else s[:97] + '...'}")
    if rep is not None:
        lines.append(f"  rank_Q: {rep.rank_Q}  free: {rep.free}")
        lines.append("  rank mod p: " + ", ".join(f"{p}: {r}" for p, r in sorted(rep.rank_mod_p.items())))
        if rep.basis:
            lines.append(f"  basis: {', '.join(rep.basis)}")
    else:
        lines.append("  rank_Q: infinite" if ring.checks.get("infinite_rank") else "  rank_Q: n/a")
    for key, val in sorted(ring.checks.items()):
        lines.append(f"  check {key}: {val}")
    for d in ring.discrepancies:
        lines.append(f"  discrepancy: {d}")
    for m in ring.mismatches:
        lines.append(f"  mismatch: {m}")
    return lines


# ---------------------------------------------------------------------------
# commands

def _cmd_pushforward(cfg: RunConfig) -> tuple[int, str]:
    try:
        res = pushforward_power_map(cfg.q, cfg.r, cfg.N, cfg.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = pushforward_on_moduli_chart(cfg.q, cfg.r, cfg.N, cfg.k) if cfg.substitute_t else res.value
    payload = {"q": cfg.q, "r": cfg.r, "N": cfg.N, "k": cfg.k, "substitute_t": cfg.substitute_t,
               "value": str(value), "certificate": res.certificate}
    if cfg.output == "json":
        return EXIT_OK, _dump(payload)
    return EXIT_OK, f"{value}\ncertificate: {json.dumps(res.certificate, sort_keys=True)}"


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _infer_alphabet(lines: list[str]) -> VariableAlphabet:
    names, inv = set(), set()
    for line in lines:
        for m in _NAME.finditer(line):
            names.add(m.group())
            if re.match(r"\s*\^\s*\(?\s*-", line[m.end():]):
                inv.add(m.group())
    return VariableAlphabet(sorted(names), sorted(inv))


def _cmd_gb(cfg: RunConfig) -> tuple[int, str]:
    try:
        with open(cfg.ideal, encoding="utf-8") as fh:
            raw = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read ideal file: {exc}") from None
    lines = [ln.split("#", 1)[0].strip() for ln in raw]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise UsageError("ideal file has no polynomials")
    if cfg.variables:
        names = [v.strip() for v in cfg.variables.split(",") if v.strip()]
        alphabet = VariableAlphabet([v.rstrip("~") for v in names], [v[:-1] for v in names if v.endswith("~")])
    else:
        alphabet = _infer_alphabet(lines)
    try:
        gens = [parse_polynomial(ln, alphabet) for ln in lines]
        ring = PolynomializedRing(alphabet, order=cfg.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    gb = strong_gb(gens, ring, budget=cfg.budget)
    payload = {
        "variables": list(alphabet.names),
        "invertible": list(alphabet.invertible),
        "order": ring.describe_order(),
        "groebner_basis": [str(g) for g in gb.laurent_generators()],
    }
    try:
        rep = quotient_report(gens, ring, cfg.primes, gb=gb, budget=cfg.budget)
        payload.update(rep.to_json())
        payload["infinite_rank"] = False
    except InfiniteRankError:
        payload.update({"rank_Q": None, "rank_mod_p": {}, "free": None, "basis": [],
                        "primes": list(cfg.primes), "infinite_rank": True})
    if cfg.output == "json":
        return EXIT_OK, _dump(payload)
    out = [f"order: {payload['order']}", "groebner basis:"]
    out += [f"  {g}" for g in payload["groebner_basis"]]
    if payload["infinite_rank"]:
        out.append("rank_Q: infinite")
    else:
        out.append(f"rank_Q: {payload['rank_Q']}  free: {payload['free']}")
        out.append("rank mod p: " + ", ".join(f"{p}: {r}" for p, r in payload["rank_mod_p"].items()))
        if payload["basis"]:
            out.append(f"basis: {', '.join(payload['basis'])}")
    return EXIT_OK, "\n".join(out)


def _cmd_ring(cfg: RunConfig) -> tuple[int, str]:
    name = RING_NAMES[cfg.ring]
    ring = _build_rings({name}, cfg.primes)[name]
    code = EXIT_OK if ring.ok else EXIT_MISMATCH
    if cfg.output == "json":
        return code, _dump(ring.to_json())
    return code, "\n".join(_ring_text(ring))


def _cmd_verify_all(cfg: RunConfig) -> tuple[int, str]:
    rings = _build_rings(set(RING_NAMES.values()), cfg.primes)
    order = ["M2", "BG", "Delta1", "Complement", "Mbar2"]
    payload = {"primes": list(cfg.primes), "rings": [rings[n].to_json() for n in order]}
    ok = all(rings[n].ok for n in order)
    if cfg.appendix:
        payload["appendix"] = verify_transcribed_bases(cfg.primes, rings)
    payload["ok"] = ok
    code = EXIT_OK if ok else EXIT_MISMATCH
    if cfg.output == "json":
        return code, _dump(payload)
    out = [f"{'ring':<11} {'rank_Q':>7} {'free':>6} {'relations':>10} {'basis':>6} {'status':>9} {'time':>8}"]
    for n in order:
        ring, m = rings[n], rings[n].to_json()["reference_match"]
        rank = ring.report.rank_Q if ring.report else "inf"
        free = ring.report.free if ring.report else "-"
        out.append(f"{n:<11} {rank!s:>7} {free!s:>6} {m['relations']!s:>10} {m['basis']!s:>6} "
                   f"{'ok' if ring.ok else 'MISMATCH':>9} {ring.seconds:>7.1f}s")
    for n in order:
        for d in rings[n].discrepancies:
            out.append(f"{n} discrepancy: {d}")
        for msg in rings[n].mismatches:
            out.append(f"{n} mismatch: {msg}")
    if cfg.appendix:
        for n, v in payload["appendix"].items():
            out.append(f"appendix {n}: {json.dumps(v, sort_keys=True)}")
    out.append("all checks passed" if ok else "some checks FAILED")
    return code, "\n".join(out)


_COMMANDS = {"pushforward": _cmd_pushforward, "gb": _cmd_gb, "ring": _cmd_ring, "verify-all": _cmd_verify_all}


def run(cfg: RunConfig, stream=None) -> int:
    """Execute ``cfg``; the report goes to ``cfg.out_path`` or ``stream`` (stdout)."""
    stream = stream or sys.stdout
    previous = os.environ.get(BUDGET_ENV)
    os.environ[BUDGET_ENV] = str(cfg.budget)
    try:
        if cfg.fixtures:
            set_fixture_file(cfg.fixtures)
        code, text = _COMMANDS[cfg.command](cfg)
    except (UsageError, FixtureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StepBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    finally:
        if cfg.fixtures:
            set_fixture_file(None)
        if previous is None:
            os.environ.pop(BUDGET_ENV, None)
        else:
            os.environ[BUDGET_ENV] = previous
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        stream.write(text + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None,
                        help=f"reduction step budget per basis computation (env {BUDGET_ENV}, default 10^7)")
    common.add_argument("--out", dest="out_path", help="write the report here instead of stdout")
    common.add_argument("--primes", type=_primes, default=tuple(DEFAULT_PRIMES),
                        help="comma-separated primes for the freeness test")
    common.add_argument("--fixtures", help="reference-value file replacing the packaged one")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="k0genus2", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    pf = sub.add_parser("pushforward", parents=[common], help="localization pushforward of x^k")
    pf.add_argument("--q", type=int, required=True, choices=(2, 3))
    pf.add_argument("--r", type=int, required=True)
    pf.add_argument("--N", type=int, required=True)
    pf.add_argument("--k", type=int, required=True)
    pf.add_argument("--substitute-t", action="store_true", help="impose t = (ab)^2 and rewrite in e1, e2")

    gb = sub.add_parser("gb", parents=[common], help="strong Groebner basis and quotient report")
    gb.add_argument("--ideal", required=True, help="file with one polynomial per line")
    gb.add_argument("--vars", dest="variables",
                    help="comma list, '~' marks invertible (default: inferred from the file)")
    gb.add_argument("--order", choices=("grevlex", "block"), default="grevlex")

    rg = sub.add_parser("ring", parents=[common], help="build one ring and report")
    rg.add_argument("--name", required=True, choices=sorted(RING_NAMES))

    va = sub.add_parser("verify-all", parents=[common], help="build all five rings")
    va.add_argument("--appendix", action="store_true", help="also report the transcribed basis verdicts")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    budget = args.budget
    if budget is None:
        try:
            budget = int(os.environ.get(BUDGET_ENV, DEFAULT_STEP_BUDGET))
        except ValueError:
            parser.error(f"{BUDGET_ENV} must be an integer")
    if budget <= 0:
        parser.error("--budget must be positive")
    cfg = RunConfig(
        command=args.command,
        q=getattr(args, "q", None), r=getattr(args, "r", None),
        N=getattr(args, "N", None), k=getattr(args, "k", None),
        substitute_t=getattr(args, "substitute_t", False),
        ring=getattr(args, "name", None),
        ideal=getattr(args, "ideal", None),
        variables=getattr(args, "variables", None),
        order=getattr(args, "order", "grevlex"),
        primes=args.primes, output=args.output, budget=budget,
        out_path=args.out_path, appendix=getattr(args, "appendix", False),
        fixtures=args.fixtures,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
