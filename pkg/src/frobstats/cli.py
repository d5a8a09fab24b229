"""Command-line experiments: frobstats zeta | family | density | moments | old | lindelof | verify."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import BudgetExceeded, DomainError, IdentityViolation, ModelError

EXIT_OK, EXIT_USAGE, EXIT_IDENTITY, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    q: int
    kind: str = "quadratic"
    g: int | None = None
    d: int | None = None
    ell: int = 2
    variant: str = "full"
    n: str = "1..8"
    testfn: str = "fejer"
    alpha: float = 0.4
    grid: int = 4096
    dmin: int = 3
    dmax: int = 8
    deg: int = 1
    tol: float = 1e-13
    budget: int = 10_000_000
    cache: str = ""
    out: str | None = None
    seed: int | None = None
    sample: int | None = None
    infinity: bool = False
    cubic_support: float = 1.0
    coeffs: str = ""
    a: str = ""
    b: str = ""
    extra: dict = field(default_factory=dict)

    def header(self) -> str:
        cfg = {k: v for k, v in asdict(self).items() if k not in ("extra", "out")}
        return f"# frobstats {__version__} config={json.dumps(cfg, sort_keys=True)}"


def parse_range(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _ints(text: str) -> tuple:
    return tuple(int(x) for x in text.replace(",", " ").split())


# ---------------------------------------------------------------- family construction


def _kind(cfg: RunConfig) -> str:
    return "cyclic" if cfg.kind in ("ell", "cyclic") else cfg.kind


def build_family(cfg: RunConfig):
    from .families import enum_cubic, enum_cyclic, enum_quadratic, sample_quadratic

    kind = _kind(cfg)
    if kind == "quadratic":
        if cfg.g is None:
            raise UsageError("--g is required for quadratic families")
        if cfg.sample:
            if cfg.seed is None:
                raise UsageError("--sample needs --seed")
            return sample_quadratic(cfg.q, cfg.g, cfg.sample, cfg.seed, cfg.variant)
        return enum_quadratic(cfg.q, cfg.g, cfg.variant, cfg.budget)
    if kind == "cyclic":
        if cfg.d is None:
            raise UsageError("--d is required for cyclic families")
        return enum_cyclic(cfg.q, cfg.ell, cfg.d, cfg.budget)
    if kind == "cubic":
        if cfg.g is None:
            raise UsageError("--g is required for cubic families")
        return enum_cubic(cfg.q, cfg.g, cfg.budget)
    raise UsageError(f"unknown kind {cfg.kind!r}")


def _estimate_tag(fam) -> list[str]:
    return ["# ESTIMATE: seeded sample, not the exact family"] if fam.estimate else []


# ---------------------------------------------------------------- subcommands


def cmd_zeta(cfg: RunConfig) -> list[str]:
    from .algebra.poly import Poly
    from .curves import CubicModel, KummerCover, verify_explicit_formula, verify_rh, zeta_numerator

    if cfg.kind == "cubic":
        model = CubicModel(Poly(_ints(cfg.a), cfg.q), Poly(_ints(cfg.b), cfg.q))
    else:
        if not cfg.coeffs:
            raise UsageError("--coeffs (ascending coefficients of Q) is required")
        model = KummerCover(Poly(_ints(cfg.coeffs), cfg.q), cfg.ell)
    Z = zeta_numerator(model)
    rh = verify_rh(Z)
    lines = ["model,genus,zeta_coeffs,rh_ok,rh_worst"]
    lines.append(f"{model.describe()},{Z.genus},{' '.join(map(str, Z.coeffs))},{int(rh.ok)},{rh.max_deviation:.3e}")
    lines.append("n,S_n,explicit_lhs,explicit_rhs,equal")
    S = Z.power_sums(max(parse_range(cfg.n))).S
    for n in parse_range(cfg.n):
        lhs, rhs, eq = verify_explicit_formula(model, n, S_n=S[n - 1])
        lines.append(f"{n},{S[n - 1]},{lhs},{rhs},{int(eq)}")
        if not eq:
            raise IdentityViolation(f"explicit formula failed at n={n}")
    if not rh.ok:
        raise IdentityViolation(f"RH failed: worst deviation {rh.max_deviation}")
    return lines


def cmd_family(cfg: RunConfig) -> list[str]:
    from .curves import verify_rh_batch

    fam = build_family(cfg)
    ok, worst, uniq = verify_rh_batch(fam.zeta_coeffs(), fam.q)
    lines = _estimate_tag(fam) + ["label,size,genus,distinct_zeta,rh_ok,rh_worst,dedupe"]
    dd = json.dumps(fam.dedupe_log, sort_keys=True, default=str).replace(",", ";")
    lines.append(f"{fam.label().replace(',', ';')},{len(fam)},{fam.genus},{uniq},{int(ok)},{worst:.3e},{dd}")
    if not ok:
        raise IdentityViolation("RH failed on a family member")
    return lines


def cmd_density(cfg: RunConfig) -> list[str]:
    from .algebra.irreducibles import irreducibles
    from .families import DensityReport, empirical_density
    from .places import Place, SplitType

    fam = build_family(cfg)
    if fam.kind == "cubic":
        omegas = [SplitType.TOTALLY_SPLIT, SplitType.PARTIALLY_SPLIT, SplitType.INERT, SplitType.PARTIALLY_RAMIFIED]
    else:
        omegas = [SplitType.RAMIFIED, SplitType.SPLIT, SplitType.INERT]
    lines = _estimate_tag(fam) + [DensityReport.CSV_HEADER]
    for v in irreducibles(cfg.q, cfg.deg):
        place = Place(cfg.q, v.coeffs)
        for om in omegas:
            lines.append(empirical_density(fam, place, om).csv_row())
    return lines


def cmd_moments(cfg: RunConfig) -> list[str]:
    from .stats import MomentReport, moment_report

    fam = build_family(cfg)
    lines = _estimate_tag(fam) + [MomentReport.CSV_HEADER]
    kw = {"include_infinity": cfg.infinity} if fam.kind == "cyclic" else {}
    for n in parse_range(cfg.n):
        if n < 1:
            raise UsageError("moments need n >= 1")
        lines.append(moment_report(fam, n, **kw).csv_row())
    return lines


def cmd_old(cfg: RunConfig) -> list[str]:
    from .stats import TestFunction, one_level_density, predicted_old

    if cfg.testfn != "fejer":
        raise UsageError("only --testfn fejer is available from the command line")
    f = TestFunction.fejer(cfg.alpha)
    kind = _kind(cfg)
    # validate the support guard before enumerating anything
    g_guess = cfg.g if cfg.g is not None else (cfg.ell - 1) * ((cfg.d or 3) - 2) // 2
    pkind = "odd" if kind == "quadratic" and cfg.variant == "odd" else kind
    predicted_old(pkind, f, max(g_guess, 1), cfg.q, cfg.ell, cfg.cubic_support, cfg.tol)
    fam = build_family(cfg)
    emp = one_level_density(fam, f)
    base, pred = predicted_old(pkind, f, fam.genus, cfg.q, cfg.ell, cfg.cubic_support, cfg.tol)
    lines = _estimate_tag(fam) + ["q,kind,g,alpha,empirical,baseline,predicted,emp_minus_base,pred_minus_base"]
    lines.append(
        f"{cfg.q},{fam.kind},{fam.genus},{cfg.alpha},{emp:.12g},{base:.12g},{pred:.12g},"
        f"{emp - base:.6e},{pred - base:.6e}"
    )
    return lines


def cmd_lindelof(cfg: RunConfig) -> list[str]:
    from .bounds import LindelofReport, lindelof_sweep

    reports = lindelof_sweep(cfg.q, cfg.ell, cfg.dmin, cfg.dmax, cfg.grid)
    lines = [LindelofReport.CSV_HEADER] + [r.csv_row() for r in reports]
    bad = [r for r in reports if not r.ok]
    if bad:
        r = bad[0]
        raise IdentityViolation(f"Lindelof bound violated: v0={r.v0}, t={r.t_at_sup}, {r.sup_logL} > {r.bound}")
    return lines


def cmd_verify(cfg: RunConfig) -> list[str]:
    """Exact identity suite at (q, g): PNT, explicit formula, odd moments, RH, character oracle."""
    from .algebra.irreducibles import irreducibles, verify_pnt
    from .bounds import char_power_sum
    from .curves import check_character_oracle, verify_rh_batch
    from .families import enum_quadratic
    from .places import DirichletChar
    from .stats import avg_power_sum

    q, g = cfg.q, cfg.g if cfg.g is not None else 2
    counts = {}
    for n in range(1, 13):
        if q ** n > 2_000_000:
            break
        if not verify_pnt(q, n):
            raise IdentityViolation(f"prime count identity failed at q={q}, n={n}")
        counts["pnt"] = counts.get("pnt", 0) + 1
    fam = enum_quadratic(q, g, "full", cfg.budget)
    for n in range(1, 7):
        lhs, rhs = fam.explicit_formula(n)
        if not np.array_equal(lhs, rhs):
            raise IdentityViolation(f"explicit formula failed for n={n}")
        counts["explicit_formula"] = counts.get("explicit_formula", 0) + len(fam)
    for n in range(1, 2 * g + 4, 2):
        if avg_power_sum(fam, n) != 0:
            raise IdentityViolation(f"odd moment n={n} is nonzero")
        counts["odd_moment"] = counts.get("odd_moment", 0) + 1
    ok, worst, uniq = verify_rh_batch(fam.zeta_coeffs(), q)
    if not ok:
        raise IdentityViolation(f"RH failed, worst {worst}")
    counts["rh"] = uniq
    for d in range(1, min(2 * g + 2, 6) + 1):
        for v in irreducibles(q, d):
            check_character_oracle(v, 2)
            counts["character_oracle"] = counts.get("character_oracle", 0) + 1
            for n in range(1, 7):
                char_power_sum(DirichletChar(v, 2), n)
                counts["char_power_sum"] = counts.get("char_power_sum", 0) + 1
    lines = ["identity,checked"] + [f"{k},{v}" for k, v in sorted(counts.items())]
    return lines


COMMANDS = {
    "zeta": cmd_zeta,
    "family": cmd_family,
    "density": cmd_density,
    "moments": cmd_moments,
    "old": cmd_old,
    "lindelof": cmd_lindelof,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="frobstats", description=__doc__)
    p.add_argument("--version", action="version", version=f"frobstats {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--q", type=int, required=True)
    common.add_argument("--kind", default="quadratic", choices=["quadratic", "cyclic", "ell", "cubic"])
    common.add_argument("--g", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--ell", type=int, default=None)
    common.add_argument("--variant", default="full", choices=["full", "odd", "even"])
    common.add_argument("--budget", type=int, default=10_000_000)
    common.add_argument("--cache", default=None, help="cache directory (overrides FROBSTATS_CACHE)")
    common.add_argument("--out", default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--sample", type=int, default=None, help="seeded sample size (ESTIMATE mode)")
    common.add_argument("--tol", type=float, default=1e-13)
    common.add_argument("-v", "--verbose", action="store_true")
    extra = {
        "zeta": [("--coeffs", str, ""), ("--a", str, ""), ("--b", str, ""), ("--n", str, "1..6")],
        "family": [],
        "density": [("--deg", int, 1)],
        "moments": [("--n", str, "1..8")],
        "old": [("--alpha", float, 0.4), ("--testfn", str, "fejer"), ("--cubic-support", float, 1.0)],
        "lindelof": [("--dmin", int, 3), ("--dmax", int, 8), ("--grid", int, 4096)],
        "verify": [],
    }
    for name, opts in extra.items():
        sp = sub.add_parser(name, parents=[common], help=COMMANDS[name].__doc__)
        for flag, typ, default in opts:
            sp.add_argument(flag, type=typ, default=default)
        if name == "moments":
            sp.add_argument("--infinity", action="store_true", help="cyclic: include the infinite place")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    vals = vars(ns).copy()
    vals.pop("verbose", None)
    if vals.get("ell") is None:
        vals["ell"] = 3 if vals.get("kind") in ("cubic", "cyclic", "ell") else 2
    if vals.get("cache") is None:
        vals["cache"] = os.environ.get("FROBSTATS_CACHE", "cache")
    known = set(RunConfig.__dataclass_fields__)
    return RunConfig(**{k: v for k, v in vals.items() if k in known})


def run(cfg: RunConfig) -> list[str]:
    os.environ["FROBSTATS_CACHE"] = cfg.cache
    return [cfg.header()] + COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
        cfg = config_from_args(ns)
        lines = run(cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ModelError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except IdentityViolation as e:
        print(f"identity violation: {e}", file=sys.stderr)
        return EXIT_IDENTITY
    except BudgetExceeded as e:
        print(f"budget refusal: {e}", file=sys.stderr)
        return EXIT_BUDGET
    text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
