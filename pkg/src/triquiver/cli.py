"""Command-line front end: normalize, build, pi1, verify, theorem, dot.

Exit codes: 0 all checks pass, 1 a check failed, 2 parse or usage error,
3 nothing failed but some check was inconclusive.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .abelian import abelianization
from .bqformat import parse_bq, to_dot, write_bq
from .construction import (
    GroupPair,
    build_group_pair,
    build_theorem_family,
    check_killed_form,
)
from .cosets import DEFAULT_MAX_COSETS, todd_coxeter
from .errors import NonMinimalGenerator, ParseError, TermCapExceeded
from .fundamental import pi1_from_ideal, pi1_presentation
from .pathalgebra import (
    BoundQuiver,
    euler_characteristic,
    is_admissible,
    is_minimal_relation,
    quotient_dimension,
)
from .presentations import FPGroup, normalize, parse_presentation, split_free_generators, to_positive
from .tietze import DEFAULT_MAX_STEPS, tietze_simplify
from .words import format_word

DEFAULT_MAX_TERMS = 12

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class CheckRecord:
    name: str
    status: str
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[CheckRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name, ok, detail="", inconclusive=False):
        status = INCONCLUSIVE if inconclusive else (PASS if ok else FAIL)
        self.checks.append(CheckRecord(name, status, detail))

    @property
    def overall(self) -> str:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return FAIL
        return INCONCLUSIVE if INCONCLUSIVE in statuses else PASS

    @property
    def exit_code(self) -> int:
        return {PASS: EXIT_OK, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[self.overall]

    def text(self) -> str:
        lines = [f"[{c.status}] {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.checks]
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"checks": [asdict(c) for c in self.checks], "notes": self.notes, "overall": self.overall}


@dataclass
class Limits:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_terms: int = DEFAULT_MAX_TERMS
    max_steps: int = DEFAULT_MAX_STEPS


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_group(path) -> FPGroup:
    try:
        return parse_presentation(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def load_bq(path) -> BoundQuiver:
    try:
        return parse_bq(_read(path))
    except (ParseError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def order_of(g: FPGroup, limits: Limits):
    return todd_coxeter(tietze_simplify(g, limits.max_steps), limits.max_cosets)


def trivial_check(bq: BoundQuiver, limits: Limits):
    """Decide pi_1(bq) = 1, cheapest presentation first.

    The local-block presentation surjects onto pi_1, so Finite(1) there is
    already a proof; otherwise the full presentation decides.
    """
    res = order_of(pi1_from_ideal(bq, "local"), limits)
    if res.finite and res.order == 1:
        return res, "local blocks"
    return order_of(pi1_from_ideal(bq, "all"), limits), "all blocks"


def _open_for_write(out: Path, force: bool):
    if out.exists() and not force:
        raise FileExistsError(f"{out} exists; use --force to overwrite")


# ------------------------------------------------------------- verification


def verify_group(g: FPGroup, limits: Limits | None = None) -> tuple[VerificationReport, GroupPair]:
    limits = limits or Limits()
    rep = VerificationReport()
    gp = build_group_pair(g, check_minimal=False)
    expected = abelianization(g)
    pair = gp.pair

    if pair is not None:
        bq = pair.bound_I
        bad = [k for k, e in enumerate(pair.ideal_I) if not is_minimal_relation(e, bq, max_terms=limits.max_terms)]
        rep.add("minimality of I", not bad,
                f"{len(pair.ideal_I)} generators" + (f", not minimal: {bad}" if bad else ""))
        killed = check_killed_form(pair.presentation, pair.chain, pair.gamma_bar)
        failed = [e for e in killed if not e.passed]
        rep.add("killed form", not failed, f"{len(killed)} lassos" + "".join(f"; {e.lasso}: {e.detail}" for e in failed))
        inv = pair.inverse_gamma()
        ok = inv.compose(pair.gamma_bar).is_identity() and tuple(inv.apply(e) for e in pair.ideal_Ibar) == pair.ideal_I
        rep.add("inverse transvections", ok, "reverse-negated composite undoes gamma-bar")
        capped = [k for k, e in enumerate(pair.ideal_Ibar) if len(e) > limits.max_terms]
        nonmin = [k for k, e in enumerate(pair.ideal_Ibar) if len(e) <= limits.max_terms
                  and not is_minimal_relation(e, pair.bound_Ibar, max_terms=limits.max_terms)]
        if capped:
            rep.notes.append(f"gamma-bar images over the {limits.max_terms}-term cap: generators {capped}")
        if nonmin:
            rep.notes.append(f"gamma-bar images that are not minimal relations of Ibar: generators {nonmin}")
        if capped or nonmin:
            rep.notes.append("pi_1 of the Jbar side is read from the whole ideal")

    rep.add("admissibility of J", is_admissible(gp.bound_J))
    rep.add("admissibility of Jbar", is_admissible(gp.bound_Jbar))
    dj, djb = quotient_dimension(gp.bound_J), quotient_dimension(gp.bound_Jbar)
    rep.add("quotient dimension", dj == djb, f"{dj} vs {djb}")

    try:
        pres = pi1_presentation(gp.bound_J, max_terms=limits.max_terms)
    except (NonMinimalGenerator, TermCapExceeded) as exc:
        rep.add("abelianization", False, str(exc))
        pres = None
    if pres is not None:
        got = abelianization(pres)
        rep.add("abelianization", got == expected, f"pi_1(Q_G, J): {got}; input: {expected}")
        whole = abelianization(pi1_from_ideal(gp.bound_J, "all"))
        rep.add("whole-ideal agreement", whole == got, f"from all blocks: {whole}")

        if expected.free_rank > 0:
            rep.notes.append(f"input group is infinite (abelianization {expected}); order check skipped")
        else:
            orig = todd_coxeter(g, limits.max_cosets)
            if not orig.finite:
                rep.add("order", False, f"input enumeration {orig.verdict}", inconclusive=True)
            else:
                res = order_of(pres, limits)
                if not res.finite:
                    rep.add("order", False, f"input Finite({orig.order}); pi_1 {res.verdict}", inconclusive=True)
                else:
                    rep.add("order", res.order == orig.order, f"pi_1 {res.verdict}; input {orig.verdict}")

    res, how = trivial_check(gp.bound_Jbar, limits)
    if res.finite:
        rep.add("triviality of Jbar side", res.order == 1, f"{res.verdict} ({how})")
    else:
        rep.add("triviality of Jbar side", False, res.verdict, inconclusive=True)
    return rep, gp


def verify_family(gs: list[FPGroup], limits: Limits | None = None):
    limits = limits or Limits()
    rep = VerificationReport()
    fam = build_theorem_family(gs, check_minimal=False)
    rep.add("acyclic", fam.quiver.is_acyclic())
    chis = [euler_characteristic(c.quiver) for c in fam.components]
    chi = euler_characteristic(fam.quiver)
    rep.add("euler characteristic adds", chi == sum(chis), f"{chi} = sum of {chis}")
    dims = []
    for i in range(len(gs)):
        bq = fam.bound(i)
        rep.add(f"admissibility of I{i + 1}", is_admissible(bq))
        dims.append(quotient_dimension(bq))
    rep.add("quotient dimensions equal", len(set(dims)) == 1, " ".join(map(str, dims)))
    for i, g in enumerate(gs):
        pres = pi1_from_ideal(fam.bound(i), "all")
        got, expected = abelianization(pres), abelianization(g)
        rep.add(f"abelianization I{i + 1}", got == expected, f"{got}; input {expected}")
        if expected.free_rank == 0:
            orig = todd_coxeter(g, limits.max_cosets)
            res = order_of(pres, limits)
            if orig.finite and res.finite:
                rep.add(f"order I{i + 1}", orig.order == res.order, f"{res.verdict}; input {orig.verdict}")
            else:
                rep.add(f"order I{i + 1}", False, f"{res.verdict}; input {orig.verdict}", inconclusive=True)
    return rep, fam


# ----------------------------------------------------------------- commands


def _emit(args, text: str, data: dict):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_normalize(args) -> int:
    g = load_group(args.input)
    m, h = split_free_generators(to_positive(g))
    if not h.generators:
        _emit(args, f"H is empty; m = {m}", {"free_rank": m, "n": 0, "lassos": [], "cross_lassos": []})
        return EXIT_OK
    np = normalize(h)
    data = {"free_rank": m, "n": np.n, "lassos": [list(x) for x in np.lassos],
            "cross_lassos": [list(x) for x in np.cross_lassos], "origin": list(np.origin)}
    _emit(args, f"m = {m}\n{np.describe()}", data)
    return EXIT_OK


def build_manifest(g: FPGroup, gp: GroupPair, files: dict) -> dict:
    m = len(gp.J) - (len(gp.pair.ideal_I) if gp.pair else 0)
    data = {"group": g.to_text(), "free_rank": gp.free_rank, "base": gp.base,
            "free_block_generators": list(range(m)), "files": files}
    if gp.pair is not None:
        np = gp.pair.presentation
        book = gp.pair.bookkeeping
        data["n"] = np.n
        data["lassos"] = [{"range": list(x), "generator": m + book[("lasso", x)]} for x in np.lassos]
        data["cross_lassos"] = [{"pair": list(x), "generator": m + book[("cross", x)]} for x in np.cross_lassos]
    else:
        data["n"] = 0
        data["lassos"] = data["cross_lassos"] = []
    return data


def cmd_build(args) -> int:
    g = load_group(args.input)
    out = Path(args.output)
    _open_for_write(out, args.force)
    gp = build_group_pair(g)
    out.mkdir(parents=True, exist_ok=True)
    files = {"J": "Q_G_J.bq", "Jbar": "Q_G_Jbar.bq"}
    (out / files["J"]).write_text(write_bq(gp.bound_J))
    (out / files["Jbar"]).write_text(write_bq(gp.bound_Jbar))
    manifest = build_manifest(g, gp, files)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    _emit(args, f"wrote {out / files['J']}, {out / files['Jbar']}, {out / 'manifest.json'}", manifest)
    return EXIT_OK


def cmd_pi1(args) -> int:
    bq = load_bq(args.input)
    if args.base:
        if args.base not in bq.quiver.vertex_index:
            raise UsageError(f"unknown base vertex {args.base}")
        bq = BoundQuiver(bq.quiver, bq.ideal, args.base)
    log = [] if args.log else None
    if args.complete:
        g = pi1_from_ideal(bq, "all")
    else:
        g = pi1_presentation(bq, max_terms=args.max_terms, log=log)
    lines = [g.to_text().rstrip("\n")]
    data = {"generators": list(g.generators), "relators": [format_word(r) for r in g.relators]}
    code = EXIT_OK
    for entry in log or []:
        lines.append(f"# generator {entry.generator}: {entry.first} -> {format_word(entry.first_word)}, "
                     f"{entry.other} -> {format_word(entry.other_word)}")
    if args.verify:
        simple = tietze_simplify(g, args.max_steps)
        res = todd_coxeter(simple, args.max_cosets)
        ab = abelianization(g)
        lines.append(f"# simplified: {simple}")
        lines.append(f"# abelianization: {ab}")
        lines.append(f"# coset enumeration: {res.verdict}")
        data.update(simplified=str(simple), abelianization=str(ab), enumeration=res.verdict)
        if not res.finite:
            code = EXIT_INCONCLUSIVE
    _emit(args, "\n".join(lines), data)
    return code


def _limits(args) -> Limits:
    return Limits(args.max_cosets, args.max_terms, args.max_steps)


def cmd_verify(args) -> int:
    g = load_group(args.input)
    rep, _ = verify_group(g, _limits(args))
    _emit(args, rep.text(), rep.to_dict())
    return rep.exit_code


def cmd_theorem(args) -> int:
    gs = [load_group(p) for p in args.inputs]  # every input parses before anything is written
    out = Path(args.output)
    _open_for_write(out, args.force)
    rep, fam = verify_family(gs, _limits(args))
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for i in range(len(gs)):
        name = f"Qhat_I{i + 1}.bq"
        (out / name).write_text(write_bq(fam.bound(i)))
        files.append(name)
    manifest = {"inputs": [str(p) for p in args.inputs], "files": files, "base": fam.base,
                "components": [{"prefix": f"G{k + 1}_", "free_rank": c.free_rank,
                                "n": c.normalized.n if c.normalized else 0}
                               for k, c in enumerate(fam.components)],
                "report": rep.to_dict()}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    _emit(args, rep.text(), manifest)
    return rep.exit_code


def cmd_dot(args) -> int:
    bq = load_bq(args.input)
    sys.stdout.write(to_dot(bq.quiver))
    return EXIT_OK


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triquiver", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS,
                        help=f"coset table bound (default {DEFAULT_MAX_COSETS})")
    common.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS,
                        help=f"term cap for minimality checks (default {DEFAULT_MAX_TERMS})")
    common.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS,
                        help=f"Tietze step bound (default {DEFAULT_MAX_STEPS})")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="lasso normal form of a .grp file")
    s.add_argument("input")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("build", parents=[common], help="write Q_G with both ideals")
    s.add_argument("input")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("pi1", parents=[common], help="fundamental group of a .bq file")
    s.add_argument("input")
    s.add_argument("--base", metavar="VERTEX")
    s.add_argument("--verify", action="store_true", help="simplify and run coset enumeration")
    s.add_argument("--complete", action="store_true",
                   help="read minimal relations from the whole ideal instead of its generators")
    s.add_argument("--log", action="store_true", help="print the derivation of each relator")
    s.set_defaults(func=cmd_pi1)

    s = sub.add_parser("verify", parents=[common], help="run the invariant suite on a .grp file")
    s.add_argument("input")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("theorem", parents=[common], help="one quiver, one ideal per group")
    s.add_argument("inputs", nargs="+")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_theorem)

    s = sub.add_parser("dot", parents=[common], help="Graphviz rendering of a .bq quiver")
    s.add_argument("input")
    s.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileExistsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (NonMinimalGenerator, TermCapExceeded) as exc:
        print(f"error: {exc}; try --complete", file=sys.stderr)
        return EXIT_FAIL
