"""Command-line front end.

Exit codes: 0 success or property holds, 1 property fails (a witness document
is attached), 2 input error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable

from . import categories
from .adhesion import (Cube, adhesivity_audit, check_cube_commutes, lemma_basic_check,
                       prop_basic_check, vk_cube_check)
from .dpo import RejectReason, dpo_apply, enumerate_monos
from .generators import random_cset, random_mono_from, random_morphism_from
from .io import Document, FormatError, load, serialize
from .kernel import (Arrow, Budget, BudgetExceeded, CSetMorphism, EndpointMismatch,
                     FinCategory, validate)
from .limits import (Cospan, NonCommutingSquare, Span, Square, check_commutes,
                     pullback_square, pushout_square, subobject_union, verify_square)
from .sheaf import (Presheaf, generate_covers, jointly_monic_failures, sends_to_limit,
                    representable, sheaf_check, validate_presheaf, embedding_check)

BUDGET_ENV = "ADHESIVE_BUDGET"
DEFAULT_BUDGET = 20_000_000

BUILTIN_CATEGORIES: dict[str, Callable[[], FinCategory]] = {
    "terminal": categories.terminal_category,
    "chain2": lambda: categories.chain(2),
    "chain3": lambda: categories.chain(3),
    "B2": lambda: categories.boolean_lattice(2),
    "B3": lambda: categories.boolean_lattice(3),
    "Div12": lambda: categories.divisor_lattice(12),
    "M3": categories.m3,
    "N5": categories.n5,
    "FinSet2": lambda: categories.finset_category(2),
    "FinSet3": lambda: categories.finset_category(3),
}


class InputError(Exception):
    pass


@dataclass
class Report:
    command: str
    exit_code: int = 0
    status: str = "ok"
    summary: str = ""
    details: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, str] | None = None
    document: str | None = None
    format: str = "text"

    def fail(self, summary: str, witness: Document | None = None, replay: str = "") -> "Report":
        self.exit_code, self.status, self.summary = 1, "fails", summary
        if witness is not None:
            self.witness = {"kind": witness.kind, "replay": replay, "document": serialize(witness)}
        return self

    def as_json(self) -> str:
        return json.dumps({"command": self.command, "status": self.status,
                           "exit_code": self.exit_code, "summary": self.summary,
                           "details": self.details, "witness": self.witness,
                           "document": self.document}, indent=2, sort_keys=True)

    def as_text(self) -> str:
        lines = [f"{self.command}: {self.status}" + (f" ({self.summary})" if self.summary else "")]
        for k in sorted(self.details):
            lines.append(f"  {k}: {_plain(self.details[k])}")
        if self.witness:
            lines.append(f"witness ({self.witness['kind']}); replay with: {self.witness['replay']}")
            lines.append(self.witness["document"].rstrip())
        if self.document:
            lines.append(self.document.rstrip())
        return "\n".join(lines)


def _plain(v) -> str:
    if isinstance(v, list):
        return "; ".join(_plain(x) for x in v) if v else "-"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_plain(x)}" for k, x in v.items())
    return str(v)


# --- inputs -----------------------------------------------------------------


def _load(path: str, kinds: tuple[str, ...]) -> Document:
    try:
        doc = load(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    except FormatError as e:
        raise InputError(f"{path}: {e}") from None
    if doc.kind not in kinds:
        raise InputError(f"{path}: expected a {' or '.join(kinds)} document, got {doc.kind}")
    problems = _problems(doc)
    if problems:
        raise InputError(f"{path}: invalid {doc.kind}: {problems[0]}")
    return doc


def _problems(doc: Document) -> list[str]:
    p = doc.payload
    if doc.kind in ("schema", "cset", "morphism", "fincat"):
        return [str(v.message) for v in validate(p).violations]
    if doc.kind == "presheaf":
        rep = validate(p.base)
        if rep.ok:
            rep = validate_presheaf(p)
        return [v.message for v in rep.violations]
    if doc.kind == "rule":
        return [v.message for f in (p.l, p.r) for v in validate(f).violations]
    arrows = _cube_arrows(p) if doc.kind == "cube" else [p.top, p.left, p.bottom, p.right]
    out = [v.message for f in arrows if isinstance(f, CSetMorphism) for v in validate(f).violations]
    if arrows and isinstance(arrows[0], Arrow):
        out += [v.message for v in validate(arrows[0].cat).violations]
    if out:
        return out
    try:
        if doc.kind == "cube":
            check_cube_commutes(p)
        else:
            check_commutes(p)
    except (NonCommutingSquare, EndpointMismatch) as e:
        return [str(e)]
    return []


def _cube_arrows(c: Cube) -> list:
    return [c.top.top, c.top.left, c.top.bottom, c.top.right, c.bottom.top, c.bottom.left,
            c.bottom.bottom, c.bottom.right, c.c, c.a, c.b, c.d]


def _category(arg: str) -> FinCategory:
    if os.path.exists(arg):
        return _load(arg, ("fincat",)).payload
    if arg in BUILTIN_CATEGORIES:
        return BUILTIN_CATEGORIES[arg]()
    raise InputError(f"{arg}: no such file or built-in category "
                     f"(built-ins: {', '.join(BUILTIN_CATEGORIES)})")


def _span_from(files: list[str]) -> tuple[Any, Any]:
    """(m, f) from two morphism documents or the (left, top) of one square."""
    if len(files) == 1:
        sq = _load(files[0], ("square",)).payload
        return sq.left, sq.top
    if len(files) == 2:
        return (_load(files[0], ("morphism",)).payload, _load(files[1], ("morphism",)).payload)
    raise InputError("expected two morphism documents or one square document")


def _budget(args) -> Budget:
    if args.budget is not None:
        return Budget(args.budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return Budget(int(env))
        except ValueError:
            raise InputError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
    return Budget(DEFAULT_BUDGET)


def _verdict_details(v) -> dict:
    return {"kind": v.kind_checked, "holds": v.holds, "engine": v.engine,
            "witness": v.witness or "-"}


# --- commands ---------------------------------------------------------------


def cmd_validate(args, rep: Report) -> Report:
    try:
        doc = load(args.file)
    except OSError as e:
        raise InputError(f"{args.file}: {e.strerror}") from None
    except FormatError as e:
        raise InputError(f"{args.file}: {e}") from None
    problems = _problems(doc)
    rep.details = {"kind": doc.kind, "violations": problems}
    if problems:
        return rep.fail(f"{len(problems)} violation(s)", doc, f"validate {args.file}")
    rep.summary = f"valid {doc.kind}"
    return rep


def cmd_pullback(args, rep: Report) -> Report:
    f = _load(args.files[0], ("morphism",)).payload
    g = _load(args.files[1], ("morphism",)).payload
    if f.cod != g.cod:
        raise InputError("the two morphisms must share a codomain")
    sq = pullback_square(Cospan(f, g))
    rep.summary = f"apex {sq.C!r}"
    rep.document = _emit(args, Document("square", sq))
    return rep


def cmd_pushout(args, rep: Report) -> Report:
    m = _load(args.files[0], ("morphism",)).payload
    f = _load(args.files[1], ("morphism",)).payload
    if m.dom != f.dom:
        raise InputError("the two morphisms must share a domain")
    try:
        sq = pushout_square(Span(m, f))
    except ValueError as e:
        raise InputError(str(e)) from None
    rep.summary = f"apex {sq.D!r}"
    rep.document = _emit(args, Document("square", sq))
    return rep


def cmd_verify(args, rep: Report) -> Report:
    doc = _load(args.file, ("square",))
    v = verify_square(doc.payload, args.kind, args.engine, rep.details.pop("_budget"))
    rep.details.update(_verdict_details(v))
    if not v.holds:
        return rep.fail(f"not a {args.kind}", doc, f"verify --kind {args.kind} {args.file}")
    rep.status, rep.summary = "holds", f"square is a {args.kind}"
    return rep


def _vk_details(v) -> dict:
    return {"preconditions_met": v.preconditions_met, "top_is_pushout": v.top_is_pushout,
            "front_right_pullbacks": v.front_right_pullbacks, "vk_holds": v.vk_holds,
            "failing_face": v.failing_face or "-", "witness": v.witness or "-"}


def cmd_vk_check(args, rep: Report) -> Report:
    doc = _load(args.file, ("cube",))
    v = vk_cube_check(doc.payload, args.engine, rep.details.pop("_budget"))
    rep.details.update(_vk_details(v))
    if not v.vk_holds:
        return rep.fail(f"Van Kampen condition fails at the {v.failing_face} face", doc,
                        f"vk-check {args.file}")
    rep.status = "holds"
    rep.summary = "cube satisfies the Van Kampen condition" + (
        "" if v.preconditions_met else " vacuously")
    return rep


def _random_span(rng: random.Random):
    c = random_cset(rng, max_size=3)
    return random_mono_from(rng, c, 2), random_morphism_from(rng, c, max_size=6)


def _span_check(args, rep: Report, check, holds_of, label: str, cmd: str) -> Report:
    if args.random:
        rng = random.Random(args.seed)
        spans = [_random_span(rng) for _ in range(args.random)]
    else:
        m, f = _span_from(args.files)
        if not isinstance(m, CSetMorphism):
            raise InputError(f"{cmd} works on C-set morphisms")
        spans = [(m, f)]
    passed = 0
    for i, (m, f) in enumerate(spans):
        try:
            r = check(m, f, args.engine)
        except ValueError as e:
            raise InputError(str(e)) from None
        if not holds_of(r):
            rep.details.update({"instances": len(spans), "failed_instance": i})
            sq = Square(f, m, r.square.bottom, r.square.right) if cmd == "prop-basic" else r.pushout_square
            return rep.fail(f"{label} fails", Document("square", sq), f"{cmd} WITNESS.toml")
        passed += 1
    rep.details.update({"instances": len(spans), "passed": passed})
    rep.status, rep.summary = "holds", f"{label} holds on {passed}/{len(spans)}"
    return rep


def cmd_prop_basic(args, rep: Report) -> Report:
    rep.details.pop("_budget")
    return _span_check(args, rep, prop_basic_check, lambda r: r.holds,
                       "pushout leg mono and square a pullback", "prop-basic")


def cmd_lemma_basic(args, rep: Report) -> Report:
    rep.details.pop("_budget")
    return _span_check(args, rep, lemma_basic_check, lambda r: r.holds,
                       "kernel-pair square is a pushout and a pullback", "lemma-basic")


def cmd_union(args, rep: Report) -> Report:
    if len(args.files) == 1:
        sq = _load(args.files[0], ("square",)).payload
        a, b = sq.bottom, sq.right
    elif len(args.files) == 2:
        a = _load(args.files[0], ("morphism",)).payload
        b = _load(args.files[1], ("morphism",)).payload
    else:
        raise InputError("expected two morphism documents or one square document")
    if a.cod != b.cod:
        raise InputError("the two subobjects must share a codomain")
    try:
        u = subobject_union(a, b)
    except ValueError as e:
        raise InputError(str(e)) from None
    except AssertionError as e:
        return rep.fail(str(e), Document("square", u.square),
                        "union WITNESS.toml")
    rep.summary = f"union {u.obj!r} over intersection {u.intersection!r}"
    rep.document = _emit(args, Document("morphism", u.into))
    return rep


def cmd_audit(args, rep: Report) -> Report:
    cat = _category(args.category)
    r = adhesivity_audit(cat, rep.details.pop("_budget"), max_witnesses=args.limit or 10)
    rep.details.update({"category": r.category, "objects": r.objects, "morphisms": r.morphisms,
                        "bottom_squares": r.bottom_squares, "cubes_enumerated": r.cubes_enumerated,
                        "cubes_checked": r.cubes_checked, "violations": r.violation_count,
                        "missing_pushouts": [f"({u}, {v})" for u, v in r.missing_pushouts],
                        "missing_pullbacks": [f"({u}, {v})" for u, v in r.missing_pullbacks],
                        "steps": r.steps, "verdict": r.verdict})
    if r.violations:
        return rep.fail("violation-found", Document("cube", r.violations[0]), "vk-check WITNESS.toml")
    if r.budget_exceeded:
        rep.exit_code, rep.status, rep.summary = 3, "budget-exceeded", "inconclusive"
        return rep
    if r.verdict == "inconclusive":
        rep.exit_code, rep.status, rep.summary = 1, "fails", "inconclusive: missing (co)limits"
        return rep
    rep.status, rep.summary = "holds", r.verdict
    return rep


def _rule_and_host(args):
    rule = _load(args.rule, ("rule",)).payload
    host = _load(args.host, ("cset",)).payload
    if rule.L.schema != host.schema:
        raise InputError("rule and host use different schemas")
    return rule, host


def cmd_match(args, rep: Report) -> Report:
    rule, host = _rule_and_host(args)
    matches, truncated = enumerate_monos(rule.L, host, args.limit)
    rep.details = {"matches": [{s: list(c) for s, c in zip(host.schema.sorts, mr.match.comps)}
                               for mr in matches], "truncated": truncated}
    rep.summary = f"{len(matches)} match(es)" + (" (truncated)" if truncated else "")
    return rep


def cmd_dpo(args, rep: Report) -> Report:
    rule, host = _rule_and_host(args)
    if args.match_file:
        m = _load(args.match_file, ("morphism",)).payload
        if m.dom != rule.L or m.cod != host:
            raise InputError("match must be a morphism from the rule's L into the host")
    else:
        matches, _ = enumerate_monos(rule.L, host, args.match + 1)
        if len(matches) <= args.match:
            raise InputError(f"no match with index {args.match} ({len(matches)} found)")
        m = matches[args.match].match
    try:
        res = dpo_apply(rule, host, m)
    except ValueError as e:
        raise InputError(str(e)) from None
    if isinstance(res, RejectReason):
        rep.details = {"reason": str(res)}
        return rep.fail(str(res), Document("morphism", m),
                        f"dpo {args.rule} {args.host} --match-file WITNESS.toml")
    rep.summary = f"rewrote to {res.H!r}"
    rep.details = {"left_square_pushout": verify_square(res.left, "pushout").holds,
                   "right_square_pushout": verify_square(res.right, "pushout").holds}
    rep.document = _emit(args, Document("cset", res.H))
    return rep


def cmd_covers(args, rep: Report) -> Report:
    cat = _category(args.category)
    cs = generate_covers(cat, rep.details.pop("_budget"), audit=not args.no_audit)
    if cs.truncated:
        raise BudgetExceeded("cover generation ran out of budget")
    rep.details = {"category": cat.name, "covers": [c.label() for c in cs],
                   "warnings": cs.warnings}
    rep.summary = f"{len(cs)} generating cover(s)"
    return rep


def cmd_sheaf_check(args, rep: Report) -> Report:
    doc = _load(args.file, ("presheaf",))
    F: Presheaf = doc.payload
    cs = generate_covers(F.base, rep.details.pop("_budget"), audit=not args.no_audit)
    if cs.truncated:
        raise BudgetExceeded("cover generation ran out of budget")
    v = sheaf_check(F, cs)
    fails = [f"{f.reason} at {f.witness} on cover {f.cover.label()}" for f in v.failures]
    rep.details = {"covers": len(cs), "is_sheaf": v.is_sheaf, "failures": fails,
                   "warnings": cs.warnings}
    if not v.is_sheaf:
        return rep.fail("not a sheaf", doc, f"sheaf-check {args.file}")
    # a sheaf must also turn each square into a limit and keep the kernel-pair square a pullback
    emb = [f"{f.reason} at {f.witness} on cover {c.label()}" for c in cs for f in sends_to_limit(F, c)]
    emb += [f"kernel-pair square not a pullback at {w} on cover {c.label()}"
            for c in cs for w in jointly_monic_failures(F, c)]
    rep.details["embedding_failures"] = emb
    if emb:
        return rep.fail("sheaf fails the embedding checks", doc, f"sheaf-check {args.file}")
    rep.status, rep.summary = "holds", "sheaf"
    return rep


def cmd_embed_check(args, rep: Report) -> Report:
    cat = _category(args.category)
    r = embedding_check(cat, args.k, rep.details.pop("_budget"), audit=not args.no_audit)
    rep.details = {"category": r.category, "k": r.k, "covers": r.covers,
                   "presheaves": r.presheaves, "sheaves": r.sheaves,
                   "sheaf_iso_classes": r.sheaf_iso_classes,
                   "representables_are_sheaves": r.representables,
                   "limit_failures": len(r.limit_failures),
                   "jointly_monic_failures": len(r.jointly_monic_failures),
                   "non_sheaf_found": r.first_non_sheaf is not None,
                   "warnings": r.warnings}
    if r.truncated:
        rep.exit_code, rep.status, rep.summary = 3, "budget-exceeded", "enumeration truncated"
        return rep
    if not r.passed:
        bad = (r.limit_failures[0][0] if r.limit_failures else
               r.jointly_monic_failures[0][0] if r.jointly_monic_failures else None)
        if bad is None:
            obj = next(o for o, ok in r.representables.items() if not ok)
            bad = representable(cat, obj)
        return rep.fail("embedding checks fail", Document("presheaf", bad), "sheaf-check WITNESS.toml")
    rep.status, rep.summary = "holds", f"{r.sheaves} sheaves of {r.presheaves} presheaves pass"
    return rep


def _emit(args, doc: Document) -> str | None:
    text = serialize(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return None
    return text


COMMANDS = {
    "validate": cmd_validate, "pullback": cmd_pullback, "pushout": cmd_pushout,
    "verify": cmd_verify, "vk-check": cmd_vk_check, "prop-basic": cmd_prop_basic,
    "lemma-basic": cmd_lemma_basic, "union": cmd_union, "audit": cmd_audit,
    "match": cmd_match, "dpo": cmd_dpo, "covers": cmd_covers,
    "sheaf-check": cmd_sheaf_check, "embed-check": cmd_embed_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--engine", choices=("componentwise", "universal"), default="componentwise")
    common.add_argument("--budget", type=int, default=None,
                        help=f"step budget (default: ${BUDGET_ENV} or {DEFAULT_BUDGET})")
    common.add_argument("--limit", type=int, default=None, help="cap on enumerated items")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    common.add_argument("-o", "--output", default=None, help="write the output document here")

    p = argparse.ArgumentParser(prog="adhesive", description="Adhesive-category toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help):
        return sub.add_parser(name, parents=[common], help=help)

    add("validate", "check any document for well-formedness").add_argument("file")
    add("pullback", "pull back two morphisms with a common codomain").add_argument("files", nargs=2)
    add("pushout", "push out two morphisms with a common domain").add_argument("files", nargs=2)
    s = add("verify", "check that a square is a pullback or pushout")
    s.add_argument("file")
    s.add_argument("--kind", choices=("pullback", "pushout"), required=True)
    add("vk-check", "check the Van Kampen condition on a cube").add_argument("file")
    for name, text in (("prop-basic", "pushouts along monos are pullbacks, with mono legs"),
                       ("lemma-basic", "the kernel-pair square is a pushout and a pullback")):
        s = add(name, text)
        s.add_argument("files", nargs="*")
        s.add_argument("--random", type=int, default=0, help="check N random instances instead")
    add("union", "union of two subobjects via the pushout over their meet").add_argument("files", nargs="+")
    add("audit", "exhaustive adhesivity audit of a finite category").add_argument("category")
    for name, text in (("match", "enumerate mono matches of a rule"), ("dpo", "apply a rule")):
        s = add(name, text)
        s.add_argument("rule")
        s.add_argument("host")
        if name == "dpo":
            s.add_argument("--match", type=int, default=0, help="index of the match to use")
            s.add_argument("--match-file", default=None, help="morphism document giving the match")
    for name, text in (("covers", "generating covers of a finite category"),
                       ("sheaf-check", "sheaf condition for a presheaf"),
                       ("embed-check", "exhaustive embedding check on small presheaves")):
        s = add(name, text)
        s.add_argument("file" if name == "sheaf-check" else "category")
        s.add_argument("--no-audit", action="store_true", help="skip the adhesivity pre-audit")
        if name == "embed-check":
            s.add_argument("--k", type=int, default=2, help="largest carrier size")
    return p


def run(argv: list[str]) -> Report:
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    try:
        rep.details["_budget"] = _budget(args)
        with warnings.catch_warnings():
            # precondition warnings are carried in the report instead
            warnings.simplefilter("ignore")
            rep = COMMANDS[args.command](args, rep)
    except InputError as e:
        rep = Report(args.command, 2, "input-error", str(e))
    except BudgetExceeded as e:
        rep = Report(args.command, 3, "budget-exceeded", str(e))
    rep.details.pop("_budget", None)
    rep.format = args.format
    return rep


def main(argv: list[str] | None = None) -> int:
    rep = run(sys.argv[1:] if argv is None else argv)
    print(rep.as_json() if rep.format == "machine" else rep.as_text())
    return rep.exit_code
