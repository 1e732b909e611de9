"""Command-line front end.

Every library operation is reachable as a subcommand over automaton text
files.  Exit codes: 0 when the command succeeds or the checked property
holds, 1 when a checked property fails or compared languages differ (the
witness goes to standard output and, when requested, to the report file),
2 on usage, parse, or precondition errors (message on standard error).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .automaton import Generator, is_nonblocking, language_compare, trim
from .consistency import (
    check_gcc,
    check_normal,
    check_observer,
    check_occ,
    check_paranormal,
    find_gcc_alphabet,
)
from .decentral import (
    build_cover,
    decentralized_supcon,
    monolithic_supcon,
    reduce_plant,
    verify_lemma1,
    verify_theorem1,
)
from .errors import ParseError, ToolkitError
from .harness import CLAIMS, replicate
from .langops import ObservableSet, inverse_project, meet, project, sync
from .oracle import InstanceConfig
from .synthesis import is_controllable, supcon
from .textio import (
    format_replication_report,
    format_theorem_report,
    load,
    save,
    serialize,
)


def _parse_obs(value: str) -> ObservableSet:
    labels = [p for chunk in value.split(",") for p in chunk.split() if p]
    return ObservableSet(labels)


def _emit_generator(g: Generator, out: str | None) -> None:
    if out:
        save(g, out)
    else:
        sys.stdout.write(serialize(g))


def _emit_text(text: str, report: str | None) -> None:
    sys.stdout.write(text)
    if report:
        with open(report, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _verdict_text(label: str, ok: bool, witness) -> str:
    lines = ["%s: %s" % (label, "holds" if ok else "fails")]
    if witness is not None:
        lines.append("witness %s" % witness.describe())
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="gcckit",
        description="Supervisory-control toolkit for discrete-event systems.",
    )
    top.add_argument("--version", action="version", version="gcckit %s" % __version__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a file and check well-formedness")
    p.add_argument("file")

    p = sub.add_parser("trim", help="restrict to reachable and coreachable states")
    p.add_argument("file")
    p.add_argument("-o", "--out")

    p = sub.add_parser("nonblocking", help="check that every reachable state is coreachable")
    p.add_argument("file")
    p.add_argument("--report")

    for name, help_text in (
        ("sync", "synchronous product of two automata"),
        ("meet", "product over a common alphabet"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("-o", "--out")

    p = sub.add_parser("project", help="natural projection onto observable labels")
    p.add_argument("file")
    p.add_argument("--obs", required=True)
    p.add_argument("-o", "--out")

    p = sub.add_parser("invproject", help="lift onto a larger alphabet by self-loops")
    p.add_argument("file")
    p.add_argument("--alphabet", required=True, help="file providing the target alphabet")
    p.add_argument("-o", "--out")

    p = sub.add_parser("supcon", help="supremal controllable nonblocking supervisor")
    p.add_argument("--plant", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("-o", "--out")

    p = sub.add_parser("controllable", help="controllability of a candidate language")
    p.add_argument("--cand", required=True)
    p.add_argument("--plant", required=True)
    p.add_argument("--report")

    p = sub.add_parser("check", help="consistency and observation properties")
    p.add_argument(
        "property",
        choices=["gcc", "occ", "observer", "normal", "paranormal"],
    )
    p.add_argument("file", help="the plant (for normal/paranormal: the candidate)")
    p.add_argument("--obs", required=True)
    p.add_argument("--mode", choices=["literal", "agreement"], default="literal")
    p.add_argument("--which", choices=["marked", "closed"], default="marked")
    p.add_argument("--plant", help="plant file (normal/paranormal only)")
    p.add_argument("--report")

    p = sub.add_parser("find-gcc-alphabet", help="erasure search for an observable set")
    p.add_argument("file")
    p.add_argument("--mode", choices=["literal", "agreement"], default="literal")
    p.add_argument("--report")

    p = sub.add_parser("cover", help="lookalike cells of a consistent projection")
    p.add_argument("file")
    p.add_argument("--obs", required=True)
    p.add_argument("--mode", choices=["literal", "agreement"], default="literal")

    p = sub.add_parser("reduce", help="quotient plant over the observable alphabet")
    p.add_argument("file")
    p.add_argument("--obs", required=True)
    p.add_argument("--mode", choices=["literal", "agreement"], default="literal")
    p.add_argument("-o", "--out")

    p = sub.add_parser("decsup", help="decentralized synthesis against the reduced plant")
    p.add_argument("--plant", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--obs", required=True)
    p.add_argument("--mode", choices=["literal", "agreement"], default="literal")
    p.add_argument("-o", "--out")

    p = sub.add_parser("monosup", help="monolithic synthesis against the full plant")
    p.add_argument("--plant", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--obs", required=True)
    p.add_argument("-o", "--out")

    p = sub.add_parser("verify", help="claim verifiers")
    p.add_argument("claim", choices=["theorem1", "lemma1"])
    p.add_argument("--plant", required=True)
    p.add_argument("--spec", help="observable-level specification (theorem1)")
    p.add_argument("--sup0", help="decentralized supervisor file (lemma1)")
    p.add_argument("--obs", help="observable labels (theorem1)")
    p.add_argument("--mode", choices=["literal", "agreement"], default="literal")
    p.add_argument("--report")

    p = sub.add_parser("replicate", help="randomized replication of the claims")
    p.add_argument("--claims", required=True, help="comma list from: %s" % ",".join(CLAIMS))
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", required=True)
    p.add_argument("--mode", choices=["literal", "agreement"], default="literal")
    p.add_argument("--max-states", type=int, default=6)
    p.add_argument("--max-spec-states", type=int, default=4)
    p.add_argument("--max-events", type=int, default=5)
    p.add_argument("--density", type=float, default=0.35)
    p.add_argument("--controllable-fraction", type=float, default=0.5)
    p.add_argument("--observable-fraction", type=float, default=0.5)
    p.add_argument("--cyclic", action="store_true", help="allow cyclic instances")
    p.add_argument("--report")

    p = sub.add_parser("compare", help="compare closed or marked languages")
    p.add_argument("--which", choices=["marked", "closed"], default="marked")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--report")

    return top


def _run(args) -> int:
    cmd = args.command

    if cmd == "validate":
        g = load(args.file)
        sys.stdout.write(
            "ok: %s states=%d events=%d transitions=%d\n"
            % (g.name, g.n_states, len(g.alphabet), len(g.transitions))
        )
        return 0

    if cmd == "trim":
        _emit_generator(trim(load(args.file)), args.out)
        return 0

    if cmd == "nonblocking":
        ok, wit = is_nonblocking(load(args.file))
        _emit_text(_verdict_text("nonblocking", ok, wit), args.report)
        return 0 if ok else 1

    if cmd in ("sync", "meet"):
        op = sync if cmd == "sync" else meet
        _emit_generator(op(load(args.left), load(args.right)), args.out)
        return 0

    if cmd == "project":
        _emit_generator(project(load(args.file), _parse_obs(args.obs)), args.out)
        return 0

    if cmd == "invproject":
        target = load(args.alphabet).alphabet
        _emit_generator(inverse_project(load(args.file), target), args.out)
        return 0

    if cmd == "supcon":
        res = supcon(load(args.plant), load(args.spec))
        _emit_generator(res.supervisor, args.out)
        sys.stderr.write(
            "supcon: states=%d empty=%s disabled=%d\n"
            % (res.supervisor.n_states, str(res.empty).lower(), len(res.disabled))
        )
        return 0

    if cmd == "controllable":
        ok, wit = is_controllable(load(args.cand), load(args.plant))
        _emit_text(_verdict_text("controllable", ok, wit), args.report)
        return 0 if ok else 1

    if cmd == "check":
        obs = _parse_obs(args.obs)
        if args.property in ("normal", "paranormal"):
            if not args.plant:
                raise ToolkitError("check %s requires --plant" % args.property)
            k = load(args.file)
            g = load(args.plant)
            fn = check_normal if args.property == "normal" else check_paranormal
            ok, wit = fn(k, g, obs)
        elif args.property == "gcc":
            ok, wit = check_gcc(load(args.file), obs, args.mode)
        elif args.property == "occ":
            ok, wit = check_occ(load(args.file), obs)
        else:
            ok, wit = check_observer(load(args.file), obs, args.which)
        label = args.property if args.property != "observer" else "observer-%s" % args.which
        _emit_text(_verdict_text(label, ok, wit), args.report)
        return 0 if ok else 1

    if cmd == "find-gcc-alphabet":
        trace = find_gcc_alphabet(load(args.file), args.mode)
        lines = ["erased:%s" % "".join(" %s" % l for l in trace.erased)]
        for lab, (qi, qj) in trace.rejected:
            lines.append("rejected: %s at states %d,%d" % (lab, qi, qj))
        lines.append("observable:%s" % "".join(" %s" % l for l in sorted(trace.result.labels)))
        _emit_text("\n".join(lines) + "\n", args.report)
        return 0

    if cmd == "cover":
        cover = build_cover(load(args.file), _parse_obs(args.obs), args.mode)
        lines = [
            "cell %d:%s" % (i, "".join(" %d" % q for q in cell))
            for i, cell in enumerate(cover.cells)
        ]
        sys.stdout.write("\n".join(lines) + "\n")
        return 0

    if cmd == "reduce":
        g = load(args.file)
        cover = build_cover(g, _parse_obs(args.obs), args.mode)
        _emit_generator(reduce_plant(g, cover).generator, args.out)
        return 0

    if cmd == "decsup":
        res = decentralized_supcon(
            load(args.plant), load(args.spec), _parse_obs(args.obs), args.mode
        )
        _emit_generator(res.supervisor, args.out)
        sys.stderr.write(
            "decsup: states=%d empty=%s disabled=%d\n"
            % (res.supervisor.n_states, str(res.empty).lower(), len(res.disabled))
        )
        return 0

    if cmd == "monosup":
        res = monolithic_supcon(load(args.plant), load(args.spec), _parse_obs(args.obs))
        _emit_generator(res.supervisor, args.out)
        sys.stderr.write(
            "monosup: states=%d empty=%s disabled=%d\n"
            % (res.supervisor.n_states, str(res.empty).lower(), len(res.disabled))
        )
        return 0

    if cmd == "verify":
        if args.claim == "theorem1":
            if not (args.spec and args.obs):
                raise ToolkitError("verify theorem1 requires --spec and --obs")
            obs = _parse_obs(args.obs)
            rec = verify_theorem1(load(args.plant), load(args.spec), obs, args.mode)
            _emit_text(format_theorem_report(rec, obs, args.mode), args.report)
            return 0 if rec.equal else 1
        if not args.sup0:
            raise ToolkitError("verify lemma1 requires --sup0")
        ok, wit = verify_lemma1(load(args.plant), load(args.sup0))
        _emit_text(_verdict_text("lemma1-nonblocking", ok, wit), args.report)
        return 0 if ok else 1

    if cmd == "replicate":
        claims = [c for c in args.claims.split(",") if c]
        cfg = InstanceConfig(
            max_states=args.max_states,
            max_events=args.max_events,
            transition_density=args.density,
            controllable_fraction=args.controllable_fraction,
            observable_fraction=args.observable_fraction,
            acyclic_only=not args.cyclic,
            max_spec_states=args.max_spec_states,
        )
        reports = replicate(claims, args.trials, args.seed, args.mode, cfg)
        text = "".join(format_replication_report(reports[c]) for c in reports)
        _emit_text(text, args.report)
        return 0

    if cmd == "compare":
        res = language_compare(load(args.left), load(args.right), args.which)
        lines = ["compare %s: %s" % (args.which, res.verdict)]
        if res.in_left_only is not None:
            lines.append("only-left %s" % res.in_left_only.describe())
        if res.in_right_only is not None:
            lines.append("only-right %s" % res.in_right_only.describe())
        _emit_text("\n".join(lines) + "\n", args.report)
        return 0 if res.equal else 1

    raise AssertionError("unhandled command %r" % cmd)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _run(args)
    except (ToolkitError, ParseError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except OSError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
