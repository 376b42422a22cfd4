"""Batch command-line interface.

Results go to stdout, diagnostics to stderr.  Exit status: 0 on success,
1 when a computation stopped at a limit, 2 on bad input.

Text arguments (presentations, groups, permutations) may be given inline,
as ``@path``, or as the path of an existing file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .abelian import IntMatrix, abelian_invariants, format_abelian, smith_normal_form
from .backtrack import centralizer, element_conjugacy, set_stabilizer
from .blocks import is_primitive, minimal_block_partition
from .bsgs import PermGroup, random_schreier, verify_chain
from .coset_table import CosetLimitError
from .enumerator import EnumerationLimitError, Strategy, enumerate_cosets
from .low_index import low_index_subgroups, quotient_abelian_probe
from .perm import Permutation, perm_parse
from .rewriting import reidemeister_presentation
from .series import (derived_series, is_nilpotent, is_perfect, is_soluble,
                     lower_central_series, normal_closure)
from .tietze import tietze_simplify
from .words import Presentation, PresentationSyntaxError, parse_presentation

EXIT_OK = 0
EXIT_LIMIT = 1
EXIT_INPUT = 2

_JSON_SAFE = 2**53


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


# -- JSON ---------------------------------------------------------------------

def _jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > _JSON_SAFE else x
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def emit_json(result: dict) -> str:
    """Compact JSON with the record's key order; huge ints become strings."""
    return json.dumps(_jsonable(result), separators=(",", ":"))


# -- input helpers ------------------------------------------------------------

def read_text(value: str) -> str:
    if value.startswith("@"):
        path = value[1:]
        try:
            with open(path) as fh:
                return fh.read()
        except OSError as err:
            raise InputError(f"cannot read {path}: {err.strerror}") from None
    if os.path.isfile(value):
        with open(value) as fh:
            return fh.read()
    return value


def _presentation(args) -> Presentation:
    if not args.presentation:
        raise InputError("--presentation is required")
    return parse_presentation(read_text(args.presentation))


def _group(args, attr: str = "group") -> PermGroup:
    value = getattr(args, attr)
    if not value:
        raise InputError(f"--{attr} is required")
    return PermGroup.from_text(read_text(value))


def _perm(value: str | None, degree: int, flag: str) -> Permutation:
    if not value:
        raise InputError(f"--{flag} is required")
    return perm_parse(read_text(value).strip(), degree)


def _points(value: str | None, flag: str) -> list[int]:
    if value is None:
        raise InputError(f"--{flag} is required")
    text = value.strip().strip("{}")
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"--{flag} expects integers, got {value!r}") from None


def _strategy(args) -> Strategy:
    return Strategy(kind=args.strategy, max_cosets=args.max_cosets)


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _perm_list(gens) -> list[str]:
    return [str(g) for g in gens]


# -- subcommands --------------------------------------------------------------
# Each returns (record, text lines, exit status).

def cmd_enumerate(args):
    p = _presentation(args)
    h = p.parse_subgroup(read_text(args.subgroup or ""))
    try:
        res = enumerate_cosets(p, h, _strategy(args))
    except EnumerationLimitError as err:
        stats = err.stats()
        print(f"error: {err}", file=sys.stderr)
        return stats, [f"{k} {v if v is not None else 'none'}" for k, v in stats.items()], EXIT_LIMIT
    rec = res.stats()
    lines = [f"{k} {v}" for k, v in rec.items()]
    if args.table:
        dump = res.table.dump()
        rec = dict(rec, table=dump)
        lines.append(dump.rstrip("\n"))
    return rec, lines, EXIT_OK


def cmd_order(args):
    p = _presentation(args)
    try:
        res = enumerate_cosets(p, None, _strategy(args))
    except EnumerationLimitError as err:
        print(f"error: {err}", file=sys.stderr)
        stats = err.stats()
        print(" ".join(f"{k}={v}" for k, v in stats.items()), file=sys.stderr)
        return {"order": None}, ["order unknown"], EXIT_LIMIT
    return {"order": str(res.index)}, [str(res.index)], EXIT_OK


def cmd_lowindex(args):
    p = _presentation(args)
    if args.index is None or args.index < 1:
        raise InputError("--index N (N >= 1) is required")
    result = low_index_subgroups(p, args.index, args.classes)
    probe = quotient_abelian_probe(result, p) if args.probe else None
    records = []
    lines = []
    for k, s in enumerate(result.subgroups):
        rec = {"index": s.index, "generators": [str(w) for w in s.generators.generators]}
        lines.append(f"subgroup {k + 1} index {s.index}")
        lines.append(f"  generators {s.generators if s.generators.generators else '1'}")
        if args.table:
            rec["table"] = s.table.dump()
            lines += ["  " + ln for ln in s.table.dump().splitlines()]
        if probe is not None:
            _, free_rank, torsion = probe[k]
            rec["abelian"] = {"torsion": list(torsion), "free_rank": free_rank}
            lines.append(f"  abelian {format_abelian(torsion, free_rank)}")
        records.append(rec)
    if probe is not None and any(fr > 0 for _, fr, _ in probe):
        lines.append("infinite (some subgroup has infinite abelianisation)")
    return {"subgroups": records}, lines, EXIT_OK


def _presentation_record(q: Presentation) -> dict:
    return {"generators": list(q.generators), "relators": [str(r) for r in q.relators]}


def cmd_rewrite(args):
    p = _presentation(args)
    h = p.parse_subgroup(read_text(args.subgroup or ""))
    try:
        res = enumerate_cosets(p, h, _strategy(args))
    except EnumerationLimitError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.stats(), [], EXIT_LIMIT
    q = reidemeister_presentation(p, res.table)
    if args.simplify:
        q = tietze_simplify(q)
    return _presentation_record(q), [str(q)], EXIT_OK


def cmd_simplify(args):
    q = tietze_simplify(_presentation(args), budget=args.budget)
    return _presentation_record(q), [str(q)], EXIT_OK


def cmd_abelian(args):
    if args.matrix:
        m = IntMatrix.from_text(read_text(args.matrix))
        diag, rank = smith_normal_form(m)
        return ({"diagonal": list(diag), "rank": rank},
                [" ".join(map(str, diag)) or "0", f"rank {rank}"], EXIT_OK)
    torsion, free_rank = abelian_invariants(_presentation(args))
    return ({"torsion": list(torsion), "free_rank": free_rank},
            [format_abelian(torsion, free_rank)], EXIT_OK)


def _chain(g: PermGroup, args):
    if args.seed is None:
        return g.chain
    chain = verify_chain(g, random_schreier(g, args.trials, seed=args.seed))
    g._chain = chain
    return chain


def cmd_bsgs(args):
    g = _group(args)
    chain = _chain(g, args)
    rec = {"base": chain.base, "orbit_lengths": chain.orbit_lengths(),
           "order": str(chain.order())}
    lines = ["base " + " ".join(map(str, chain.base)),
             "orbit_lengths " + " ".join(map(str, chain.orbit_lengths())),
             f"order {chain.order()}"]
    if args.table:
        rec["strong_generators"] = _perm_list(chain.strong_generators)
        lines += ["strong_generators"] + _perm_list(chain.strong_generators)
    return rec, lines, EXIT_OK


def cmd_member(args):
    g = _group(args)
    x = _perm(args.perm, g.degree, "perm")
    ok = x in g
    return {"member": ok}, [_yes(ok)], EXIT_OK


def _format_partition(blocks) -> str:
    return " ".join("{" + ",".join(map(str, b)) + "}" for b in blocks)


def cmd_blocks(args):
    g = _group(args)
    if args.pair:
        pts = _points(args.pair, "pair")
        if len(pts) != 2:
            raise InputError("--pair expects two points")
        blocks = minimal_block_partition(g, *pts)
        return {"blocks": blocks}, [_format_partition(blocks)], EXIT_OK
    prim = is_primitive(g)
    return {"primitive": prim}, [f"primitive {_yes(prim)}"], EXIT_OK


def _subgroup_record(h: PermGroup) -> tuple[dict, list[str]]:
    rec = {"order": str(h.order()), "generators": _perm_list(h.generators)}
    lines = [f"order {h.order()}"] + [f"  {s}" for s in h.generators]
    return rec, lines


def cmd_closure(args):
    g = _group(args)
    if not args.subgroup:
        raise InputError("--subgroup (permutations) is required")
    text = read_text(args.subgroup)
    gens = [perm_parse(s.strip(), g.degree)
            for s in text.replace(";", "\n").splitlines() if s.strip()]
    n = normal_closure(g, PermGroup(gens, g.degree))
    rec, lines = _subgroup_record(n)
    return rec, lines, EXIT_OK


def cmd_series(args):
    g = _group(args)
    derived = [t.order() for t in derived_series(g)]
    lower = [t.order() for t in lower_central_series(g)]
    rec = {"derived": [str(o) for o in derived], "lower_central": [str(o) for o in lower],
           "soluble": is_soluble(g), "nilpotent": is_nilpotent(g), "perfect": is_perfect(g)}
    lines = ["derived " + " ".join(map(str, derived)),
             "lower_central " + " ".join(map(str, lower)),
             f"soluble {_yes(rec['soluble'])}",
             f"nilpotent {_yes(rec['nilpotent'])}",
             f"perfect {_yes(rec['perfect'])}"]
    return rec, lines, EXIT_OK


def cmd_centralizer(args):
    g = _group(args)
    rec, lines = _subgroup_record(centralizer(g, _perm(args.perm, g.degree, "perm")))
    return rec, lines, EXIT_OK


def cmd_setstab(args):
    g = _group(args)
    rec, lines = _subgroup_record(set_stabilizer(g, _points(args.set, "set")))
    return rec, lines, EXIT_OK


def cmd_conjugate(args):
    g = _group(args)
    x = _perm(args.perm, g.degree, "perm")
    y = _perm(args.target, g.degree, "target")
    h = element_conjugacy(g, x, y)
    if h is None:
        return {"conjugate": False, "witness": None}, ["no"], EXIT_OK
    return {"conjugate": True, "witness": str(h)}, [f"yes {h}"], EXIT_OK


COMMANDS = {
    "enumerate": (cmd_enumerate, "coset enumeration: index and statistics"),
    "order": (cmd_order, "order of a finitely presented group"),
    "lowindex": (cmd_lowindex, "subgroups of index at most N"),
    "rewrite": (cmd_rewrite, "Reidemeister-Schreier subgroup presentation"),
    "simplify": (cmd_simplify, "Tietze simplification"),
    "abelian": (cmd_abelian, "abelian invariants (or SNF of --matrix)"),
    "bsgs": (cmd_bsgs, "base, basic orbit lengths and order"),
    "member": (cmd_member, "membership test"),
    "blocks": (cmd_blocks, "minimal block system or primitivity"),
    "closure": (cmd_closure, "normal closure of a subgroup"),
    "series": (cmd_series, "derived and lower central series"),
    "centralizer": (cmd_centralizer, "centralizer of an element"),
    "setstab": (cmd_setstab, "setwise stabilizer"),
    "conjugate": (cmd_conjugate, "conjugacy of two elements"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON record")
    common.add_argument("--presentation", help="< gens | relators >")
    common.add_argument("--subgroup", help="subgroup words, or permutations for closure")
    common.add_argument("--strategy", choices=["hlt", "felsch"], default="felsch")
    common.add_argument("--max-cosets", type=int, default=10**6)
    common.add_argument("--index", type=int)
    common.add_argument("--classes", action="store_true",
                        help="one subgroup per conjugacy class")
    common.add_argument("--probe", action="store_true",
                        help="abelian invariants of each subgroup")
    common.add_argument("--table", action="store_true",
                        help="also print coset tables / strong generators")
    common.add_argument("--simplify", action="store_true",
                        help="Tietze-simplify the rewritten presentation")
    common.add_argument("--budget", type=int, default=1000)
    common.add_argument("--matrix", help="integer matrix: 'rows cols' then entries")
    common.add_argument("--seed", type=int, help="use the randomised Schreier-Sims")
    common.add_argument("--trials", type=int, default=50)
    common.add_argument("--group", help="'degree n' then one permutation per line")
    common.add_argument("--perm", help="a permutation in cycle notation")
    common.add_argument("--target", help="second permutation for conjugate")
    common.add_argument("--pair", help="two points, e.g. 1,3")
    common.add_argument("--set", help="point set, e.g. 1,2")
    parser = _Parser(prog="cgtools", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.max_cosets < 1:
            raise InputError("--max-cosets must be positive")
        func = COMMANDS[args.command][0]
        rec, lines, status = func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except PresentationSyntaxError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except CosetLimitError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(emit_json(rec))
    else:
        for ln in lines:
            print(ln)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
