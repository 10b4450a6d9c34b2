"""Command-line entry point: ``galcore <subcommand> ...``.

Exit codes: 0 success, 1 invalid input (bad file contents, failed
precondition), 2 usage error or unreadable file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .concepts import (
    ConceptLattice,
    PreconceptError,
    concept_labels,
    enumerate_concepts,
    gm_quotient,
    is_protoconcept,
    precon_interval,
    precon_members,
    reduced_labels,
)
from .context import CxtParseError, FormalContext, parse_cxt, polarity_of, relation_of, write_cxt
from .galois import GaloisConnection, is_perfect, leaves, nodes, validate_gc, validate_gc_adjoint
from .poset import CapExceededError, subset_label
from .rdf import NTriplesError, context_from_triples, parse_ntriples, schema_classes, schema_diff


class UsageError(Exception):
    pass


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(lattice: ConceptLattice) -> str:
    """Hasse diagram of a concept lattice in DOT, bottom to top.

    Node ``c<i>`` is the concept at position ``i`` in canonical order; labels
    show the objects and attributes introduced there.
    """
    lines = ["digraph concepts {", "  rankdir=BT;", "  node [shape=box];"]
    for i, (objs, atts) in enumerate(reduced_labels(lattice)):
        label = ", ".join(objs) + "\\n" + ", ".join(atts)
        lines.append(f"  c{i} [label={_dot_quote(label)}];")
    for lo, hi in sorted(lattice.covers()):
        lines.append(f"  c{lo} -> c{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# input helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None


def _write(path: str, text: str):
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror or e}") from None


def _load_cxt(path: str) -> FormalContext:
    try:
        return parse_cxt(_read(path))
    except CxtParseError as e:
        raise CxtParseError(f"{path}: {e}") from None


def _load_gc(path: str) -> GaloisConnection:
    try:
        return GaloisConnection.loads(_read(path))
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise ValueError(f"{path}: not a connection file ({e})") from None


def _labels(text: str | None) -> list[str]:
    if not text:
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def _map(text: str, labels) -> list[int]:
    """Comma-separated target positions, given as integers or as labels."""
    out = []
    for tok in _labels(text):
        if tok.lstrip("-").isdigit():
            out.append(int(tok))
        elif tok in labels:
            out.append(list(labels).index(tok))
        else:
            raise ValueError(f"unknown element {tok!r}")
    return out


def _concept_json(ctx: FormalContext, lattice: ConceptLattice) -> dict:
    return {
        "objects": list(ctx.g_labels),
        "attributes": list(ctx.m_labels),
        "concepts": [
            {"extent": ctx.objects(c.extent), "intent": ctx.attributes(c.intent)} for c in lattice
        ],
        "covers": [list(e) for e in sorted(lattice.covers())],
    }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _set(items) -> str:
    return "{" + ", ".join(items) + "}"


# --------------------------------------------------------------------------
# subcommands


def cmd_ctx(args, out) -> int:
    ctx = _load_cxt(args.file)
    if args.action == "validate":
        out.write(f"ok: {ctx.g_count} objects, {ctx.m_count} attributes, {len(ctx.pairs())} incidences\n")
    elif args.action == "show":
        width = max([len(l) for l in ctx.g_labels] + [0])
        out.write(" " * width + " " + " ".join(ctx.m_labels) + "\n")
        for i, g in enumerate(ctx.g_labels):
            cells = " ".join(("X" if ctx.incidence[i, j] else ".").ljust(len(m)) for j, m in enumerate(ctx.m_labels))
            out.write(f"{g.ljust(width)} {cells}".rstrip() + "\n")
    else:
        text = write_cxt(ctx)
        if parse_cxt(text) != ctx:
            out.write("roundtrip mismatch\n")
            return 1
        out.write(text)
    return 0


def cmd_concepts(args, out) -> int:
    ctx = _load_cxt(args.file)
    lattice = enumerate_concepts(ctx)
    if args.dot:
        _write(args.dot, export_dot(lattice))
    if args.json:
        out.write(_dump(_concept_json(ctx, lattice)))
    else:
        for i, c in enumerate(lattice):
            out.write(f"{i}\t{concept_labels(ctx, c)}\n")
    return 0


def cmd_preconcept(args, out) -> int:
    ctx = _load_cxt(args.file)
    C = ctx.object_mask(_labels(args.extent))
    D = ctx.attribute_mask(_labels(args.intent))
    if args.proto:
        out.write(f"protoconcept: {'yes' if is_protoconcept(ctx, C, D) else 'no'}\n")
    elif args.interval:
        lo, hi = precon_interval(ctx, C, D)
        out.write(f"lower {concept_labels(ctx, lo)}\nupper {concept_labels(ctx, hi)}\n")
    else:
        for c in precon_members(ctx, C, D):
            out.write(concept_labels(ctx, c) + "\n")
    return 0


def cmd_gm(args, out) -> int:
    ctx = _load_cxt(args.file)
    q = gm_quotient(ctx)
    for i, (a, b) in enumerate(q.elements):
        out.write(f"{i}\t{_set(ctx.objects(a))} | {_set(ctx.attributes(b))}\n")
        if args.exhaustive:
            objs, atts = q.leaf_members(i)
            out.write("\tobject leaf: " + " ".join(_set(ctx.objects(x)) for x in objs) + "\n")
            out.write("\tattribute leaf: " + " ".join(_set(ctx.attributes(x)) for x in atts) + "\n")
    pairs = [(i, j) for i in range(len(q)) for j in range(len(q)) if i != j and q.order[i, j]]
    out.write("order: " + " ".join(f"{i}<{j}" for i, j in pairs) + "\n")
    return 0


def _order_verdict(kind: str, a, b, contexts):
    from .ordering import le_pointwise, le_relation, preceq_P, preceq_PQ, preceq_Q, sq_nodes

    if kind == "relation":
        if contexts is None:
            a, b = relation_of(a), relation_of(b)
        else:
            a, b = contexts
        return le_relation(a, b)
    fns = {"pointwise": le_pointwise, "p": preceq_P, "q": preceq_Q, "pq": preceq_PQ, "nodes": sq_nodes}
    return fns[kind](a, b)


def cmd_order(args, out) -> int:
    from .rdf import align

    if args.a and args.b:
        ctx_a, ctx_b = align(_load_cxt(args.a), _load_cxt(args.b))
        pa, pb = polarity_of(ctx_a).gc, polarity_of(ctx_b).gc
        if pa is None and args.kind != "relation":
            raise CapExceededError("contexts too large to materialize their polarities")
        verdict = _order_verdict(args.kind, pa, pb, (ctx_a, ctx_b))
    elif args.gc_a and args.gc_b:
        verdict = _order_verdict(args.kind, _load_gc(args.gc_a), _load_gc(args.gc_b), None)
    else:
        raise UsageError("give either --a/--b (contexts) or --gc-a/--gc-b (connections)")
    out.write(f"{args.kind}: {verdict}\n")
    return 0


def _gc_lines(gc: GaloisConnection) -> list[str]:
    lines = []
    for side in ("P", "Q"):
        poset = gc.poset(side)
        ns = [poset.labels[x] for x in sorted(nodes(gc, side))]
        lines.append(f"nodes {side}: {_set(ns)}")
        dec = leaves(gc, side)
        parts = [_set(poset.labels[x] for x in sorted(leaf)) for leaf in dec.leaves]
        lines.append(f"leaves {side}: " + " ".join(parts))
    lines.append(f"perfect: {'yes' if is_perfect(gc) else 'no'}")
    return lines


def cmd_galcheck(args, out) -> int:
    gc = _load_gc(args.gc)
    r1, r2 = validate_gc(gc), validate_gc_adjoint(gc)
    out.write("closure definition: " + r1.summary() + "\n")
    out.write("adjunction definition: " + r2.summary() + "\n")
    if not (r1.ok and r2.ok):
        return 1
    out.write("\n".join(_gc_lines(gc)) + "\n")
    return 0


def cmd_embed(args, out) -> int:
    from .category import embed_into_polarity, embedding_relation

    gc = _load_gc(args.gc)
    if not validate_gc(gc).ok:
        raise ValueError("input is not a Galois connection")
    emb = embed_into_polarity(gc)
    if args.out:
        _write(args.out, _dump(emb.polarity.to_json()))
    if args.relation:
        _write(args.relation, write_cxt(embedding_relation(gc)))
    n, m = gc.P.size, gc.Q.size
    for p, mask in enumerate(emb.morphism.h):
        out.write(f"i_P({gc.P.labels[p]}) = {subset_label(int(mask), n)}\n")
    for q, mask in enumerate(emb.morphism.k):
        out.write(f"i_Q({gc.Q.labels[q]}) = {subset_label(int(mask), m)}\n")
    return 0


def cmd_morphism(args, out) -> int:
    from .category import characterize_morphism

    src, dst = _load_gc(args.src), _load_gc(args.dst)
    h, k = _map(args.h, dst.P.labels), _map(args.k, dst.Q.labels)
    rep = characterize_morphism(src, dst, h, k)
    out.write("\n".join(rep.lines()) + "\n")
    return 0


def cmd_rdf(args, out) -> int:
    if args.action == "ingest":
        ctx = context_from_triples(parse_ntriples(_read(args.file), args.file))
        text = write_cxt(ctx)
        if args.out:
            _write(args.out, text)
        else:
            out.write(text)
    elif args.action == "schema":
        schema = schema_classes(_load_cxt(args.file))
        if args.dot:
            out.write(export_dot(schema.lattice))
        else:
            for i, c in enumerate(schema.classes):
                out.write(f"{i}\t{_set(c.subjects)} {_set(c.predicates)}\n")
            for i, j in schema.subclass_of:
                out.write(f"{i} subclass of {j}\n")
    else:
        if not args.new:
            raise UsageError("rdf diff needs two files")
        old = context_from_triples(parse_ntriples(_read(args.file), args.file))
        new = context_from_triples(parse_ntriples(_read(args.new), args.new))
        out.write("\n".join(schema_diff(old, new).lines()) + "\n")
    return 0


def cmd_oracle(args, out) -> int:
    from .oracle import SweepSpec, sweep

    try:
        n, m = (int(x) for x in args.max.lower().split("x"))
    except ValueError:
        raise UsageError(f"--max expects NxM, got {args.max!r}") from None
    spec = SweepSpec(
        max_poset_size=args.poset_size,
        max_context_dims=(n, m),
        propositions=tuple(_labels(args.sweep)) or ("all",),
        seed=args.seed,
        samples=args.samples,
    )
    report = sweep(spec)
    if args.json:
        out.write(_dump(report.to_json()))
    else:
        for r in report.results:
            status = "ok" if r.ok else f"COUNTEREXAMPLE {json.dumps(r.counterexample)}"
            out.write(f"{r.name:<20} {r.checked:>8} checked  {r.seconds:7.2f}s  {status}\n")
    return 0 if report.ok else 1


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="galcore", description="Galois connections and formal concept analysis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ctx", help="check, print or rewrite a .cxt file")
    s.add_argument("action", choices=["validate", "show", "roundtrip"])
    s.add_argument("file")
    s.set_defaults(fn=cmd_ctx)

    s = sub.add_parser("concepts", help="list the concepts of a context")
    s.add_argument("file")
    s.add_argument("--dot", metavar="OUT", help="write the Hasse diagram in DOT")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_concepts)

    s = sub.add_parser("preconcept", help="concepts above a preconcept")
    s.add_argument("file")
    s.add_argument("--extent", default="", help="comma-separated object labels")
    s.add_argument("--intent", default="", help="comma-separated attribute labels")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--members", action="store_true", help="list every concept above (default)")
    g.add_argument("--interval", action="store_true", help="smallest and largest concept above")
    g.add_argument("--proto", action="store_true", help="is exactly one concept above")
    s.set_defaults(fn=cmd_preconcept)

    s = sub.add_parser("gm", help="order of admissible leaf pairs")
    s.add_argument("file")
    s.add_argument("--exhaustive", action="store_true", help="also list every subset in each leaf")
    s.set_defaults(fn=cmd_gm)

    s = sub.add_parser("order", help="compare two contexts or two connections")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--gc-a")
    s.add_argument("--gc-b")
    s.add_argument("--kind", required=True, choices=["pointwise", "relation", "p", "q", "pq", "nodes"])
    s.set_defaults(fn=cmd_order)

    s = sub.add_parser("galcheck", help="validate a connection file and describe it")
    s.add_argument("--gc", required=True)
    s.set_defaults(fn=cmd_galcheck)

    s = sub.add_parser("embed", help="embed a connection into the polarity of its powersets")
    s.add_argument("--gc", required=True)
    s.add_argument("--out", help="write the polarity as connection JSON")
    s.add_argument("--relation", help="write the induced relation as .cxt")
    s.set_defaults(fn=cmd_embed)

    s = sub.add_parser("morphism", help="check a pair of maps between two connections")
    s.add_argument("--src", required=True)
    s.add_argument("--dst", required=True)
    s.add_argument("--h", required=True, help="image of each element of P, comma-separated")
    s.add_argument("--k", required=True, help="image of each element of Q, comma-separated")
    s.set_defaults(fn=cmd_morphism)

    s = sub.add_parser("rdf", help="contexts and schema classes from N-Triples")
    s.add_argument("action", choices=["ingest", "schema", "diff"])
    s.add_argument("file")
    s.add_argument("new", nargs="?", help="second file for diff")
    s.add_argument("--out")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(fn=cmd_rdf)

    s = sub.add_parser("oracle", help="run the brute-force property sweeps")
    s.add_argument("--sweep", default="all", help="comma-separated sweep names, or all")
    s.add_argument("--max", default="3x3", help="context dimensions NxM (at most 3x3)")
    s.add_argument("--poset-size", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_oracle)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, out)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (CxtParseError, NTriplesError, PreconceptError, CapExceededError, ValueError, IndexError) as e:
        err.write(f"error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())
