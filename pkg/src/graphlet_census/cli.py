"""Command line entry point: ``graphlet-census <subcommand> ...``."""

from __future__ import annotations

import argparse
import hashlib
import io
import logging
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .census import OrbitFrequencyMatrix, esu_census, gtrie_census
from .compare import METRIC_MODES, SimilarityMatrix, cluster, gda_matrix
from .graph import read_edge_list, reciprocity, write_edge_list
from .graphlets import dump as dump_graphlets
from .graphlets import generate
from .gtrie import GTrie, build, deserialize, serialize
from .isomorphism import k_max
from .random_graphs import MODELS, erdos_renyi, model_graph, random_edges

log = logging.getLogger("graphlet_census")


class UsageError(Exception):
    """Bad invocation; reported with exit code 2."""


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    directed: bool = False
    k: int | None = None
    metric: str | None = None
    outputs: dict[str, str] = field(default_factory=dict)
    workers: int = 1
    verbosity: int = 0
    seed: int | None = None
    # Options that change results; recorded in output headers.
    recorded: dict[str, object] = field(default_factory=dict)

    def validate(self) -> None:
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.k is not None:
            limit = k_max(self.directed)
            if not 2 <= self.k <= limit:
                kind = "directed" if self.directed else "undirected"
                raise UsageError(f"-k must lie in 2..{limit} for {kind} graphlets")
        for path in self.inputs:
            if not os.path.isfile(path):
                raise UsageError(f"input file not found: {path}")


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _header(cfg: RunConfig) -> str:
    lines = [f"# graphlet-census {__version__}", f"# command: {cfg.subcommand}"]
    opts = " ".join(f"{k}={v}" for k, v in cfg.recorded.items())
    lines.append(f"# options: {opts}")
    for path in cfg.inputs:
        lines.append(f"# input: {os.path.basename(path)} sha256={_sha256(path)}")
    return "\n".join(lines) + "\n"


def _write(path: str, cfg: RunConfig, body: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_header(cfg))
        fh.write(body)
    log.info("wrote %s", path)


def _directedness(p: argparse.ArgumentParser) -> None:
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--directed", dest="directed", action="store_true",
                     help="treat edges as ordered pairs")
    grp.add_argument("--undirected", dest="directed", action="store_false",
                     help="treat edges as unordered pairs (default)")
    p.set_defaults(directed=False)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.add_argument("--seed", type=int, default=None,
                   help="random seed, recorded in output headers")


def _workers(p: argparse.ArgumentParser) -> None:
    p.add_argument("--workers", type=int, default=None,
                   help="census worker processes (default: available CPUs)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphlet-census",
        description="Directed and undirected graphlet census with g-tries.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    gen = sub.add_parser("gen", help="generate graphlets and write a g-trie file")
    gen.add_argument("-k", type=int, required=True, help="largest graphlet size")
    _directedness(gen)
    gen.add_argument("-o", "--output", required=True, help="g-trie file (.gt)")
    gen.add_argument("--out-graphlets", help="also write the graphlet set")
    _common(gen)

    for name, help_text in (("census", "orbit census with the g-trie"),
                            ("oracle-census", "orbit census with the ESU oracle")):
        c = sub.add_parser(name, help=help_text)
        c.add_argument("--input", required=True, help="edge list file")
        _directedness(c)
        c.add_argument("-k", type=int, required=True)
        c.add_argument("--gtrie", help="prebuilt g-trie file from 'gen'")
        c.add_argument("--out-fr", help="per-node orbit counts (CSV)")
        c.add_argument("--out-freq", help="per-graphlet frequencies (CSV)")
        c.add_argument("--oracle", action="store_true",
                       help="cross-check the g-trie census against the ESU oracle")
        _workers(c)
        _common(c)

    cmp_ = sub.add_parser("compare", help="pairwise GDD-agreement and dendrogram")
    cmp_.add_argument("--inputs", nargs="+", required=True)
    _directedness(cmp_)
    cmp_.add_argument("-k", type=int, required=True)
    cmp_.add_argument("--metric", choices=sorted(METRIC_MODES), default="gda")
    cmp_.add_argument("--gtrie", help="prebuilt g-trie file from 'gen'")
    cmp_.add_argument("--out-matrix", help="similarity matrix (CSV)")
    cmp_.add_argument("--out-newick", help="average-linkage dendrogram (Newick)")
    cmp_.add_argument("--out-heatmap", help="long-form pairwise values (CSV)")
    _workers(cmp_)
    _common(cmp_)

    rnd = sub.add_parser("random", help="write a random network edge list")
    rnd.add_argument("--nodes", type=int, required=True)
    rnd.add_argument("--density", type=float, help="edge probability (Erdos-Renyi)")
    rnd.add_argument("--edges", type=int, help="edge count (for --model)")
    rnd.add_argument("--model", choices=MODELS, default="er")
    _directedness(rnd)
    rnd.add_argument("-o", "--output", required=True)
    _common(rnd)

    st = sub.add_parser("stats", help="print basic network statistics")
    st.add_argument("--input", required=True)
    _directedness(st)
    _common(st)
    return parser


def _load_trie(path: str | None, k: int, directed: bool) -> GTrie:
    if path is None:
        return build(generate(k, directed))
    with open(path, encoding="utf-8") as fh:
        trie = deserialize(fh)
    if trie.directed != directed or trie.max_depth != k:
        raise UsageError(f"{path} holds a k={trie.max_depth} "
                         f"{'directed' if trie.directed else 'undirected'} g-trie")
    return trie


def fr_csv(m: OrbitFrequencyMatrix) -> str:
    out = io.StringIO()
    out.write("node," + ",".join(f"orbit{j}" for j in range(m.orbit_count)) + "\n")
    for label, row in zip(m.node_labels, m.counts):
        out.write(label + "," + ",".join(map(str, row.tolist())) + "\n")
    return out.getvalue()


def freq_csv(m: OrbitFrequencyMatrix) -> str:
    out = io.StringIO()
    out.write("graphlet_id,canonical_key,frequency\n")
    for gi, (key, f) in enumerate(zip(m.graphlets.keys, m.graphlet_freqs.tolist())):
        out.write(f"{gi},{key.hex()},{f}\n")
    return out.getvalue()


def matrix_csv(s: SimilarityMatrix) -> str:
    out = io.StringIO()
    out.write("network," + ",".join(s.ids) + "\n")
    for name, row in zip(s.ids, s.values):
        out.write(name + "," + ",".join(f"{v:.4f}" for v in row) + "\n")
    return out.getvalue()


def heatmap_csv(s: SimilarityMatrix) -> str:
    out = io.StringIO()
    out.write("netA,netB,gda\n")
    for i, a in enumerate(s.ids):
        for j, b in enumerate(s.ids):
            out.write(f"{a},{b},{s.values[i, j]:.4f}\n")
    return out.getvalue()


def _unique_ids(paths: list[str]) -> list[str]:
    ids, seen = [], {}
    for p in paths:
        base = os.path.basename(p)
        seen[base] = seen.get(base, 0) + 1
        ids.append(base if seen[base] == 1 else f"{base}#{seen[base]}")
    return ids


def _cmd_gen(args, cfg: RunConfig) -> int:
    gs = generate(args.k, args.directed)
    trie = build(gs)
    buf = io.StringIO()
    serialize(trie, buf)
    _write(args.output, cfg, buf.getvalue())
    if args.out_graphlets:
        buf = io.StringIO()
        dump_graphlets(gs, buf)
        _write(args.out_graphlets, cfg, buf.getvalue())
    print(f"{len(gs)} graphlets, {gs.orbit_count} orbits, {trie.node_count()} trie nodes")
    return 0


def _cmd_census(args, cfg: RunConfig) -> int:
    g = read_edge_list(args.input, args.directed)
    trie = _load_trie(args.gtrie, args.k, args.directed)
    if cfg.subcommand == "oracle-census":
        result = esu_census(g, args.k, trie.source_set, workers=cfg.workers)
    else:
        result = gtrie_census(g, trie, workers=cfg.workers)
        if args.oracle:
            check = esu_census(g, args.k, trie.source_set, workers=cfg.workers)
            if not result == check:
                raise RuntimeError("g-trie census disagrees with the ESU oracle")
            log.info("oracle check passed")
    if args.out_fr:
        _write(args.out_fr, cfg, fr_csv(result))
    if args.out_freq:
        _write(args.out_freq, cfg, freq_csv(result))
    print(f"{g.node_count} nodes, {int(result.graphlet_freqs.sum())} occurrences")
    return 0


def _cmd_compare(args, cfg: RunConfig) -> int:
    nets = []
    for path in args.inputs:
        try:
            nets.append(read_edge_list(path, args.directed))
        except ValueError as exc:
            raise ValueError(f"{path}: {exc}") from exc
    trie = _load_trie(args.gtrie, args.k, args.directed)
    ids = _unique_ids(args.inputs)
    sim = gda_matrix(nets, args.k, args.directed, METRIC_MODES[args.metric],
                     ids=ids, trie=trie, workers=cfg.workers)
    if args.out_matrix:
        _write(args.out_matrix, cfg, matrix_csv(sim))
    if args.out_heatmap:
        _write(args.out_heatmap, cfg, heatmap_csv(sim))
    tree = cluster(sim)
    if args.out_newick:
        _write(args.out_newick, cfg, tree + "\n")
    else:
        print(tree)
    return 0


def _cmd_random(args, cfg: RunConfig) -> int:
    if args.density is not None:
        g = erdos_renyi(args.nodes, args.density, args.directed, args.seed)
    elif args.edges is not None:
        if args.model != "er" and not args.directed:
            raise UsageError(f"model {args.model!r} needs --directed")
        if args.model == "er":
            g = random_edges(args.nodes, args.edges, args.directed, args.seed)
        else:
            g = model_graph(args.model, args.nodes, args.edges, args.seed)
    else:
        raise UsageError("give --density or --edges")
    buf = io.StringIO()
    write_edge_list(g, buf)
    _write(args.output, cfg, buf.getvalue())
    return 0


def _cmd_stats(args, cfg: RunConfig) -> int:
    g = read_edge_list(args.input, args.directed)
    print(f"nodes {g.node_count}")
    print(f"edges {g.edge_count}")
    print(f"self_loops_dropped {g.self_loops_dropped}")
    if g.directed:
        print(f"reciprocity {reciprocity(g):.6f}")
    return 0


COMMANDS = {"gen": _cmd_gen, "census": _cmd_census, "oracle-census": _cmd_census,
            "compare": _cmd_compare, "random": _cmd_random, "stats": _cmd_stats}


def _config(args) -> RunConfig:
    inputs = []
    if getattr(args, "input", None):
        inputs.append(args.input)
    inputs.extend(getattr(args, "inputs", None) or [])
    if getattr(args, "gtrie", None):
        inputs.append(args.gtrie)
    recorded: dict[str, object] = {"directed": int(args.directed)}
    for name in ("k", "metric", "oracle", "model", "nodes", "edges", "density", "seed"):
        value = getattr(args, name, None)
        if value is not None and value is not False:
            recorded[name] = int(value) if isinstance(value, bool) else value
    outputs = {name: getattr(args, name) for name in
               ("output", "out_fr", "out_freq", "out_matrix", "out_newick",
                "out_heatmap", "out_graphlets") if getattr(args, name, None)}
    workers = getattr(args, "workers", None)
    return RunConfig(
        subcommand=args.subcommand, inputs=inputs, directed=args.directed,
        k=getattr(args, "k", None), metric=getattr(args, "metric", None),
        outputs=outputs, workers=workers if workers is not None else (os.cpu_count() or 1),
        verbosity=args.verbose, seed=args.seed, recorded=recorded)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s: %(message)s")
    try:
        cfg = _config(args)
        cfg.validate()
        return COMMANDS[args.subcommand](args, cfg)
    except UsageError as exc:
        print(f"graphlet-census: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, RuntimeError, OverflowError) as exc:
        print(f"graphlet-census: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
