"""Command line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input (group spec, map,
flags), 3 the group could not be realized, 4 a size budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cache import ResolutionCache
from .cohomology import dec_ladder, degree_one_identities, inflation, is_fully_decomposable
from .groups.core import GroupError, OrderCapExceeded
from .groups.spec import SpecSyntaxError, name_matching_hom, realize
from .groups.structure import degree_one_classifier, is_p_group
from .resolution import GREEDY, MINIMAL, BudgetExceeded, build_resolution, cocycle_basis, cohomology_dims
from .scenarios import (
    ScenarioReport,
    scenario_census,
    scenario_cyclic_tower,
    scenario_metacyclic,
    scenario_quaternion,
    scenario_splitting_without_vanishing,
)

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_REALIZE, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class CliConfig:
    p: int = 2
    max_degree: int = 4
    strategy: str | None = None  # None picks minimal for p-groups, greedy otherwise
    fmt: str = "text"
    cache_dir: str | None = None
    extended: bool = False
    threads: int = 1
    use_cache: bool = True

    def __post_init__(self):
        if not _is_prime(self.p):
            raise UsageError(f"p = {self.p} is not prime")
        if self.max_degree < 1:
            raise UsageError("--max-degree must be >= 1")
        if self.fmt not in ("text", "json"):
            raise UsageError("--format must be text or json")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")

    def cache(self):
        return ResolutionCache(self.cache_dir) if self.use_cache else None

    def resolution(self, G, N):
        strategy = self.strategy or (MINIMAL if is_p_group(G, self.p) else GREEDY)
        if strategy == MINIMAL and not is_p_group(G, self.p):
            raise UsageError(f"--strategy minimal needs a {self.p}-group; {G.label} has order {G.order}")
        length = N if strategy == MINIMAL else N + 1
        return build_resolution(G, self.p, length, strategy, cache=self.cache())


def _tuple(xs) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


# --- commands ------------------------------------------------------------------------
# each returns a ScenarioReport; text rendering reads the same fields as JSON


def cmd_dims(cfg: CliConfig, spec: str) -> ScenarioReport:
    rep = ScenarioReport("dims", {"group": spec, "p": cfg.p, "max_degree": cfg.max_degree})
    G = realize(spec)
    res = cfg.resolution(G, cfg.max_degree)
    rep.result = {"order": G.order, "strategy": res.strategy, "dims": cohomology_dims(res, cfg.max_degree)}
    return rep


def cmd_fingerprint(cfg: CliConfig, spec: str) -> ScenarioReport:
    rep = ScenarioReport("fingerprint", {"group": spec, "p": cfg.p, "max_degree": cfg.max_degree})
    G = realize(spec)
    res = cfg.resolution(G, cfg.max_degree)
    ladder = dec_ladder(res, cfg.max_degree, threads=cfg.threads)
    ident = degree_one_identities(res) if cfg.max_degree >= 2 else []
    rep.result = {
        "order": G.order,
        "dims": ladder.dims,
        "dec_dims": ladder.dec_dims,
        "identities": [[d, bool(v)] for d, v in ident],
    }
    return rep


def cmd_inflate(cfg: CliConfig, source: str, target: str, mapping: str | None, degree: int) -> ScenarioReport:
    rep = ScenarioReport("inflate", {"source": source, "target": target, "map": mapping, "degree": degree, "p": cfg.p})
    G, Q = realize(source), realize(target)
    try:
        phi = name_matching_hom(G, Q, mapping)
    except GroupError as e:
        raise UsageError(str(e)) from None
    if not phi.is_surjective():
        raise UsageError("the generator map is not surjective")
    RQ = cfg.resolution(Q, degree)
    RG = cfg.resolution(G, degree)
    ladder_q = dec_ladder(RQ, degree, threads=cfg.threads)
    ladder_g = dec_ladder(RG, degree, threads=cfg.threads)
    rows = []
    for i, c in enumerate(cocycle_basis(RQ, degree)):
        img = inflation(phi, c, RG)
        rows.append(
            {
                "class": i,
                "decomposable_in_target": is_fully_decomposable(c, ladder_q),
                "vanishes": img.is_zero(),
                "decomposable": is_fully_decomposable(img, ladder_g),
            }
        )
    rep.result = {"classes": rows}
    return rep


def cmd_classify(cfg: CliConfig, spec: str) -> ScenarioReport:
    rep = ScenarioReport("classify", {"group": spec, "p": cfg.p})
    G = realize(spec)
    v = degree_one_classifier(G, cfg.p)
    rep.result = {
        "generated_in_degree_one": v.generated_in_degree_one,
        "status": v.status,
        "complement_order": None if v.witness is None else v.witness.order,
    }
    return rep


def cmd_census(cfg: CliConfig) -> ScenarioReport:
    return scenario_census(cfg.p, min(cfg.max_degree, 5), cache=cfg.cache(), threads=cfg.threads)


def _repro_jobs(cfg: CliConfig, name: str, args) -> list:
    cache = cfg.cache()
    if name == "quaternion":
        return [lambda: scenario_quaternion(cache=cache)]
    if name == "splitting_without_vanishing":
        return [lambda: scenario_splitting_without_vanishing(cache=cache)]
    if name == "cyclic_tower":
        if args.n is None:
            return [lambda p=p, n=n: scenario_cyclic_tower(p, n, cache=cache) for p, n in ((2, 2), (2, 3), (3, 2))]
        return [lambda: scenario_cyclic_tower(cfg.p, args.n, cache=cache)]
    if name == "metacyclic":
        if args.n is None:
            jobs = [lambda: scenario_metacyclic(2, 2, 1, cache=cache), lambda: scenario_metacyclic(2, 2, 2, cache=cache)]
            if cfg.extended:
                jobs.append(lambda: scenario_metacyclic(3, 2, 1, 1, extended=True, cache=cache))
            return jobs
        return [lambda: scenario_metacyclic(cfg.p, args.n, args.d, args.k, extended=cfg.extended, cache=cache)]
    if name == "census":
        return [lambda p=p: scenario_census(p, 5, cache=cache) for p in (2, 3)]
    if name == "all":
        jobs = []
        for sub in ("cyclic_tower", "metacyclic", "quaternion", "splitting_without_vanishing", "census"):
            args.n = None
            jobs += _repro_jobs(cfg, sub, args)
        return jobs
    raise UsageError(f"unknown scenario {name!r}")


def cmd_repro(cfg: CliConfig, name: str, args) -> list:
    jobs = _repro_jobs(cfg, name, args)
    if cfg.threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(cfg.threads) as ex:
            return list(ex.map(lambda job: job(), jobs))
    return [job() for job in jobs]


# --- rendering ---------------------------------------------------------------------------


def render_text(rep: ScenarioReport) -> str:
    lines = []
    r = rep.result
    head = " ".join(f"{k}={v}" for k, v in rep.params.items() if v is not None)
    if rep.scenario == "dims":
        lines.append(f"{rep.params['group']} (order {r['order']}, p={rep.params['p']}, {r['strategy']})")
        lines.append(f"dims: {_tuple(r['dims'])}")
    elif rep.scenario == "fingerprint":
        lines.append(f"{rep.params['group']} (order {r['order']}, p={rep.params['p']})")
        lines.append(f"dims: {_tuple(r['dims'])}")
        lines.append(f"dec_dims: {_tuple(r['dec_dims'])}")
        for desc, ok in r["identities"]:
            lines.append(f"  {desc}: {str(ok).lower()}")
    elif rep.scenario == "inflate":
        lines.append(f"inflate H^{rep.params['degree']}({rep.params['target']}) to {rep.params['source']}")
        for row in r["classes"]:
            lines.append(
                f"  class {row['class']}: vanishes={str(row['vanishes']).lower()} decomposable={str(row['decomposable']).lower()}"
                f" (decomposable in target: {str(row['decomposable_in_target']).lower()})"
            )
    elif rep.scenario == "classify":
        lines.append(f"{rep.params['group']} p={rep.params['p']}: generated in degree one: {str(r['generated_in_degree_one']).lower()}")
        if r["status"] != "ok":
            lines.append(f"  status: {r['status']}")
        if r["complement_order"] is not None:
            lines.append(f"  normal complement of order {r['complement_order']}")
    else:
        lines.append(f"{rep.summary()}" + (f" [{head}]" if head else "") + f" ({rep.wall_ms:.0f} ms)")
        for c in rep.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  {mark} {c.desc}: expected {c.expected}, computed {c.computed}")
        for note in rep.notes:
            lines.append(f"  note: {note}")
    return "\n".join(lines)


def _emit(reports, fmt, out):
    if fmt == "json":
        docs = [r.as_dict() for r in reports]
        text = json.dumps(docs[0] if len(docs) == 1 else docs, indent=2)
    else:
        text = "\n".join(render_text(r) for r in reports)
    out.write(text + "\n")
    out.flush()


# --- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="prime (default 2)")
    common.add_argument("--max-degree", type=int, default=4, help="top cohomological degree")
    common.add_argument("--strategy", choices=[MINIMAL, GREEDY], default=None, help="resolution strategy (default: minimal for p-groups)")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--cache-dir", default=None, help="resolution cache directory (default $COHOFORGE_CACHE or .cohoforge-cache)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the resolution cache")
    common.add_argument("--extended", action="store_true", help="allow the extended tier (order-729 groups)")
    common.add_argument("--threads", type=int, default=1)

    ap = argparse.ArgumentParser(prog="cohoforge", description="Mod-p cohomology of finite groups from free resolutions.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("dims", parents=[common], help="dimensions of H^0..H^N")
    p.add_argument("group")
    p = sub.add_parser("fingerprint", parents=[common], help="dims, decomposable dims and degree-one identities")
    p.add_argument("group")
    p = sub.add_parser("inflate", parents=[common], help="inflate H^degree of TARGET along SOURCE -> TARGET")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--map", default=None, help='generator images, e.g. "g->g,h->h,c->g^2" (default: same names)')
    p.add_argument("--degree", type=int, default=None, help="degree (default --max-degree)")
    p = sub.add_parser("classify", parents=[common], help="is H*(G, F_p) generated in degree one?")
    p.add_argument("group")
    sub.add_parser("census", parents=[common], help="classifier against computed Dec over the catalog")
    p = sub.add_parser("repro", parents=[common], help="run a reproduction scenario")
    p.add_argument("scenario", choices=["cyclic_tower", "metacyclic", "quaternion", "splitting_without_vanishing", "census", "all"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        cfg = CliConfig(
            p=args.p,
            max_degree=args.max_degree,
            strategy=args.strategy,
            fmt=args.format,
            cache_dir=args.cache_dir,
            extended=args.extended,
            threads=args.threads,
            use_cache=not args.no_cache,
        )
        t0 = time.perf_counter()
        if args.command == "dims":
            reports = [cmd_dims(cfg, args.group)]
        elif args.command == "fingerprint":
            reports = [cmd_fingerprint(cfg, args.group)]
        elif args.command == "inflate":
            reports = [cmd_inflate(cfg, args.source, args.target, args.map, args.degree or cfg.max_degree)]
        elif args.command == "classify":
            reports = [cmd_classify(cfg, args.group)]
        elif args.command == "census":
            reports = [cmd_census(cfg)]
        else:
            reports = cmd_repro(cfg, args.scenario, args)
        for r in reports:
            if not r.wall_ms:
                r.wall_ms = (time.perf_counter() - t0) * 1000
    except (SpecSyntaxError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (BudgetExceeded, OrderCapExceeded) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except GroupError as e:
        print(f"cannot realize group: {e}", file=sys.stderr)
        return EXIT_REALIZE
    _emit(reports, cfg.fmt, out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
