"""Batch front end.  Every command writes one JSON report to stdout (or
``--out``) and signals its verdict through the exit status:
0 pass, 1 property violation, 2 usage or malformed input, 3 truncation
or integrity failure."""
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

import click
import numpy as np

from . import checks
from .complexes import gs
from .complexes.profiles import D1_DEFQ, DELTA_LIEB_INF, profile_hash
from .exact import StructureError
from .formality import IntegrityError, MorphismTable, claim_ii_seed, default_d_table, lift_inductive
from .graphs import LIEB
from .homology import betti as window_betti
from .poisson import (PoissonElement, ShLieBialgStructure, bialg_relations_residual,
                      is_zero_tensor, mc_residual, poisson_bracket, rep_to_gamma)
from .prop import Truncation, TruncationError, quotient_basis

SCHEMA_VERSION = 1
EXIT_PASS, EXIT_VIOLATION, EXIT_USAGE, EXIT_TRUNCATION = 0, 1, 2, 3


class Failure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _dump(obj):
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, sort_keys=True, indent=1) + "\n"


def _emit(obj, out, ok):
    text = _dump(obj)
    if out:
        _atomic_write(Path(out), text)
    else:
        click.echo(text, nl=False)
    sys.exit(EXIT_PASS if ok else EXIT_VIOLATION)


def _atomic_write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise Failure(EXIT_USAGE, f"cannot read {path}: {exc}")


def _nonzero(d):
    return {k: v for k, v in d.items() if v}


def _json_keys(d):
    return {str(k): v for k, v in sorted(d.items())}


# -- cache -----------------------------------------------------------------------

class Cache:
    """Directory of JSON blobs keyed by family, biarity, truncation and
    sign-profile hash."""

    def __init__(self, directory):
        self.dir = Path(directory) if directory else None

    @staticmethod
    def key(family, biarity, truncation, profile):
        blob = json.dumps([family, list(biarity), truncation, profile_hash(profile)], sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:24]

    def get(self, key):
        if self.dir is None:
            return None
        path = self.dir / f"{key}.json"
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text())
        except ValueError:
            return None

    def put(self, key, value):
        if self.dir is not None:
            _atomic_write(self.dir / f"{key}.json", json.dumps(value, sort_keys=True))


def _cache_from(ctx):
    opts = ctx.obj
    if opts["no_cache"]:
        return Cache(None)
    d = opts["cache_dir"] or os.environ.get("QLIEB_CACHE_DIR") or Path.home() / ".cache" / "qlieb"
    return Cache(d)


def _cached_betti(cache, family, biarity, truncation, profile, build):
    key = Cache.key(family, biarity, truncation, profile)
    hit = cache.get(key)
    if hit is not None:
        return {int(k): v for k, v in hit.items()}
    b = dict(window_betti(build()))
    cache.put(key, _json_keys(b))
    return b


# -- commands ------------------------------------------------------------------

@click.group()
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
              help="Cache directory (default: $QLIEB_CACHE_DIR or ~/.cache/qlieb).")
@click.option("--no-cache", is_flag=True, help="Neither read nor write the cache.")
@click.pass_context
def main(ctx, cache_dir, no_cache):
    """Exact graph-complex computations for quantized Lie bialgebras."""
    ctx.obj = {"cache_dir": cache_dir, "no_cache": no_cache}


@main.command()
@click.option("--family", required=True, type=click.Choice(checks.FAMILIES))
@click.option("--min-legs", default=1, show_default=True)
@click.option("--max-legs", default=6, show_default=True)
@click.option("--max-edges", default=3, show_default=True, help="Edge budget of the thickened differential.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def dsq(family, min_legs, max_legs, max_edges, out):
    """d^2 on every generator of a family."""
    _check_range(min_legs, max_legs)
    rows = checks.dsq_report(family, min_legs, max_legs, max_edges)
    if not rows:
        click.echo(f"warning: no generators of {family} with {min_legs} <= legs <= {max_legs}", err=True)
    ok = all(r["zero"] for r in rows)
    _emit({"command": "dsq", "family": family, "min_legs": min_legs, "max_legs": max_legs,
           "generators": rows, "all_zero": ok}, out, ok)


def _check_range(lo, hi):
    if lo > hi:
        raise click.UsageError(f"empty leg range {lo}..{hi}")


@main.command()
@click.option("--family", required=True, type=click.Choice(["lieb-inf", "defq-plus-d1"]))
@click.option("--p", "p", required=True, type=click.IntRange(1))
@click.option("--q", "q", required=True, type=click.IntRange(1))
@click.option("--max-vertices", type=click.IntRange(1), default=None, help="Default: p + q.")
@click.option("--max-genus", type=click.IntRange(0), default=0, show_default=True)
@click.option("--compare", is_flag=True, help="Compare with the predicted dimensions.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def betti(ctx, family, p, q, max_vertices, max_genus, compare, out):
    """Betti numbers of one biarity window."""
    cache = _cache_from(ctx)
    if family == "defq-plus-d1":
        b = _cached_betti(cache, family, (p, q), None, D1_DEFQ, lambda: checks.d1_window(p, q))
        predicted = {3 - p - q: 1}
    else:
        mv = max_vertices or p + q
        t = Truncation(mv, max_genus)
        b = _cached_betti(cache, family, (p, q), t.to_json(), DELTA_LIEB_INF,
                          lambda: checks.lieb_inf_window(p, q, mv, max_genus))
        qd = quotient_basis(LIEB, (p, q), t).dim
        predicted = {0: qd} if qd else {}
    report = {"command": "betti", "family": family, "biarity": [p, q], "betti": _json_keys(b)}
    ok = True
    if compare:
        ok = _nonzero(b) == predicted
        report.update(predicted=_json_keys(predicted), match=ok)
    _emit(report, out, ok)


@main.command()
@click.option("--in", "inputs", multiple=True, required=True, type=click.Path(dir_okay=False))
@click.option("--order-cap", type=click.IntRange(1), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def bracket(inputs, order_cap, out):
    """Poisson bracket {a, b} of two elements given as JSON files."""
    if len(inputs) != 2:
        raise click.UsageError("bracket needs exactly two --in files")
    try:
        a, b = (PoissonElement.from_json(_read_json(f)) for f in inputs)
    except (KeyError, TypeError, ValueError) as exc:
        raise Failure(EXIT_USAGE, f"malformed element: {exc}")
    if a.degrees != b.degrees:
        raise Failure(EXIT_USAGE, "elements live over different spaces")
    if order_cap is not None:
        a, b = a.truncate(order_cap), b.truncate(order_cap)
    _emit({"command": "bracket", "result": poisson_bracket(a, b).to_json()}, out, True)


@main.command("gs")
@click.option("--min-legs", default=2, show_default=True)
@click.option("--max-legs", default=4, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def gs_cmd(min_legs, max_legs, out):
    """d_gs^2 on the Z/2 group algebra."""
    _check_range(min_legs, max_legs)
    B = gs.group_algebra_z2()
    rows = checks.gs_square_report(min_legs, max_legs)
    axioms = B.axiom_failures()
    ok = not axioms and all(r["zero"] for r in rows)
    _emit({"command": "gs", "bialgebra": "Z/2", "axiom_failures": axioms,
           "bidegrees": rows, "all_zero": ok}, out, ok)


@main.command()
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--order-cap", type=click.IntRange(1), default=None)
@click.option("--hbar-order", type=click.IntRange(0), default=None,
              help="Keep only the tensors T(m,n) with m + n - 2 <= this order.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def mc(path, order_cap, hbar_order, out):
    """Maurer-Cartan residual of a structure file."""
    try:
        S = ShLieBialgStructure.from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise Failure(EXIT_USAGE, f"malformed structure: {exc}")
    if hbar_order is not None:
        S = ShLieBialgStructure(S.degrees, {k: t for k, t in S.tensors.items() if sum(k) - 2 <= hbar_order})
    cap = order_cap or max([sum(k) for k in S.tensors] + [2]) * 2 - 2
    try:
        res = mc_residual(rep_to_gamma(S, cap))
    except StructureError as exc:
        raise Failure(EXIT_USAGE, str(exc))
    orders = {str(k): v.to_json()["terms"] for k, v in res.by_order().items()}
    report = {"command": "mc", "residual_by_order": orders,
              "nonzero_orders": sorted(int(k) for k in orders), "mc_zero": not res}
    ok = not res
    if set(S.tensors) <= {(1, 2), (2, 1)} and not any(S.degrees):
        zeros = np.zeros((S.dim,) * 3, dtype=object)
        parts = bialg_relations_residual(S.tensors.get((1, 2), zeros), S.tensors.get((2, 1), zeros))
        axioms = {n: is_zero_tensor(t) for n, t in zip(("jacobi", "cojacobi", "compatibility"), parts)}
        report["axioms_zero"] = axioms
        ok = ok and all(axioms.values())
    _emit(report, out, ok)


@main.command()
@click.option("--in", "path", type=click.Path(dir_okay=False), default=None,
              help="Seed MorphismTable JSON (default: the single-vertex seed).")
@click.option("--d-table", type=click.Choice(["d1"]), default="d1", show_default=True)
@click.option("--max-weight", type=click.IntRange(0), default=1, show_default=True)
@click.option("--max-vertices", type=click.IntRange(1), default=2, show_default=True)
@click.option("--max-genus", type=click.IntRange(0), default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def lift(path, d_table, max_weight, max_vertices, max_genus, out):
    """Extend a seed morphism table weight by weight."""
    if path is None:
        seed = claim_ii_seed()
    else:
        try:
            seed = MorphismTable.from_json(_read_json(path))
        except (KeyError, TypeError, ValueError) as exc:
            raise Failure(EXIT_USAGE, f"invalid seed: {exc}")
    dt = {"d1": default_d_table}[d_table]
    try:
        table = lift_inductive(seed, dt, max_weight, Truncation(max_vertices, max_genus))
    except (IntegrityError, TruncationError) as exc:
        raise Failure(EXIT_TRUNCATION, f"lift failed: {exc}")
    data = table.to_json()
    ok = all(all(v for k, v in c.items() if k != "corolla") for c in data["certificates"])
    _emit({"command": "lift", "max_weight": max_weight, "table": data, "certified": ok}, out, ok)


@main.command("resolution-check")
@click.option("--max-legs", default=4, show_default=True)
@click.option("--max-genus", type=click.IntRange(0), default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def resolution_check(ctx, max_legs, max_genus, out):
    """Cohomology of LieB_inf against the quotient LieB, biarity by biarity."""
    cache = _cache_from(ctx)
    rows = []
    for s in range(2, max_legs + 1):
        for p in range(1, s):
            q = s - p
            t = Truncation(p + q, max_genus)
            b = _cached_betti(cache, "lieb-inf", (p, q), t.to_json(), DELTA_LIEB_INF,
                              lambda: checks.lieb_inf_window(p, q, p + q, max_genus))
            qd = quotient_basis(LIEB, (p, q), t).dim
            rows.append({"biarity": [p, q], "betti": _json_keys(b), "quotient_dim": qd,
                         "match": _nonzero(b) == ({0: qd} if qd else {})})
    ok = all(r["match"] for r in rows)
    _emit({"command": "resolution-check", "max_legs": max_legs, "max_genus": max_genus,
           "rows": rows, "all_match": ok}, out, ok)


@main.command("khr-check")
@click.option("--max-legs", default=6, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def khr_check(ctx, max_legs, out):
    """Per-corolla d1 cohomology of the bunched corollas."""
    cache = _cache_from(ctx)
    rows = []
    for s in range(2, max_legs + 1):
        for p in range(1, s):
            q = s - p
            b = _cached_betti(cache, "defq-plus-d1", (p, q), None, D1_DEFQ, lambda: checks.d1_window(p, q))
            euler = sum((-1) ** (k % 2) * v for k, v in b.items())
            rows.append({"biarity": [p, q], "betti": _json_keys(b), "euler": euler,
                         "match": _nonzero(b) == {3 - p - q: 1}})
    ok = all(r["match"] for r in rows)
    _emit({"command": "khr-check", "max_legs": max_legs, "rows": rows, "all_match": ok}, out, ok)


def run(argv=None):
    """Entry point translating library failures into exit codes."""
    try:
        main.main(args=argv, prog_name="qlieb", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except Failure as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.code
    except StructureError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except (TruncationError, IntegrityError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_TRUNCATION
    except SystemExit as exc:
        return exc.code
    return EXIT_PASS


def entry():
    sys.exit(run())
