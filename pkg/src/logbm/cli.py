"""Command-line front end.

Subcommands: info, classify, verify, reproduce, search, curve.  Reports go to
stdout as aligned text by default; --out writes a JSON or CSV file (--format,
default json) and renders PNG figures next to it.  JSON reports follow the
bundled schema (schemas/report-v1.json) and contain no timestamps or machine
identifiers, so a rerun with the same arguments produces the same bytes.

Exit codes: 0 all checks passed, 1 a property violation was found, 2 input or
configuration error.
"""
from __future__ import annotations

import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from .bodies import Ball, Box, ConvexBody, Cylinder, Dilate, Polytope
from .bonnesen import bonnesen_eval, classify
from .constant_width import (
    make_profile,
    reproduce_prop41,
    revolution_body,
    surface_area_revolution,
)
from .errors import GeometryError, InvalidInput, InvalidParameter
from .inequalities import f_curve, reports_to_csv, suite
from .measures import surface_area_measure, volume
from .wulff import geodesic_grid

DEFAULT_LAMBDAS = (0.25, 0.5, 0.75)
DEFAULT_PS = (0.3, 0.5, 0.8)
VERIFY_GRID = 4
SEARCH_GRID = 3
SCHEMA_VERSION = 1

# checks whose hypothesis is class membership of the pair; violations outside
# the hypothesis are reported but do not flip the exit code
_NEEDS_R1 = {"Lemma31a", "LogMinkowski", "LogBM", "LpMinkowski", "LpBM"}
_NEEDS_R2 = {"Lemma31b"}


# ---------------------------------------------------------------- body files

def body_from_dict(data) -> ConvexBody:
    if not isinstance(data, dict):
        raise InvalidInput("body description must be a JSON object")
    kind = data.get("type")
    try:
        if kind == "ball":
            return Ball(float(data["radius"]))
        if kind == "cylinder":
            return Cylinder(float(data["radius"]), float(data["half_height"]))
        if kind == "box":
            ext = [float(x) for x in data["half_extents"]]
            return Box(ext)
        if kind == "polytope":
            verts = np.asarray(data["vertices"], dtype=float)
            return Polytope(verts)
        if kind == "constant_width_revolution":
            return revolution_body(make_profile(int(data["n"])))
        if kind == "dilate":
            return Dilate(float(data["factor"]), body_from_dict(data["body"]))
    except KeyError as exc:
        raise InvalidInput(f"body of type {kind!r} is missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise InvalidInput(f"malformed body description: {exc}") from exc
    raise InvalidInput(f"unknown body type {kind!r}")


def load_body(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read body file {path}: {exc}") from exc
    return body_from_dict(data), data


# ------------------------------------------------------------------ plumbing

def _die(message):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _worker_count(requested=None):
    env = os.environ.get("LOGBM_THREADS")
    if env is not None:
        try:
            n = int(env)
        except ValueError:
            raise InvalidParameter(f"LOGBM_THREADS must be an integer, got {env!r}")
        if n < 1:
            raise InvalidParameter("LOGBM_THREADS must be >= 1")
        return n
    if requested is not None:
        if requested < 1:
            raise InvalidParameter("--threads must be >= 1")
        return requested
    return os.cpu_count() or 1


def _envelope(command, config, **payload):
    env = {"schema_version": SCHEMA_VERSION, "command": command, "config": config}
    env.update(payload)
    return env


def _emit(envelope, out, fmt, text_lines, csv_text=None, figures=()):
    """Print the text report; with --out also write the file and figures."""
    for line in text_lines:
        click.echo(line)
    if fmt and not out:
        if fmt == "json":
            click.echo(json.dumps(envelope, indent=2, sort_keys=True))
        else:
            click.echo(csv_text if csv_text is not None else "", nl=False)
        return
    if not out:
        return
    fmt = fmt or "json"
    if fmt == "json":
        payload = json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    else:
        payload = csv_text if csv_text is not None else ""
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(payload)
    written = [out]
    if figures:
        from . import plotting  # deferred: pulls in matplotlib

        stem = os.path.splitext(out)[0]
        for suffix, draw in figures:
            path = f"{stem}-{suffix}.png"
            draw(plotting, path)
            written.append(path)
    click.echo("wrote " + ", ".join(written))


def _fmt(x):
    return f"{x:.12g}"


def _kv_lines(pairs):
    width = max(len(k) for k, _ in pairs)
    return [f"  {k.ljust(width)}  {v}" for k, v in pairs]


def _kv_csv(pairs):
    lines = ["key,value"]
    lines.extend(f"{k},{v}" for k, v in pairs)
    return "\n".join(lines) + "\n"


def _verdict_word(in_r1):
    return "in r1" if in_r1 else "not in r1"


def _bonnesen_pairs(rep):
    q = rep.quermass
    return [
        ("r_o", repr(rep.r_o)), ("R_o", repr(rep.R_o)),
        ("b0_at_r", repr(rep.b0_at_r)), ("b0_at_R", repr(rep.b0_at_R)),
        ("b1_at_r", repr(rep.b1_at_r)), ("b1_at_R", repr(rep.b1_at_R)),
        ("in_R1", str(rep.in_R1).lower()), ("in_R2", str(rep.in_R2).lower()),
        ("marginal", str(rep.marginal).lower()),
        ("w0", repr(q.w0)), ("w1", repr(q.w1)),
        ("w2", repr(q.w2)), ("w3", repr(q.w3)),
    ]


def _reports_text(reports):
    head = f"  {'check':<22} {'lhs':>14} {'rhs':>14} {'margin':>13} {'verdict':<12}"
    lines = [head]
    for r in reports:
        label = r.name
        if r.params:
            label += "(" + ",".join(f"{k}={r.params[k]}" for k in sorted(r.params)) + ")"
        lines.append(f"  {label:<22} {r.lhs:>14.6e} {r.rhs:>14.6e}"
                     f" {r.margin:>13.4e} {r.verdict:<12}")
    return lines


def _hypothesis_violations(reports, bonnesen_rep):
    bad = 0
    for r in reports:
        if r.verdict != "violated":
            continue
        if r.name in _NEEDS_R1 and not bonnesen_rep.in_R1:
            continue
        if r.name in _NEEDS_R2 and not bonnesen_rep.in_R2:
            continue
        bad += 1
    return bad


# ------------------------------------------------------------------ commands

@click.group()
def main():
    """Convex-body toolkit: classification and inequality checks in R^3."""


@main.command("info")
@click.argument("body_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
def cmd_info(body_file, out, fmt):
    """Volume, surface area and measure diagnostics for one body."""
    try:
        body, desc = load_body(body_file)
        meas = surface_area_measure(body)
        vol = volume(body)
        area = meas.total_mass()
        cen = meas.centroid()
        axes = np.vstack([np.eye(3), -np.eye(3)])
        sup = body.support(axes)
    except GeometryError as exc:
        _die(exc)
    pairs = [
        ("type", desc.get("type")),
        ("volume", repr(vol)),
        ("surface_area", repr(area)),
        ("measure_centroid_norm", repr(float(np.linalg.norm(cen)))),
        ("support +x/-x", f"{_fmt(sup[0])} / {_fmt(sup[3])}"),
        ("support +y/-y", f"{_fmt(sup[1])} / {_fmt(sup[4])}"),
        ("support +z/-z", f"{_fmt(sup[2])} / {_fmt(sup[5])}"),
    ]
    config = {"body": body_file, "format": fmt or "json"}
    envelope = _envelope("info", config, body=desc, summary={
        "volume": vol, "surface_area": area,
        "measure_centroid": [float(c) for c in cen],
        "support_on_axes": [float(s) for s in sup],
    })
    _emit(envelope, out, fmt, [f"body {body_file}"] + _kv_lines(pairs),
          csv_text=_kv_csv(pairs))
    sys.exit(0)


@main.command("classify")
@click.option("--k", "k_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--l", "l_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
def cmd_classify(k_file, l_file, out, fmt):
    """Bonnesen class membership of the pair (K, L)."""
    try:
        K, k_desc = load_body(k_file)
        L, l_desc = load_body(l_file)
        rep = classify(K, L)
    except GeometryError as exc:
        _die(exc)
    pairs = _bonnesen_pairs(rep)
    text = [f"pair K={k_file} L={l_file}: {_verdict_word(rep.in_R1)},"
            f" {'in r2' if rep.in_R2 else 'not in r2'}"]
    text += _kv_lines(pairs)
    if rep.marginal:
        text.append("  note: membership decided inside the numerical tolerance band")
    config = {"k": k_file, "l": l_file, "format": fmt or "json"}
    envelope = _envelope("classify", config, bodies={"k": k_desc, "l": l_desc},
                         bonnesen=rep.to_dict())
    figures = [("bonnesen", lambda P, path, rep=rep: P.bonnesen_figure(rep, path))]
    _emit(envelope, out, fmt, text, csv_text=_kv_csv(pairs), figures=figures)
    sys.exit(0)


@main.command("verify")
@click.option("--k", "k_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--l", "l_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--lambda", "lambdas", multiple=True, type=float,
              help="coefficient for the BM combinations; repeatable")
@click.option("--p", "ps", multiple=True, type=float,
              help="exponent for the p-mean checks; repeatable")
@click.option("--grid", type=click.IntRange(0, 8), default=VERIFY_GRID,
              show_default=True, help="geodesic grid resolution for Wulff paths")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
def cmd_verify(k_file, l_file, lambdas, ps, grid, out, fmt):
    """Run every inequality check on the pair (K, L)."""
    lambdas = tuple(lambdas) or DEFAULT_LAMBDAS
    ps = tuple(ps) or DEFAULT_PS
    try:
        for lam in lambdas:
            if not 0.0 <= lam <= 1.0:
                raise InvalidParameter(f"lambda {lam} outside [0, 1]")
        for p in ps:
            if not 0.0 < p < 1.0:
                raise InvalidParameter(f"p {p} outside (0, 1)")
        K, k_desc = load_body(k_file)
        L, l_desc = load_body(l_file)
        g = geodesic_grid(grid)
        rep, reports = suite(K, L, lambdas=lambdas, ps=ps, grid=g, conditional=False)
    except GeometryError as exc:
        _die(exc)
    counts = {"holds": 0, "inconclusive": 0, "violated": 0}
    for r in reports:
        counts[r.verdict] += 1
    bad = _hypothesis_violations(reports, rep)
    text = [f"pair K={k_file} L={l_file} ({_verdict_word(rep.in_R1)},"
            f" {'in r2' if rep.in_R2 else 'not in r2'}; grid {grid})"]
    text += _reports_text(reports)
    text.append(f"  holds {counts['holds']}, inconclusive {counts['inconclusive']},"
                f" violated {counts['violated']}"
                + (f" ({bad} inside hypothesis)" if counts["violated"] else ""))
    config = {"k": k_file, "l": l_file, "lambdas": list(lambdas), "ps": list(ps),
              "grid": grid, "format": fmt or "json"}
    summary = dict(counts)
    summary["violated_in_hypothesis"] = bad
    envelope = _envelope("verify", config, bodies={"k": k_desc, "l": l_desc},
                         bonnesen=rep.to_dict(),
                         results=[r.to_dict() for r in reports], summary=summary)
    figures = [
        ("margins", lambda P, path, rs=reports: P.margins_figure(rs, path)),
        ("bonnesen", lambda P, path, rep=rep: P.bonnesen_figure(rep, path)),
    ]
    _emit(envelope, out, fmt, text, csv_text=reports_to_csv(reports), figures=figures)
    sys.exit(1 if bad else 0)


def _table_row(name, expected, computed, tol, strict_positive=False):
    delta = computed - expected
    ok = computed > 0.0 if strict_positive else abs(delta) <= tol
    return {"name": name, "expected": float(expected), "computed": float(computed),
            "delta": float(delta), "tol": float(tol), "ok": bool(ok)}


def _table_text(rows, header):
    lines = [header,
             f"  {'quantity':<26} {'expected':>18} {'computed':>18} {'delta':>12} ok"]
    for r in rows:
        lines.append(f"  {r['name']:<26} {r['expected']:>18.12g} {r['computed']:>18.12g}"
                     f" {r['delta']:>12.3e} {'yes' if r['ok'] else 'NO'}")
    return lines


def _table_csv(rows):
    lines = ["name,expected,computed,delta,tol,ok"]
    for r in rows:
        lines.append(f"{r['name']},{r['expected']!r},{r['computed']!r},"
                     f"{r['delta']!r},{r['tol']!r},{str(r['ok']).lower()}")
    return "\n".join(lines) + "\n"


def _reproduce_remark34():
    K = Box((1.0, 1.0, 1.0))
    L = Box((1.0, 1.0, 2.0))
    rep = classify(K, L)
    q = rep.quermass
    tol = 1e-9
    rows = [
        _table_row("V(K)", 8.0, q.w0, tol),
        _table_row("V(L)", 16.0, q.w3, tol),
        _table_row("W1", 32.0 / 3.0, q.w1, tol),
        _table_row("W2", 40.0 / 3.0, q.w2, tol),
        _table_row("r", 0.5, rep.r_o, tol),
        _table_row("R", 1.0, rep.R_o, tol),
        _table_row("B0(1/2)", -2.0 / 3.0, float(bonnesen_eval(q, 0, 0.5)), tol),
        _table_row("B0(1)", 0.0, float(bonnesen_eval(q, 0, 1.0)), tol),
    ]
    header = "cube of edge 2 against the 2 x 2 x 4 box (exact path, tolerance 1e-9)"
    return rows, rep, False, header


def _reproduce_example42():
    K = Cylinder(1.0, 1.0)
    L = Ball(1.0)
    rep = classify(K, L)
    q = rep.quermass
    tol = 1e-6
    rows = [
        _table_row("W0", 2.0 * math.pi, q.w0, tol),
        _table_row("W1", 2.0 * math.pi, q.w1, tol),
        _table_row("W2", math.pi * (math.pi + 2.0) / 3.0, q.w2, tol),
        _table_row("r_o", 1.0, rep.r_o, tol),
        _table_row("R_o", math.sqrt(2.0), rep.R_o, tol),
    ]
    header = "unit cylinder of half height 1 against the unit ball (quadrature path, tolerance 1e-6)"
    return rows, rep, True, header


def _reproduce_prop41(n1, n2):
    rep = reproduce_prop41(n1, n2)
    rows = []
    for label, n in (("K1", n1), ("K2", n2)):
        profile = make_profile(n)
        s_sym = surface_area_revolution(profile)
        s_car = surface_area_measure(revolution_body(profile)).total_mass()
        rows.append(_table_row(f"S({label}) carrier vs exact", s_sym, s_car,
                               1e-8 * abs(s_sym)))
    for name, value in (("B0(r_o)", rep.b0_at_r), ("B0(R_o)", rep.b0_at_R),
                        ("B1(r_o)", rep.b1_at_r), ("B1(R_o)", rep.b1_at_R)):
        rows.append(_table_row(f"{name} > 0", 0.0, value, 0.0, strict_positive=True))
    header = (f"constant-width revolution pair n1={n1}, n2={n2}"
              " (exact functionals; carrier agreement 1e-8 relative)")
    return rows, rep, True, header


@main.command("reproduce")
@click.argument("target", type=click.Choice(["remark-3-4", "example-4-2",
                                             "proposition-4-1"]))
@click.option("--n1", type=int, default=1, show_default=True)
@click.option("--n2", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
def cmd_reproduce(target, n1, n2, out, fmt):
    """Recompute a named reference example and tabulate deltas against its values."""
    try:
        if target == "remark-3-4":
            rows, rep, expect_r1, header = _reproduce_remark34()
        elif target == "example-4-2":
            rows, rep, expect_r1, header = _reproduce_example42()
        else:
            rows, rep, expect_r1, header = _reproduce_prop41(n1, n2)
    except GeometryError as exc:
        _die(exc)
    verdict_ok = rep.in_R1 == expect_r1
    all_ok = verdict_ok and all(r["ok"] for r in rows)
    text = _table_text(rows, header)
    text.append(f"  verdict: {_verdict_word(rep.in_R1)}"
                f" (expected {_verdict_word(expect_r1)})"
                f" -> {'ok' if verdict_ok else 'MISMATCH'}")
    text.append("  all values within tolerance" if all_ok
                else "  MISMATCH against reference values")
    config = {"target": target, "format": fmt or "json"}
    if target == "proposition-4-1":
        config["n1"], config["n2"] = n1, n2
    envelope = _envelope("reproduce", config, table=rows, bonnesen=rep.to_dict(),
                         summary={"verdict": _verdict_word(rep.in_R1),
                                  "expected_verdict": _verdict_word(expect_r1),
                                  "all_ok": all_ok})
    figures = [("bonnesen", lambda P, path, rep=rep: P.bonnesen_figure(rep, path))]
    _emit(envelope, out, fmt, text, csv_text=_table_csv(rows), figures=figures)
    sys.exit(0 if all_ok else 1)


def _random_polytope(rng, kind):
    for _ in range(64):
        m = int(rng.integers(6, 31))
        pts = rng.normal(size=(m, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        pts *= rng.uniform(0.5, 1.5, size=(m, 1))
        if kind == "symmetric-polytope":
            pts = np.vstack([pts, -pts])
        else:
            pts = pts - pts.mean(axis=0)
        try:
            return Polytope(pts)
        except GeometryError:
            continue  # retry on a degenerate draw; keeps the stream deterministic
    raise InvalidInput("random generator failed to produce a valid polytope")


def _search_pair(index, K, L, grid):
    rep = classify(K, L)
    checks = []
    if rep.in_R1:
        _, checks = suite(K, L, grid=grid, conditional=True, report=rep)
    return {"pair": index, "in_R1": rep.in_R1, "in_R2": rep.in_R2,
            "checks": [c.to_dict() for c in checks]}


@main.command("search")
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), required=True)
@click.option("--count", type=int, required=True)
@click.option("--kind", type=click.Choice(["symmetric-polytope", "polytope"]),
              default="symmetric-polytope", show_default=True)
@click.option("--grid", type=click.IntRange(0, 8), default=SEARCH_GRID, show_default=True)
@click.option("--threads", type=int, default=None,
              help="worker count (default: cores; LOGBM_THREADS overrides)")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
def cmd_search(seed, count, kind, grid, threads, out, fmt):
    """Classify random pairs and run the conditional inequality suite."""
    if count < 1:
        _die("count must be >= 1")
    try:
        workers = _worker_count(threads)
        rng = np.random.default_rng(seed)
        pairs = [(_random_polytope(rng, kind), _random_polytope(rng, kind))
                 for _ in range(count)]
        g = geodesic_grid(grid)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(
                    lambda item: _search_pair(item[0], item[1][0], item[1][1], g),
                    enumerate(pairs)))
        else:
            rows = [_search_pair(i, K, L, g) for i, (K, L) in enumerate(pairs)]
    except GeometryError as exc:
        _die(exc)
    counts = {"in_R1": 0, "in_R2": 0, "holds": 0, "inconclusive": 0, "violated": 0}
    for row in rows:
        counts["in_R1"] += row["in_R1"]
        counts["in_R2"] += row["in_R2"]
        for c in row["checks"]:
            counts[c["verdict"]] += 1
    pairs_kv = [(k, str(counts[k])) for k in ("in_R1", "in_R2", "holds",
                                              "inconclusive", "violated")]
    text = [f"search seed={seed} count={count} kind={kind} grid={grid}"]
    text += _kv_lines(pairs_kv)
    config = {"seed": seed, "count": count, "kind": kind, "grid": grid,
              "format": fmt or "json"}
    envelope = _envelope("search", config, rows=rows, summary=counts)
    figures = [("verdicts", lambda P, path, c=dict(counts): P.search_figure(c, path))]
    _emit(envelope, out, fmt, text, csv_text=_kv_csv(pairs_kv), figures=figures)
    sys.exit(1 if counts["violated"] else 0)


@main.command("curve")
@click.argument("kind", type=click.Choice(["bonnesen", "ftime"]))
@click.option("--k", "k_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--l", "l_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--from", "start", type=float, default=None,
              help="range start (bonnesen: r_o, ftime: 0)")
@click.option("--to", "stop", type=float, default=None,
              help="range end (bonnesen: R_o, ftime: 5)")
@click.option("--samples", type=int, default=33, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
def cmd_curve(kind, k_file, l_file, start, stop, samples, out, fmt):
    """Sample the Bonnesen functions or the log-slack curve F(t) as CSV."""
    if samples < 2:
        _die("samples must be >= 2")
    try:
        K, k_desc = load_body(k_file)
        L, l_desc = load_body(l_file)
        if kind == "bonnesen":
            rep = classify(K, L)
            q = rep.quermass
            a = rep.r_o if start is None else start
            b = rep.R_o if stop is None else stop
            if b < a:
                raise InvalidParameter("range end below range start")
            rs = np.linspace(a, b, samples)
            curve = [(float(r), float(bonnesen_eval(q, 0, r)),
                      float(bonnesen_eval(q, 1, r))) for r in rs]
            columns = ["r", "b0", "b1"]
            ylabel, title = "Bonnesen value", "Bonnesen functions"
        else:
            a = 0.0 if start is None else start
            b = 5.0 if stop is None else stop
            if b < a:
                raise InvalidParameter("range end below range start")
            ts = np.linspace(a, b, samples)
            curve = [(t, v) for t, v in f_curve(K, L, ts)]
            columns = ["t", "F"]
            ylabel, title = "F(t)", "log-inequality slack along outer parallels"
    except GeometryError as exc:
        _die(exc)
    lines = [",".join(columns)]
    lines.extend(",".join(repr(float(x)) for x in row) for row in curve)
    csv_text = "\n".join(lines) + "\n"
    config = {"kind": kind, "k": k_file, "l": l_file,
              "from": curve[0][0], "to": curve[-1][0], "samples": samples,
              "format": fmt or "csv"}
    envelope = _envelope("curve", config, bodies={"k": k_desc, "l": l_desc},
                         curve=[list(row) for row in curve],
                         summary={"columns": columns})
    pts = [(row[0], row[1]) for row in curve]
    figures = [("curve", lambda P, path, pts=pts: P.curve_figure(
        pts, path, xlabel=columns[0], ylabel=ylabel, title=title))]
    _emit(envelope, out, fmt or ("csv" if not out else None), [],
          csv_text=csv_text, figures=figures)
    sys.exit(0)


if __name__ == "__main__":
    main()
