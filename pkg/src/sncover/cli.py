"""Command-line toolkit: bound tables, set verification, exact search,
degree certification, shape listing, and certificate re-validation.

Exit codes: 0 success/verified, 1 a checked property fails, 2 usage,
3 resource cap (rerun with --force to override).
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

import click

from . import __version__
from .bounds import compare_gh_range, construct_h_below_g
from .cache import ResultCache
from .certificates import CoverCertificate, SearchConstraints, check_certificate
from .components import (
    ALTERNATING,
    Affine,
    BasicSet,
    Component,
    ComponentPool,
    Imprimitive,
    Intransitive,
    component_from_json,
    component_key,
    component_label,
    standard_pool,
)
from .covering import (
    NAMED_SETS,
    build_named_set,
    interval_report,
    verify_basic_set,
    verify_special_basic_set,
)
from .errors import ApplicabilityError, DomainError, ResourceError
from .metacyclic import enumerate_shapes
from .search import SearchLimits, certify_degree, min_cover_search

FORMATS = click.Choice(["human", "json", "csv"])


def _parse_component_token(token: str, n: int) -> Component:
    token = token.strip()
    if token.startswith("{"):
        return component_from_json(json.loads(token))
    up = token.upper().replace("_", "")
    if up == "A":
        return ALTERNATING
    if up == "AGL":
        return Affine(n)
    if up.startswith("P") and up[1:].isdigit():
        return Intransitive(int(up[1:]))
    if up.startswith("W") and up[1:].isdigit():
        b = int(up[1:])
        if b < 2 or n % b:
            raise click.UsageError(f"wreath block size {b} does not divide {n}")
        return Imprimitive(b, n // b)
    raise click.UsageError(
        f"cannot parse component {token!r} (use P<k>, W<b>, A, AGL, or JSON)"
    )


def _load_pool(spec: str, n: int, include_half: bool) -> ComponentPool:
    if spec == "standard":
        return standard_pool(n, include_half=include_half)
    path = Path(spec)
    if not path.exists():
        raise click.UsageError(f"--pool must be 'standard' or a JSON file, got {spec!r}")
    comps = tuple(
        sorted(
            (component_from_json(o) for o in json.loads(path.read_text())),
            key=component_key,
        )
    )
    return ComponentPool(n, comps)


def _write_or_echo(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
        click.echo(f"wrote {out}")
    else:
        click.echo(text)


def _rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: row.get(c) for c in columns})
    return buf.getvalue()


@click.group()
@click.version_option(version=__version__)
@click.option("--cache-dir", type=click.Path(), default=None, help="Result cache directory.")
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel workers for range commands.")
@click.pass_context
def main(ctx: click.Context, cache_dir: Optional[str], jobs: int) -> None:
    """Normal-covering invariants of symmetric groups: gamma, gamma', r."""
    if jobs < 1:
        raise click.UsageError("--jobs must be positive")
    ctx.obj = {
        "cache": ResultCache(cache_dir, __version__) if cache_dir else None,
        "jobs": jobs,
    }


def _bounds_row(args: tuple[int, bool, int]) -> dict:
    n, run_search, max_search_degree = args
    return interval_report(
        n, run_search=run_search, max_search_degree=max_search_degree
    ).to_json()


_BOUND_COLUMNS = ["n", "g", "h", "delta_e_size", "gamma", "gamma_prime_upper", "r_lo", "r_hi"]


def _flat_bounds(obj: dict) -> dict:
    flat = dict(obj)
    flat["r_lo"], flat["r_hi"] = obj["r_interval"]
    return flat


def _human_bounds_row(obj: dict) -> str:
    lo, hi = obj["r_interval"]
    r = str(lo) if lo == hi else f"[{lo},{hi}]"

    def cell(v, blank="-"):
        return str(v) if v is not None else blank

    return (
        f"n={obj['n']:<4d} g={cell(obj['g']):<4} h={cell(obj['h']):<4} "
        f"|dE|={cell(obj['delta_e_size']):<4} "
        f"gamma={cell(obj['gamma'], '?'):<4} "
        f"gamma'<={cell(obj['gamma_prime_upper']):<4} r={r}"
    )


@main.command()
@click.option("--from", "from_", type=int, required=True, help="First degree.")
@click.option("--to", type=int, required=True, help="Last degree (inclusive).")
@click.option("--format", "fmt", type=FORMATS, default="human", show_default=True)
@click.option("--no-search", is_flag=True, help="Skip the exact pool search.")
@click.option("--max-search-degree", type=int, default=30, show_default=True)
@click.option("--plot", type=click.Path(), default=None, help="Render bound curves to this file.")
@click.option("--out", type=click.Path(), default=None, help="Write the table to a file.")
@click.pass_context
def bounds(ctx, from_, to, fmt, no_search, max_search_degree, plot, out) -> None:
    """Per-degree table: g, h, |delta_E|, certified gamma, gamma' bound, r interval."""
    if from_ < 3 or to < from_:
        raise click.UsageError("need 3 <= --from <= --to")
    cache: Optional[ResultCache] = ctx.obj["cache"]
    jobs: int = ctx.obj["jobs"]
    degrees = list(range(from_, to + 1))

    def produce():
        """Yield one report JSON per degree, in order, caching as it goes."""
        descriptors = [
            {
                "command": "bounds",
                "n": n,
                "search": not no_search,
                "max_search_degree": max_search_degree,
            }
            for n in degrees
        ]
        hits = [cache.get(d) if cache else None for d in descriptors]
        todo = [(i, degrees[i]) for i, h in enumerate(hits) if h is None]
        work = [(n, not no_search, max_search_degree) for _, n in todo]
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                fresh = iter(list(pool.map(_bounds_row, work)))
                for i, hit in enumerate(hits):
                    obj = hit if hit is not None else next(fresh)
                    if hit is None and cache:
                        cache.put(descriptors[i], obj)
                    yield obj
        else:
            fresh = map(_bounds_row, work)
            for i, hit in enumerate(hits):
                obj = hit if hit is not None else next(fresh)
                if hit is None and cache:
                    cache.put(descriptors[i], obj)
                yield obj

    if fmt == "human" and out is None:
        done = []
        for obj in produce():
            click.echo(_human_bounds_row(obj))
            done.append(obj)
    else:
        done = list(produce())
        if fmt == "json":
            _write_or_echo(json.dumps(done, indent=2), out)
        elif fmt == "csv":
            _write_or_echo(_rows_to_csv([_flat_bounds(r) for r in done], _BOUND_COLUMNS), out)
        else:
            _write_or_echo("\n".join(_human_bounds_row(r) for r in done), out)
    if plot:
        from .plotting import render_bounds_figure

        render_bounds_figure(done, plot)
        click.echo(f"figure written to {plot}")


def _resolve_set(set_spec: str, n: int) -> BasicSet:
    if set_spec in NAMED_SETS:
        return build_named_set(set_spec, n)
    if set_spec.startswith("@"):
        set_spec = Path(set_spec[1:]).read_text()
    elif Path(set_spec).exists():
        set_spec = Path(set_spec).read_text()
    try:
        raw = json.loads(set_spec)
    except json.JSONDecodeError as exc:
        raise click.UsageError(
            f"--set must be one of {NAMED_SETS}, a JSON list, or @file: {exc}"
        )
    if isinstance(raw, dict) and "components" in raw:
        raw = raw["components"]
    comps = tuple(
        sorted((component_from_json(o) for o in raw), key=component_key)
    )
    return BasicSet(n, comps, name="custom")


def _guard_degree(n: int, max_types: int, force: bool) -> None:
    from .partitions import count_partitions

    if n > 3 and count_partitions(n) > max_types and not force:
        click.echo(
            f"resource cap: p({n}) = {count_partitions(n)} types exceeds {max_types}; "
            "rerun with --force",
            err=True,
        )
        sys.exit(3)


@main.command()
@click.argument("n", type=int)
@click.option("--set", "set_spec", required=True,
              help=f"Named set ({', '.join(NAMED_SETS)}), a JSON component list, or @file.")
@click.option("--basic-only", is_flag=True, help="Skip the metacyclic coverage check.")
@click.option("--no-oracle", is_flag=True, help="Sufficient rules only, no small-degree oracle.")
@click.option("--max-types", type=int, default=1_000_000, show_default=True)
@click.option("--force", is_flag=True, help="Override the resource cap.")
@click.pass_context
def verify(ctx, n, set_spec, basic_only, no_oracle, max_types, force) -> None:
    """Verify a named or JSON basic set at degree N (exit 1 on failure)."""
    _guard_degree(n, max_types, force)
    try:
        delta = _resolve_set(set_spec, n)
    except ApplicabilityError as exc:
        click.echo(f"applicability error: {exc}", err=True)
        sys.exit(2)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    labels = ", ".join(component_label(c, n) for c in delta.components)
    click.echo(f"set {delta.name or 'custom'} at degree {n}: {{{labels}}} (size {delta.size})")
    failed = False
    basic = verify_basic_set(delta)
    click.echo(f"  basic: {'PASS' if basic.ok else 'FAIL'}")
    if basic.trivial_singleton:
        click.echo("    degenerate: the alternating group alone is never a basic set")
    for T in basic.uncovered:
        click.echo(f"    uncovered type {T.bracket()}")
    for T in basic.unresolved:
        click.echo(f"    unresolved type {T.bracket()} (fact-table component undecidable)")
    failed |= not basic.ok
    if not basic_only:
        special = verify_special_basic_set(delta, allow_oracle=not no_oracle)
        mode = "oracle-assisted" if special.oracle_used else "rules only"
        click.echo(f"  special: {'PASS' if special.ok else 'FAIL'} ({mode})")
        for S in special.uncovered_shapes:
            click.echo(f"    uncovered shape {S}")
        for S in special.unresolved_shapes:
            click.echo(f"    unresolved shape {S}")
        failed |= not special.ok
    sys.exit(1 if failed else 0)


def _summarize_cover(cert) -> str:
    if not cert.feasible:
        return (
            f"no cover within constraints at degree {cert.n} "
            f"(cap {cert.optimality.get('cap')}, "
            f"{cert.optimality.get('branches_exhausted')} branches exhausted)"
        )
    chosen = ", ".join(component_label(c, cert.n) for c in cert.chosen)
    return (
        f"minimum cover size {cert.size} at degree {cert.n}: {{{chosen}}}; "
        f"optimal (size {cert.size - 1} infeasible over the pool)"
    )


@main.command()
@click.argument("n", type=int)
@click.option("--pool", default="standard", show_default=True, help="'standard' or a JSON component file.")
@click.option("--include-half", is_flag=True, help="Admit the non-maximal P_(n/2) into the pool.")
@click.option("--force-in", multiple=True, help="Component required in the cover (P<k>, W<b>, A, AGL).")
@click.option("--force-out", multiple=True, help="Component banned from the cover.")
@click.option("--max-size", type=int, default=None, help="Size cap (defaults to g(n)).")
@click.option("--max-types", type=int, default=1_000_000, show_default=True)
@click.option("--force", is_flag=True, help="Override the resource cap.")
@click.option("--out", type=click.Path(), default=None, help="Certificate path (default cover-s<N>.json).")
@click.option("--check", "check_path", type=click.Path(exists=True), default=None,
              help="Re-validate an existing certificate instead of searching.")
@click.pass_context
def search(ctx, n, pool, include_half, force_in, force_out, max_size, max_types, force, out, check_path) -> None:
    """Exact minimum-cover search over a component pool; writes a certificate."""
    if check_path:
        _check_file(check_path)
        return
    try:
        the_pool = _load_pool(pool, n, include_half)
        constraints = SearchConstraints(
            forced_in=tuple(_parse_component_token(t, n) for t in force_in),
            forced_out=tuple(_parse_component_token(t, n) for t in force_out),
            max_size=max_size,
        )
        cache: Optional[ResultCache] = ctx.obj["cache"]
        descriptor = {
            "command": "search",
            "n": n,
            "pool": [component_label(c, n) for c in the_pool.members],
            "constraints": constraints.to_json(),
        }
        payload = cache.get(descriptor) if cache else None
        if payload is None:
            cert = min_cover_search(
                n,
                the_pool,
                constraints,
                limits=SearchLimits(max_types=max_types, force=force),
            )
            payload = cert.to_json()
            if cache:
                cache.put(descriptor, payload)
        cert = CoverCertificate.from_json(payload)
    except ResourceError as exc:
        click.echo(f"resource cap: {exc}; rerun with --force", err=True)
        sys.exit(3)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    out = out or f"cover-s{n}.json"
    Path(out).write_text(json.dumps(payload, indent=2) + "\n")
    click.echo(_summarize_cover(cert))
    click.echo(f"certificate written to {out}")


@main.command()
@click.argument("n", type=int)
@click.option("--out", type=click.Path(), default=None, help="Certificate path (default certify-s<N>.json).")
@click.pass_context
def certify(ctx, n, out) -> None:
    """Rule-certified exact value and P_2 exclusion (degrees 10 and 14)."""
    try:
        cert = certify_degree(n)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    out = out or f"certify-s{n}.json"
    Path(out).write_text(json.dumps(cert.to_json(), indent=2) + "\n")
    if cert.unresolved:
        click.echo(f"UNRESOLVED: {len(cert.unresolved)} candidates escaped the rule engine", err=True)
        click.echo(f"certificate written to {out}")
        sys.exit(1)
    click.echo(
        f"gamma(S_{n}) = {cert.gamma}; no size-{cert.gamma} cover contains P_2 "
        f"({len(cert.lower_bound_refutations)} + {len(cert.p2_refutations)} candidates refuted)"
    )
    click.echo(f"certificate written to {out}")


@main.command()
@click.argument("n", type=int)
@click.option("--format", "fmt", type=FORMATS, default="human", show_default=True)
@click.option("--max-types", type=int, default=1_000_000, show_default=True)
@click.option("--force", is_flag=True, help="Override the resource cap.")
@click.option("--out", type=click.Path(), default=None)
def shapes(n, fmt, max_types, force, out) -> None:
    """List the special metacyclic shapes of degree N."""
    _guard_degree(n, max_types, force)
    items = enumerate_shapes(n)
    if fmt == "json":
        _write_or_echo(json.dumps([s.to_json() for s in items], indent=2), out)
    elif fmt == "csv":
        rows = [{"n": s.n, "parts": " ".join(map(str, s.parts))} for s in items]
        _write_or_echo(_rows_to_csv(rows, ["n", "parts"]), out)
    else:
        lines = [str(s) for s in items]
        lines.append(f"{len(items)} shapes at degree {n}")
        _write_or_echo("\n".join(lines), out)


@main.command(name="compare-gh")
@click.option("--from", "from_", type=int, default=None, help="First degree of a range.")
@click.option("--to", type=int, default=None, help="Last degree of a range.")
@click.option("--construct", is_flag=True, help="Build an odd prime product with h < g.")
@click.option("--start-prime", type=int, default=11, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="human", show_default=True)
@click.option("--plot", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), default=None)
def compare_gh(from_, to, construct, start_prime, fmt, plot, out) -> None:
    """Tabulate g versus h, or construct a degree where h < g."""
    if construct:
        try:
            rec = construct_h_below_g(start_prime)
        except DomainError as exc:
            raise click.UsageError(str(exc))
        obj = rec.to_json()
        if fmt == "json":
            _write_or_echo(json.dumps(obj, indent=2), out)
        elif fmt == "csv":
            _write_or_echo(_rows_to_csv([obj | {"primes": " ".join(map(str, rec.primes))}],
                                        ["n", "g", "h", "primes"]), out)
        else:
            _write_or_echo(
                f"n = {rec.n} = {'*'.join(map(str, rec.primes))}: "
                f"h(n) = {rec.h} < g(n) = {rec.g}",
                out,
            )
        return
    if from_ is None or to is None:
        raise click.UsageError("give --from/--to for a range, or --construct")
    try:
        rows = compare_gh_range(from_, to)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    dicts = [{"n": r.n, "g": r.g, "h": r.h, "sign": r.sign} for r in rows]
    if fmt == "json":
        _write_or_echo(json.dumps(dicts, indent=2), out)
    elif fmt == "csv":
        _write_or_echo(_rows_to_csv(dicts, ["n", "g", "h", "sign"]), out)
    else:
        _write_or_echo(
            "\n".join(f"n={d['n']:<4d} g={d['g']:<6} h={d['h']:<6} g {d['sign']} h" for d in dicts),
            out,
        )
    if plot:
        from .plotting import render_gh_figure

        render_gh_figure(dicts, plot)
        click.echo(f"figure written to {plot}")


def _check_file(path: str) -> None:
    obj = json.loads(Path(path).read_text())
    report = check_certificate(obj)
    if report.ok:
        click.echo(f"{path}: certificate valid")
        sys.exit(0)
    click.echo(f"{path}: certificate REJECTED", err=True)
    for p in report.problems:
        click.echo(f"  {p}", err=True)
    sys.exit(1)


@main.command(name="check-certificate")
@click.argument("path", type=click.Path(exists=True))
def check_certificate_cmd(path) -> None:
    """Re-validate a certificate file without re-running any search."""
    _check_file(path)


if __name__ == "__main__":
    main()
