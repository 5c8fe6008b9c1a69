"""Command-line interface.

Exit codes: 0 on success, 1 when an assertion requested with ``--expect``
fails or a sweep finds a counterexample, 2 on malformed input.
"""

from __future__ import annotations

import sys

import click

from . import io
from .ambiguity import induced_act_order, is_maxmin_representation, maxmin_preference, maxmin_sweep
from .chains import build_chain_digraph, witness_chain
from .compstat import (
    RealChain,
    argmax_set,
    consensus,
    consensus_sweep,
    mcs_theorem_sweep,
    possibly_optimal,
    psi_sweep,
    robust_sweep,
)
from .errors import InputError, NoJoin, NoMeet, NotAForkPoset, TooLarge
from .lattice import core_relation, is_minimum_upper_bound, join, lattice_status, meet
from .poset import dual, is_complete
from .preference import Profile
from .social import acceptable_preferences, construct_acceptable, exists_acceptable_swf, first_violation
from .structure import structure_report
from .sweeps import characterisation_sweep, cycles_chalices_sweep, existence_uniqueness_sweep, swf_sweep

DEFAULT_SEED = 0
THEOREMS = ("characterisation", "existence", "uniqueness", "cycles-chalices", "swf", "mcs", "maxmin")


class Failed(Exception):
    """Signals exit code 1 after output has been written."""


def _emit(text: str) -> None:
    click.echo(text, nl=not text.endswith("\n"))


def _run(fn):
    try:
        fn()
    except Failed:
        sys.exit(1)
    except (InputError, TooLarge) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


poset_opt = click.option("--poset", "poset_path", required=True, type=click.Path(dir_okay=False), help="Poset JSON file.")
profile_opt = click.option("--profile", "profile_path", required=True, type=click.Path(dir_okay=False), help="Profile JSON file.")
format_opt = click.option("--format", "fmt", type=click.Choice(["text", "json", "dot"]), default="text", show_default=True)
jobs_opt = click.option("--jobs", type=int, default=None, help="Worker processes (0 = all cores; default SCLAT_JOBS or 1).")
seed_opt = click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Single-crossing bounds of preferences over a partially ordered set of alternatives."""


@main.command()
@poset_opt
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json", show_default=True)
def analyze(poset_path, fmt):
    """Structure report: crowns, diamonds, chalices, weak cycles, forbidden 4-posets, fork class."""

    def go():
        p = io.load_poset(poset_path)
        report = structure_report(p)
        status = lattice_status(p)
        if fmt == "dot":
            marked = set()
            if report.crowns:
                marked = io.witness_edges("crown", report.crowns[0])
            elif report.diamonds:
                marked = io.witness_edges("diamond", report.diamonds[0])
            _emit(io.poset_dot(p, marked))
            return
        out = {
            "poset": io.poset_to_json(p),
            "complete": is_complete(p),
            "structure": report.to_json(),
            "lattice_status": status.to_json(),
        }
        _emit(io.dumps(out))

    _run(go)


def _bound_command(which: str):
    @poset_opt
    @profile_opt
    @format_opt
    @click.option("--explain", is_flag=True, help="Print the core relation with chain witnesses.")
    @click.option("--expect", type=click.Choice(["exists", "none"]), default=None, help="Exit 1 unless the bound exists (or does not).")
    def command(poset_path, profile_path, fmt, explain, expect):
        def go():
            p = io.load_poset(poset_path)
            P = io.load_profile(profile_path, p.elements)
            q = p if which == "join" else dual(p)
            result, witness = None, None
            try:
                result = join(P, p) if which == "join" else meet(P, p)
            except (NoJoin, NoMeet) as exc:
                witness = exc.witness
            if fmt == "json":
                out = {which: str(result) if result else None, "cycle": list(witness) if witness else None}
                if explain:
                    out["core"] = _explain_rows(P, q)
                _emit(io.dumps(out))
            elif fmt == "dot":
                _emit(io.chain_digraph_dot(build_chain_digraph(P, q)))
            else:
                if result is not None:
                    _emit(str(result))
                else:
                    _emit(f"no {which}: core relation cycle " + " -> ".join(witness + witness[:1]))
                if explain:
                    for row in _explain_rows(P, q):
                        _emit(_explain_text(row))
            if expect == "exists" and result is None or expect == "none" and result is not None:
                raise Failed

        _run(go)

    command.__doc__ = f"Canonical {which} of a profile, or the cycle that rules it out."
    return command


def _explain_rows(P: Profile, p) -> list[dict]:
    core = core_relation(P, p)
    g = build_chain_digraph(P, p)
    rows = core.table()
    for row in rows:
        x, y = row["pair"]
        w = witness_chain(g, x, y)
        s = witness_chain(g, x, y, strict=True)
        row["chain_witness"] = list(w) if w else None
        row["strict_chain_witness"] = list(s) if s else None
    return rows


def _explain_text(row: dict) -> str:
    x, y = row["pair"]
    rel = {(True, True): "~", (True, False): ">", (False, True): "<", (False, False): "?"}[
        (row["upper_weakly_above"], row["lower_weakly_above"])
    ]
    chain = "(" + ",".join(row["chain_witness"]) + ")" if row["chain_witness"] else "none"
    strict = "(" + ",".join(row["strict_chain_witness"]) + ")" if row["strict_chain_witness"] else "none"
    return f"{x} {rel} {y}   chain {chain}   strict chain {strict}"


main.command(name="join")(_bound_command("join"))
main.command(name="meet")(_bound_command("meet"))


@main.command()
@click.option("--theorem", type=click.Choice(THEOREMS), required=True)
@click.option("--n", "n", type=int, default=None, help="Poset size (largest size for cycles-chalices and swf).")
@click.option("--deep", is_flag=True, help="Exhaustive where the default samples.")
@seed_opt
@jobs_opt
def verify(theorem, n, deep, seed, jobs):
    """Run a theorem sweep and print its JSON report."""

    def go():
        sweep = _run_sweep(theorem, n, deep, seed, jobs)
        reports = sweep if isinstance(sweep, list) else [sweep]
        out = [r.to_json() for r in reports]
        _emit(io.dumps(out[0] if len(out) == 1 else out))
        if not all(r.ok for r in reports):
            raise Failed

    _run(go)


def _run_sweep(theorem, n, deep, seed, jobs):
    if theorem in ("characterisation", "existence", "uniqueness"):
        n = 4 if n is None else n
        if n > 5 or n < 1:
            raise TooLarge("sweeps over every poset cover 1 to 5 elements")
        sample = sample_posets = None
        if n == 5 and not deep:
            sample, sample_posets = 30, 400
        if theorem == "characterisation":
            return characterisation_sweep(n, 2, seed=seed, jobs=jobs, sample=sample, sample_posets=sample_posets)
        sweep = existence_uniqueness_sweep(n, seed=seed, jobs=jobs, sample=sample, sample_posets=sample_posets)
        return sweep
    if theorem == "cycles-chalices":
        return cycles_chalices_sweep(n_max=5 if n is None else n, random_count=5000 if deep else 500, seed=seed, jobs=jobs)
    if theorem == "swf":
        n = 4 if n is None else n
        if n > 4 and not deep:
            raise TooLarge("the acceptability sweep beyond 4 elements needs --deep")
        return swf_sweep(n_max=n, jobs=jobs)
    if theorem == "mcs":
        return [mcs_theorem_sweep(5 if n is None else n), consensus_sweep(), robust_sweep(), psi_sweep()]
    return maxmin_sweep(seed=seed)


@main.group()
def mcs():
    """Comparative statics on a chain of real alternatives."""


chain_opt = click.option("--chain", "chain_text", required=True, help="Comma-separated alternatives, e.g. 1,2,3.")


def _chain(text: str) -> RealChain:
    try:
        return RealChain.of(float(v) if "." in v else int(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"--chain: {exc}") from None


@mcs.command()
@chain_opt
@click.option("--order", required=True, help="A ranking such as '2 > 3 > 1'.")
def argmax(chain_text, order):
    """Optimal alternatives of one preference."""
    def go():
        c = _chain(chain_text)
        _emit(io.dumps({"argmax": list(argmax_set(c.order(order), c))}))

    _run(go)


@mcs.command(name="consensus")
@chain_opt
@click.option("--order", "orders", multiple=True, required=True, help="Repeat once per preference.")
def consensus_cmd(chain_text, orders):
    """Consensus and possibly-optimal sets of several preferences."""
    def go():
        c = _chain(chain_text)
        P = [c.order(o) for o in orders]
        _emit(io.dumps({"consensus": list(consensus(P, c)), "possibly_optimal": list(possibly_optimal(P, c))}))

    _run(go)


@mcs.command(name="sweep")
def mcs_sweep_cmd():
    """Run the argmax, consensus, possibly-optimal and monotone-selection sweeps."""
    def go():
        reports = [mcs_theorem_sweep(), consensus_sweep(), robust_sweep(), psi_sweep()]
        _emit(io.dumps([r.to_json() for r in reports]))
        if not all(r.ok for r in reports):
            raise Failed

    _run(go)


@main.command()
@click.option("--space", "space_path", required=True, type=click.Path(dir_okay=False), help="Act space JSON.")
@click.option("--prefs", "prefs_path", required=True, type=click.Path(dir_okay=False), help="CE preferences JSON.")
def maxmin(space_path, prefs_path):
    """Maxmin preference of a set of CE preferences, checked against the minimum-upper-bound test."""

    def go():
        s = io.load_act_space(space_path)
        P = io.load_ce_preferences(prefs_path, s)
        star = maxmin_preference(P, s)
        order = star.weak_order()
        prof = Profile(tuple(m.weak_order() for m in P))
        mub = is_minimum_upper_bound(order, prof, induced_act_order(s))
        rep = is_maxmin_representation(P, order, s)
        _emit(io.dumps({
            "maxmin": star.to_json(),
            "order": str(order),
            "is_maxmin_representation": rep,
            "is_minimum_upper_bound": mub,
        }))
        if rep != mub:
            raise Failed

    _run(go)


@main.group()
def swf():
    """Acceptable aggregation under a normative constraint."""


@swf.command()
@poset_opt
@profile_opt
@click.option("--expect", type=click.Choice(["acceptable", "none"]), default=None)
def check(poset_path, profile_path, expect):
    """An acceptable social preference for the profile, or why there is none."""

    def go():
        p = io.load_poset(poset_path)
        P = io.load_profile(profile_path, p.elements)
        out = {"fork_class": exists_acceptable_swf(p).fork_class}
        found = None
        try:
            found = construct_acceptable(P, p)
            out["method"] = "construction"
        except NotAForkPoset:
            if p.n <= 6:
                hits = acceptable_preferences(P, p)
                found = hits[0] if hits else None
                out["method"] = "search"
            else:
                out["method"] = "none"
        out["acceptable"] = str(found) if found else None
        if found is None:
            try:
                cand = join(P, p)
                out["violation"] = {**first_violation(cand, P, p), "social": str(cand)}
            except NoJoin as exc:
                out["violation"] = {"axiom": "no_minimum_upper_bound", "cycle": list(exc.witness)}
        _emit(io.dumps(out))
        if expect == "acceptable" and found is None or expect == "none" and found is not None:
            raise Failed

    _run(go)


@swf.command()
@poset_opt
def classify(poset_path):
    """Whether an acceptable aggregation rule exists, with the forbidden subposet if not."""
    def go():
        _emit(io.dumps(exists_acceptable_swf(io.load_poset(poset_path)).to_json()))

    _run(go)


@main.command(name="export-dot")
@poset_opt
@click.option("--profile", "profile_path", type=click.Path(dir_okay=False), default=None, help="Draw the chain digraph of this profile.")
def export_dot(poset_path, profile_path):
    """DOT for the transitive reduction (witness edges highlighted) or a chain digraph."""
    def go():
        p = io.load_poset(poset_path)
        if profile_path:
            _emit(io.chain_digraph_dot(build_chain_digraph(io.load_profile(profile_path, p.elements), p)))
            return
        report = structure_report(p)
        marked = set()
        if report.crowns:
            marked = io.witness_edges("crown", report.crowns[0])
        elif report.diamonds:
            marked = io.witness_edges("diamond", report.diamonds[0])
        _emit(io.poset_dot(p, marked))

    _run(go)


if __name__ == "__main__":
    main()
