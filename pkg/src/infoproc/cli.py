"""Command-line front end: batch analyses and plot-ready table exports.

Every command resolves its configuration (flags > config file > defaults),
writes its outputs atomically, and records a JSON manifest next to the main
output with the resolved configuration, seeds, and input digests. ``rerun``
replays a manifest and reproduces the outputs byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import sys
import tempfile
from io import StringIO

import click
import numpy as np

from infoproc import __version__, classify, cluster, features, langton, pipeline, stationary
from infoproc.errors import DomainError, FormatError, InfoprocError, ResourceError

LN2 = math.log(2.0)

COMMANDS = ("eca-features", "predict", "cluster", "lambda", "transient", "ts")


def _atomic_write(path: str, text: str) -> None:
    """Write through a sibling temp file and rename, so a reader never sees
    a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".infoproc-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _manifest_path(output: str) -> str:
    return f"{output}.manifest.json"


def _write_manifest(command: str, config: dict, inputs: list, outputs: list, output_base: str) -> str:
    path = _manifest_path(output_base)
    doc = {
        "tool": "infoproc",
        "version": __version__,
        "command": command,
        "config": config,
        "inputs": {p: _sha256(p) for p in inputs},
        "outputs": outputs,
    }
    _atomic_write(path, json.dumps(doc, indent=2) + "\n")
    return path


def _csv_footer(manifest: str) -> str:
    return f"# manifest: {os.path.basename(manifest)}\n"


# ---------------------------------------------------------------------------
# command bodies, each driven by one JSON-serializable config dict so that
# `rerun` can replay them from a manifest


def _run_eca_features(cfg: dict) -> None:
    output = cfg["output"]
    matrix, descriptors = features.feature_matrix(cfg["t"], cfg["mode"])
    buf = StringIO()
    features.write_feature_csv(buf, matrix, descriptors)
    manifest = _manifest_path(output)
    _atomic_write(output, buf.getvalue() + _csv_footer(manifest))
    _write_manifest("eca-features", cfg, [], [output], output)


def _run_predict(cfg: dict) -> None:
    output = cfg["output"]
    if cfg["classes"]:
        table = classify.load_class_table(cfg["classes"])
        inputs = [cfg["classes"]]
    else:
        table = classify.bundled_class_table()
        inputs = []
    report: dict = {
        "manifest": os.path.basename(_manifest_path(output)),
        "class_counts": {str(c): n for c, n in table.counts().items()},
        "per_depth": [],
    }
    for t in range(1, cfg["t_max"] + 1):
        pool = len(features.enumerate_descriptors(t, "per-step"))
        selections = []
        for n in range(1, min(cfg["n_max"], pool) + 1):
            search = (
                "exhaustive"
                if math.comb(pool, n) <= classify.EXHAUSTIVE_BOUND
                else "beam"
            )
            sel = classify.select_principal(t, n, search=search, classes=table)
            entry = {
                "n": n,
                "search": sel.search,
                "features": list(sel.features),
                "power": sel.power,
            }
            if cfg["permutations"]:
                bl = classify.permutation_baseline(
                    t, n, sel.features,
                    n_permutations=cfg["permutations"], seed=cfg["seed"], classes=table,
                )
                entry["baseline"] = {
                    "mean": bl.mean, "lo": bl.lo, "hi": bl.hi,
                    "n_permutations": bl.n_permutations, "seed": bl.seed,
                }
            selections.append(entry)
        report["per_depth"].append({"t": t, "pool_size": pool, "selections": selections})
    if cfg["t_max"] >= 2:
        nl = classify.nonlocality(cfg["t_max"], classes=table)
        report["power_curve"] = [{"t": t, "power": p} for t, p in nl.curve]
        report["t_c"] = nl.conventions
    _atomic_write(output, json.dumps(report, indent=2) + "\n")
    _write_manifest("predict", cfg, inputs, [output], output)


def _summary_row(fv: features.FeatureVector) -> list:
    return [
        fv.value("I010"),
        fv.value("I100") + fv.value("I001"),
        fv.value("S111"),
    ]


def _run_cluster(cfg: dict) -> None:
    output = cfg["output"]
    if cfg["source"] == "iid":
        if cfg["vector"] == "full":
            matrix, _ = features.feature_matrix(cfg["t"], "per-step")
            vectors = {rule: matrix[rule] for rule in range(256)}
        else:
            vectors = {}
            for rule in range(256):
                s = features.summary_triple(rule, cfg["t"])
                vectors[rule] = [s.memory, s.transfer, s.integration]
    else:
        vectors = {}
        for rule in range(256):
            fv = stationary.stationary_features(rule, cfg["n_ring"])
            vectors[rule] = fv.values() if cfg["vector"] == "full" else _summary_row(fv)
    dendrogram = cluster.complete_linkage(vectors)
    text = cluster.export_dendrogram(dendrogram, cfg["format"])
    manifest = _manifest_path(output)
    if cfg["format"] == "json":
        doc = json.loads(text)
        doc = {"manifest": os.path.basename(manifest), "tree": doc}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        # a bracketed comment is legal Newick
        text = f"[manifest: {os.path.basename(manifest)}]\n{text}\n"
    _atomic_write(output, text)
    _write_manifest("cluster", cfg, [], [output], output)


def _run_lambda(cfg: dict) -> None:
    output = cfg["output"]
    lines = ["rule,lambda,i_tot,i_mem,i_trans_l,i_trans_r,cross_check"]
    for rule in range(256):
        profile = langton.lambda_profile(rule)
        cf = langton.closed_form_features(rule)
        fv = features.feature_vector(rule, 1)
        exact = (
            fv.value("I111") * LN2,
            fv.value("I010") * LN2,
            fv.value("I100") * LN2,
            fv.value("I001") * LN2,
        )
        closed = (cf.i_tot, cf.i_mem, cf.i_trans_left, cf.i_trans_right)
        dev = max(abs(a - b) for a, b in zip(closed, exact))
        lines.append(
            f"{rule},{float(profile.lam):.12g},"
            + ",".join(f"{v:.12g}" for v in closed)
            + f",{dev:.3g}"
        )
    manifest = _manifest_path(output)
    _atomic_write(output, "\n".join(lines) + "\n" + _csv_footer(manifest))
    _write_manifest("lambda", cfg, [], [output], output)


def _run_transient(cfg: dict) -> None:
    output = cfg["output"]
    points = stationary.transient_features(
        cfg["rule"], cfg["n_ring"], cfg["t_max"], samples=cfg["samples"], seed=cfg["seed"]
    )
    buf = StringIO()
    stationary.write_transient_csv(buf, points)
    manifest = _manifest_path(output)
    _atomic_write(output, buf.getvalue() + _csv_footer(manifest))
    _write_manifest("transient", cfg, [], [output], output)


def _ts_output_name(base: str, w: int, single: bool) -> str:
    if single:
        return base
    root, ext = os.path.splitext(base)
    return f"{root}_w{w}{ext or '.csv'}"


def _run_ts(cfg: dict) -> None:
    output = cfg["output"]
    inputs = []
    if cfg["input"]:
        panel = pipeline.load_panel(cfg["input"], cfg["chain"] or None)
        inputs.append(cfg["input"])
    else:
        panel = pipeline.synth_regime(cfg["synth_seed"])
    windows = list(cfg["w"])
    manifest = _manifest_path(output)
    outputs = []
    for w in windows:
        pcfg = pipeline.PipelineConfig(
            sigma=cfg["sigma"], window=w, delay=cfg["delay"], k=cfg["k"],
            stride=cfg["stride"], jitter_seed=cfg["seed"], unit=cfg["unit"],
        )
        points = pipeline.trajectory(panel, pcfg)
        buf = StringIO()
        pipeline.write_trajectory_csv(buf, points)
        path = _ts_output_name(output, w, single=len(windows) == 1)
        _atomic_write(path, buf.getvalue() + _csv_footer(manifest))
        outputs.append(path)
    _write_manifest("ts", cfg, inputs, outputs, output)


_RUNNERS = {
    "eca-features": _run_eca_features,
    "predict": _run_predict,
    "cluster": _run_cluster,
    "lambda": _run_lambda,
    "transient": _run_transient,
    "ts": _run_ts,
}


# ---------------------------------------------------------------------------
# configuration file support: plain "key = value" lines, optionally scoped
# as "command.key = value"; flags still win over file values


def _coerce(raw: str):
    raw = raw.strip()
    if "," in raw:
        return tuple(_coerce(part) for part in raw.split(","))
    low = raw.lower()
    if low in ("true", "false"):
        return low == "true"
    for kind in (int, float):
        try:
            return kind(raw)
        except ValueError:
            pass
    return raw


def _load_config(path: str) -> dict:
    per_command: dict[str, dict] = {name: {} for name in COMMANDS}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise FormatError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, raw = line.partition("=")
            key = key.strip()
            value = _coerce(raw)
            if "." in key:
                command, _, field = key.partition(".")
                if command not in per_command:
                    raise FormatError(f"{path}:{lineno}: unknown command {command!r}")
                per_command[command][field] = value
            else:
                for scoped in per_command.values():
                    scoped[key] = value
    return per_command


@click.group()
@click.version_option(__version__)
@click.option(
    "--config", "config_path", type=click.Path(exists=True, dir_okay=False),
    default=None, help="Key-value config file; flags override its values.",
)
@click.pass_context
def cli(ctx, config_path):
    """Information processing in cellular automata and time-series panels."""
    if config_path:
        ctx.default_map = _load_config(config_path)


@cli.command("eca-features")
@click.option("--t", type=int, default=1, show_default=True, help="Light-cone depth.")
@click.option("--mode", type=click.Choice(["per-step", "cumulative"]), default="per-step", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), required=True)
def cmd_eca_features(t, mode, output):
    """Export the 256-rule information-feature table as CSV."""
    _run_eca_features({"t": t, "mode": mode, "output": output})


@cli.command("predict")
@click.option("--t-max", type=int, default=3, show_default=True)
@click.option("--n-max", type=int, default=2, show_default=True, help="Largest feature-set size searched per depth.")
@click.option("--permutations", type=int, default=1000, show_default=True, help="Permutation-baseline size; 0 skips it.")
@click.option("--classes", type=click.Path(exists=True, dir_okay=False), default=None, help="Alternative rule,class CSV.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), required=True)
def cmd_predict(t_max, n_max, permutations, classes, seed, output):
    """Search principal feature sets and report predictive power as JSON."""
    _run_predict({
        "t_max": t_max, "n_max": n_max, "permutations": permutations,
        "classes": classes, "seed": seed, "output": output,
    })


@cli.command("cluster")
@click.option("--source", type=click.Choice(["iid", "stationary"]), default="iid", show_default=True)
@click.option("--t", type=int, default=1, show_default=True, help="Feature depth (iid source).")
@click.option("--n-ring", type=int, default=15, show_default=True, help="Ring size (stationary source).")
@click.option("--vector", type=click.Choice(["full", "summary"]), default="full", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "newick"]), default="json", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), required=True)
def cmd_cluster(source, t, n_ring, vector, fmt, output):
    """Complete-linkage dendrogram of the 256 rules' feature vectors."""
    _run_cluster({
        "source": source, "t": t, "n_ring": n_ring,
        "vector": vector, "format": fmt, "output": output,
    })


@cli.command("lambda")
@click.option("--output", type=click.Path(dir_okay=False, writable=True), required=True)
def cmd_lambda(output):
    """Export lambda values and the closed-form t=1 features (nats) with a
    cross-check column against the exact computation."""
    _run_lambda({"output": output})


@cli.command("transient")
@click.option("--rule", type=int, required=True)
@click.option("--n-ring", type=int, default=12, show_default=True)
@click.option("--t-max", type=int, default=50, show_default=True)
@click.option("--samples", type=int, default=32768, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), required=True)
def cmd_transient(rule, n_ring, t_max, samples, seed, output):
    """Per-step one-step-delay information features from uniform starts."""
    _run_transient({
        "rule": rule, "n_ring": n_ring, "t_max": t_max,
        "samples": samples, "seed": seed, "output": output,
    })


@cli.command("ts")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--synth-seed", type=int, default=None, help="Generate the synthetic regime-shift panel instead of reading a file.")
@click.option("--chain", default=None, help="Comma-separated variable order.")
@click.option("--w", type=int, multiple=True, help="Window length(s); repeat for a robustness sweep. [default: 1400]")
@click.option("--sigma", type=float, required=True, help="Detrending kernel width in samples.")
@click.option("--d", "delay", type=int, default=1, show_default=True)
@click.option("--k", type=int, default=3, show_default=True)
@click.option("--stride", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Jitter seed.")
@click.option("--unit", type=click.Choice(["nats", "bits"]), default="nats", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), required=True)
def cmd_ts(input_path, synth_seed, chain, w, sigma, delay, k, stride, seed, unit, output):
    """Sliding-window (M, T, II) trajectory of a time-series panel."""
    if (input_path is None) == (synth_seed is None):
        raise click.UsageError("provide exactly one of --input and --synth-seed")
    _run_ts({
        "input": input_path, "synth_seed": synth_seed,
        "chain": list(_coerce(chain)) if chain and "," in chain else ([chain] if chain else None),
        "w": list(w) or [1400], "sigma": sigma, "delay": delay, "k": k,
        "stride": stride, "seed": seed, "unit": unit, "output": output,
    })


@cli.command("rerun")
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False))
def cmd_rerun(manifest):
    """Replay a manifest, reproducing its outputs byte for byte."""
    try:
        with open(manifest, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        command, config = doc["command"], doc["config"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"invalid manifest {manifest}: {exc}") from exc
    if command not in _RUNNERS:
        raise FormatError(f"manifest names unknown command {command!r}")
    for path, digest in doc.get("inputs", {}).items():
        if not os.path.exists(path):
            raise FormatError(f"manifest input {path} is missing")
        if _sha256(path) != digest:
            raise FormatError(f"manifest input {path} changed since the recorded run")
    _RUNNERS[command](config)


def main():
    try:
        cli.main(standalone_mode=False)
    except click.exceptions.Abort:
        sys.exit(1)
    except click.UsageError as exc:
        exc.show()
        sys.exit(2)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except FormatError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)
    except ResourceError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(4)
    except InfoprocError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
