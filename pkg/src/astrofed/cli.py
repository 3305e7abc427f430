"""Operator command line: run the gateway, search it, poke at datasets.

Client subcommands speak plain HTTP to a running gateway.  Exit status is
0 on success, 1 when the server (or a local validator) rejects the input,
and 2 when the gateway cannot be reached at all.
"""

from __future__ import annotations

import base64
import sys
import time
from pathlib import Path

import click
import requests

from .aml import AmlParseError, parse_aml, validate_aml
from .gasl import And, Term, keywords_to_query, serialize_gasl


@click.group()
def main():
    """Federated astronomical metadata search gateway."""


def _fail_http(response) -> None:
    try:
        body = response.json()
        message = f"{body.get('code', 'error')}: {body.get('message', '')}"
    except ValueError:
        message = f"HTTP {response.status_code}"
    click.echo(message, err=True)
    sys.exit(1)


def _request(method: str, url: str, **kwargs) -> requests.Response:
    try:
        response = requests.request(method, url, timeout=30, **kwargs)
    except requests.RequestException as exc:
        click.echo(f"cannot reach gateway: {exc}", err=True)
        sys.exit(2)
    if response.status_code >= 400:
        _fail_http(response)
    return response


# ---------------------------------------------------------------------------
# servers

@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="TOML config file.")
def serve(config_path):
    """Run the gateway described by a config file."""
    import uvicorn

    from .gateway import build_app, load_config

    config = load_config(config_path)
    uvicorn.run(build_app(config), host=config.host, port=config.port, log_level="warning")


@main.command("mock-serve")
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def mock_serve(config_path):
    """Serve only the native mock-source endpoints from a config file."""
    import uvicorn

    from .gateway import build_sources, load_config, make_mock_app

    config = load_config(config_path)
    uvicorn.run(make_mock_app(build_sources(config)),
                host=config.host, port=config.port, log_level="warning")


# ---------------------------------------------------------------------------
# searching

def _build_query(terms, keywords):
    if keywords:
        return keywords_to_query(keywords.split())
    if not terms:
        raise click.UsageError("give --keywords or at least one --term")
    nodes = [Term(attr, rel, value) for attr, rel, value in terms]
    return nodes[0] if len(nodes) == 1 else And(tuple(nodes))


@main.command()
@click.option("--gateway", default="http://127.0.0.1:8090", show_default=True)
@click.option("--profile", default="astro-1.0", show_default=True)
@click.option("--term", "terms", nargs=3, multiple=True, metavar="ATTR REL VALUE",
              help="One query term; repeat for a conjunction.")
@click.option("--keywords", default=None,
              help="Space-separated keywords (matched against subjects).")
@click.option("--sources", default=None, help="Comma-separated source ids.")
@click.option("--count", default=25, show_default=True)
@click.option("--timeout", default=30.0, show_default=True)
def search(gateway, profile, terms, keywords, sources, count, timeout):
    """Open a session, wait for the sources, print the short records."""
    query = serialize_gasl(_build_query(terms, keywords), profile)
    url = f"{gateway}/sessions"
    if sources:
        url += f"?sources={sources}"
    opened = _request("post", url, data=query.encode("utf-8"),
                      headers={"content-type": "application/xml"}).json()
    sid = opened["id"]

    deadline = time.monotonic() + timeout
    info = opened
    while any(s["state"] == "pending" for s in info["sources"].values()):
        if time.monotonic() > deadline:
            click.echo("timed out waiting for sources", err=True)
            break
        time.sleep(0.1)
        info = _request("get", f"{gateway}/sessions/{sid}").json()

    for source_id in info["source_order"]:
        status = info["sources"][source_id]
        line = f"{source_id}: {status['state']}"
        if status["state"] == "complete":
            line += f", {status['count']} records"
        elif status.get("reason"):
            line += f" ({status['reason']})"
        click.echo(line)

    records = _request(
        "get", f"{gateway}/sessions/{sid}/records",
        params={"start": 0, "count": count},
    ).json()["records"]
    click.echo(f"session {sid}: {info['total']} records")
    for rec in records:
        names = ", ".join(rec["object_names"])
        parts = [f"[{rec['recno']}]", rec["title"] or "(untitled)"]
        if names:
            parts.append(f"({names})")
        if rec["date"]:
            parts.append(rec["date"])
        parts.append(f"<{rec['source']}>")
        click.echo(" ".join(parts))


@main.command()
@click.argument("session_id")
@click.argument("recno", type=int)
@click.option("--gateway", default="http://127.0.0.1:8090", show_default=True)
@click.option("--form", type=click.Choice(["aml", "html"]), default="aml", show_default=True)
def get(session_id, recno, gateway, form):
    """Print one full record."""
    response = _request(
        "get", f"{gateway}/sessions/{session_id}/records/{recno}", params={"form": form}
    )
    click.echo(response.text)


# ---------------------------------------------------------------------------
# datasets

@main.command()
@click.argument("dataset_id")
@click.option("--bbox", required=True, metavar="X0,Y0,X1,Y1")
@click.option("--gateway", default="http://127.0.0.1:8090", show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
              help="Write FITS bytes here instead of stdout.")
def cutout(dataset_id, bbox, gateway, output):
    """Fetch a rectangular cutout as FITS bytes."""
    response = _request(
        "get", f"{gateway}/data/{dataset_id}/cutout", params={"bbox": bbox}
    )
    if output:
        Path(output).write_bytes(response.content)
        click.echo(f"wrote {len(response.content)} bytes to {output}")
    else:
        sys.stdout.buffer.write(response.content)


@main.command()
@click.argument("dataset_id")
@click.option("--bins", default=16, show_default=True)
@click.option("--lo", type=float, default=None)
@click.option("--hi", type=float, default=None)
@click.option("--gateway", default="http://127.0.0.1:8090", show_default=True)
def hist(dataset_id, bins, lo, hi, gateway):
    """Print a histogram of physical pixel values."""
    params = {"bins": bins}
    if lo is not None:
        params["lo"] = lo
    if hi is not None:
        params["hi"] = hi
    h = _request("get", f"{gateway}/data/{dataset_id}/histogram", params=params).json()
    width = (h["hi"] - h["lo"]) / h["nbins"]
    for i, count in enumerate(h["counts"]):
        left = h["lo"] + i * width
        click.echo(f"[{left:12.5g}, {left + width:12.5g}) {count}")
    click.echo(f"out of range: {h['out_of_range']}")


# ---------------------------------------------------------------------------
# clustering, validation, ingest

@main.command()
@click.option("--session", "session_id", default=None)
@click.option("--records", default=None, help="Comma-separated record numbers.")
@click.option("--docs", "doc_paths", multiple=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Inline AML files instead of a session.")
@click.option("--tau", type=float, default=None, help="Minimum edge similarity.")
@click.option("--max-block", type=int, default=None)
@click.option("--w-link", type=float, default=None)
@click.option("--w-kw", type=float, default=None)
@click.option("--gateway", default="http://127.0.0.1:8090", show_default=True)
def cluster(session_id, records, doc_paths, tau, max_block, w_link, w_kw, gateway):
    """Cluster records by shared keywords and links."""
    body: dict = {}
    if doc_paths:
        body["documents"] = [Path(p).read_text("utf-8") for p in doc_paths]
    elif session_id:
        body["session"] = session_id
        if records:
            body["records"] = [int(n) for n in records.split(",")]
    else:
        raise click.UsageError("give --session or --docs")
    for key, value in (("min_similarity", tau), ("max_block", max_block),
                       ("w_link", w_link), ("w_kw", w_kw)):
        if value is not None:
            body[key] = value
    blocks = _request("post", f"{gateway}/cluster", json=body).json()["blocks"]
    for i, block in enumerate(blocks):
        click.echo(f"cluster {i}: {', '.join(block)}")


@main.command("validate-aml")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def validate_aml_cmd(path):
    """Validate an AML file locally; exit 1 if it does not conform."""
    try:
        doc = parse_aml(Path(path).read_text("utf-8"))
    except AmlParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(1)
    report = validate_aml(doc)
    click.echo(str(report))
    if not report.ok:
        sys.exit(1)


@main.command()
@click.argument("source_id")
@click.argument("project", type=click.Path(exists=True, dir_okay=False))
@click.option("--data", "data_specs", multiple=True, metavar="NAME=PATH",
              help="Uploaded dataset blob; repeat per file.")
@click.option("--gateway", default="http://127.0.0.1:8090", show_default=True)
def ingest(source_id, project, data_specs, gateway):
    """Deposit a project (AML plus FITS files) into a mock source."""
    datasets = {}
    for spec in data_specs:
        name, _, file_path = spec.partition("=")
        if not name or not file_path:
            raise click.UsageError(f"--data wants NAME=PATH, got {spec!r}")
        datasets[name] = base64.b64encode(Path(file_path).read_bytes()).decode("ascii")
    body = {"project": Path(project).read_text("utf-8"), "datasets": datasets}
    result = _request("post", f"{gateway}/ingest/{source_id}", json=body).json()
    click.echo(f"records: {', '.join(str(n) for n in result['records'])}")
    click.echo(f"datasets: {', '.join(result['datasets'])}")


if __name__ == "__main__":
    main()
