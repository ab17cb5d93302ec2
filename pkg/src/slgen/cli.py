"""Command-line front end.

Thin client over the service handlers: by default each subcommand calls
the handler in-process; with --server it POSTs the same request to a
running instance of the HTTP service.  Output is JSON by default, stable
under re-runs with the same arguments (sorted keys, fixed indentation).

Exit codes: 0 success, 1 usage or parse error, 2 mathematical
precondition failure or provable obstruction.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click

from . import schemas, service
from .errors import MathPreconditionError, ParseError, SlgenError

_ROUTES = {
    "genpair": (schemas.GenPairRequest, service.handle_genpair),
    "search-f2": (schemas.SearchF2Request, service.handle_search_f2),
    "count-st": (schemas.CountStRequest, service.handle_count_st),
    "identity": (schemas.IdentityRequest, service.handle_identity),
    "sidon": (schemas.SidonRequest, service.handle_sidon),
    "verify": (schemas.VerifyRequest, service.handle_verify),
}


def _dispatch(command: str, request, server: Optional[str]):
    if server is None:
        _, handler = _ROUTES[command]
        return handler(request).model_dump()
    import httpx

    resp = httpx.post(
        f"{server.rstrip('/')}/{command}", json=request.model_dump(), timeout=600
    )
    if resp.status_code == 422:
        body = resp.json()
        raise MathPreconditionError(body.get("message", resp.text))
    if resp.status_code >= 400:
        body = resp.json()
        raise ParseError(body.get("message", resp.text))
    return resp.json()


def _emit(command: str, request, result: dict, output: str) -> None:
    if output == "json":
        payload = {
            "config": {"command": command, **request.model_dump()},
            "result": result,
        }
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in _text_lines(command, result):
            click.echo(line)


def _text_lines(command: str, result: dict):
    if command in ("genpair", "verify"):
        yield f"field {result['field']}  n {result['n']}  strategy {result['strategy']}"
        for g in result["generators"]:
            yield f"  generator: {g}"
        yield f"closure dimension {result['closure_dim']} (target {result['target']})"
        yield f"verdict: {'generates' if result['verdict'] else 'does not generate'}"
    elif command == "search-f2":
        for entry in result["results"]:
            if entry["found"]:
                yield (
                    f"n={entry['n']}: found after {entry['trials_used']} trials"
                )
            else:
                yield f"n={entry['n']}: not found in {entry['trials']} trials"
    elif command == "count-st":
        line = f"field {result['field']}  n {result['n']}  formula {result['formula']}"
        if result["brute"] is not None:
            line += f"  brute {result['brute']}  match {result['match']}"
        yield line
    elif command == "identity":
        yield (
            f"case {result['case']}  samples {result['samples']}  "
            f"failures {len(result['failures'])}  "
            f"max_pair_dim {result['max_pair_dim']}"
        )
    elif command == "sidon":
        yield f"sidon set: {result['elems']}  valid {result['valid']}"
        if result.get("consistent_set") is not None:
            yield (
                f"consistent set mod {result['modulus']}: "
                f"{result['consistent_set']}"
            )
    else:
        yield json.dumps(result, sort_keys=True)


_server_option = click.option(
    "--server", default=None, help="Base URL of a running HTTP service."
)
_output_option = click.option(
    "--output", type=click.Choice(["json", "text"]), default="json"
)


@click.group()
def cli():
    """Generating pairs for traceless matrix Lie algebras over finite fields."""


@cli.command()
@click.option("--field", required=True, help="Field spec, e.g. 3 or 3^2:2,2,1.")
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, default=0)
@click.option(
    "--strategy",
    type=click.Choice(
        ["auto", "consistent", "sidon", "normal", "sharply-traceless"]
    ),
    default="auto",
)
@click.option("--top-modulus", default=None, help="Degree-n modulus over the field.")
@_server_option
@_output_option
def genpair(field, n, seed, strategy, top_modulus, server, output):
    """Construct and certify a generating pair for the n x n traceless matrices."""
    req = schemas.GenPairRequest(
        field=field, n=n, seed=seed, strategy=strategy, top_modulus=top_modulus
    )
    _emit("genpair", req, _dispatch("genpair", req, server), output)


@cli.command("search-f2")
@click.option("--n", "n_values", type=int, multiple=True, required=True)
@click.option("--trials", type=int, default=10000)
@click.option("--seed", type=int, default=0)
@click.option("--field", default="2")
@_server_option
@_output_option
def search_f2(n_values, trials, seed, field, server, output):
    """Random search for generating pairs in characteristic 2."""
    req = schemas.SearchF2Request(
        n_values=list(n_values), trials=trials, seed=seed, field=field
    )
    _emit("search-f2", req, _dispatch("search-f2", req, server), output)


@cli.command("count-st")
@click.option("--field", required=True)
@click.option("--n", type=int, required=True)
@click.option("--brute-cap", type=int, default=100000)
@click.option("--top-modulus", default=None)
@_server_option
@_output_option
def count_st(field, n, brute_cap, top_modulus, server, output):
    """Count sharply traceless elements: closed formula vs brute force."""
    req = schemas.CountStRequest(
        field=field, n=n, brute_cap=brute_cap, top_modulus=top_modulus
    )
    _emit("count-st", req, _dispatch("count-st", req, server), output)


@cli.command()
@click.option("--case", type=click.Choice(["psl3", "psl4"]), required=True)
@click.option("--field", required=True)
@click.option("--trials", type=int, default=2000)
@click.option("--seed", type=int, default=0)
@_server_option
@_output_option
def identity(case, field, trials, seed, server, output):
    """Survey two-generated subalgebra dimensions in an exceptional case."""
    req = schemas.IdentityRequest(case=case, field=field, trials=trials, seed=seed)
    _emit("identity", req, _dispatch("identity", req, server), output)


@cli.command()
@click.option("--n", type=int, required=True)
@click.option(
    "--method", type=click.Choice(["greedy", "erdos-turan"]), default="greedy"
)
@click.option(
    "--modulus", type=int, default=None,
    help="Odd prime; also reduce the derived zero-sum set mod this.",
)
@_server_option
@_output_option
def sidon(n, method, modulus, server, output):
    """Distinct-sum integer sets and the derived consistent sets."""
    req = schemas.SidonRequest(n=n, method=method, modulus=modulus)
    _emit("sidon", req, _dispatch("sidon", req, server), output)


@cli.command()
@click.argument("source", type=click.File("r"), default="-")
@click.option("--field", required=True)
@click.option("--target", type=click.Choice(["sl", "psl"]), default="sl")
@_server_option
@_output_option
def verify(source, field, target, server, output):
    """Certify matrices read from a file or stdin (one per line)."""
    matrices = [line.strip() for line in source if line.strip()]
    req = schemas.VerifyRequest(field=field, matrices=matrices, target=target)
    _emit("verify", req, _dispatch("verify", req, server), output)


def main() -> None:
    try:
        cli(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(1)
    except MathPreconditionError as exc:
        click.echo(f"error [{exc.code}]: {exc}", err=True)
        sys.exit(2)
    except SlgenError as exc:
        click.echo(f"error [{type(exc).__name__}]: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
