"""``flagcob`` command line front end.

Exit codes: 0 everything passed, 1 a counterexample was found, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .checks import run_case, suite_cases, summarize
from .coeff_fgl import parse_theories
from .ddops import bs_class
from .errors import FlagcobError
from .perm_words import (
    decompose_ucv, decompose_ucv_mirrored, dominant_reading, parse_word, shift_letters, word_to_perm,
)
from .polyring import QPoly
from .stable import dominant_closed_form, stable_bs_family, stable_member

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    suite: Optional[str] = None
    theories: list = field(default_factory=list)
    n: Optional[int] = None
    max_n: Optional[int] = None
    upto: Optional[int] = None
    word: Optional[tuple] = None
    partition: Optional[tuple] = None
    q: int = 2
    max_len: int = 6
    fmt: str = "json"
    seed: int = 0
    samples: int = 20
    jobs: int = 1
    out: Optional[str] = None
    mirrored: bool = False
    top_class: Optional[str] = None


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", default="i2", help="ch, k, i2, i3, ... or a comma list; 'all' = ch,k,i2")
    common.add_argument("--n", type=int, help="rank")
    common.add_argument("--max-n", type=int)
    common.add_argument("--upto", type=int, help="largest rank of a stable family")
    common.add_argument("--word", help="comma separated letters, e.g. 2,3,4,3")
    common.add_argument("--partition", help="comma separated parts, e.g. 4,2")
    common.add_argument("--q", type=int, default=2)
    common.add_argument("--max-len", type=int, default=6)
    common.add_argument("--format", dest="fmt", choices=("json", "latex"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=20)
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $FLAGCOB_JOBS or 1)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--mirrored", action="store_true", help="use the reversed Coxeter element")
    common.add_argument("--top-class", help="point class override as QPoly JSON, inline or a file path")

    p = argparse.ArgumentParser(prog="flagcob", description="Bott-Samelson classes of flag varieties.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("bs", parents=[common], help="class of a reduced word")
    sub.add_parser("stable", parents=[common], help="stable family of a word")
    sub.add_parser("dominant", parents=[common], help="closed formula for a dominant permutation")
    sub.add_parser("decompose", parents=[common], help="split a word as u c v")
    check = sub.add_parser("check", parents=[common], help="run a verification suite")
    check.add_argument("suite", choices=("restriction", "product", "fiber", "operators", "normalform"))
    return p


def _int_list(text: str, what: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"bad {what}: {text!r}") from None


def make_config(argv) -> RunConfig:
    ns = _parser().parse_args(argv)
    jobs = ns.jobs
    if jobs is None:
        env = os.environ.get("FLAGCOB_JOBS", "1")
        try:
            jobs = int(env)
        except ValueError:
            raise UsageError(f"FLAGCOB_JOBS must be an integer, not {env!r}") from None
    if jobs < 1:
        raise UsageError("--jobs must be positive")
    cfg = RunConfig(
        command=ns.command,
        suite=getattr(ns, "suite", None),
        theories=parse_theories(ns.theory),
        n=ns.n,
        max_n=ns.max_n,
        upto=ns.upto,
        word=parse_word(ns.word) if ns.word is not None else None,
        partition=_int_list(ns.partition, "partition") if ns.partition else None,
        q=ns.q,
        max_len=ns.max_len,
        fmt=ns.fmt,
        seed=ns.seed,
        samples=ns.samples,
        jobs=jobs,
        out=ns.out,
        mirrored=ns.mirrored,
        top_class=ns.top_class,
    )
    _validate(cfg)
    return cfg


def _need(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            raise UsageError(f"{cfg.command} needs --{name.replace('_', '-')}")


def _validate(cfg: RunConfig) -> None:
    if not cfg.theories:
        raise UsageError("no theory given")
    if cfg.command in ("bs", "stable", "decompose"):
        _need(cfg, "n", "word")
    if cfg.command == "dominant":
        _need(cfg, "n", "partition")
    if cfg.command in ("bs", "stable", "dominant") and len(cfg.theories) != 1:
        raise UsageError(f"{cfg.command} takes a single theory")
    if cfg.command == "check":
        if cfg.suite in ("restriction", "operators", "normalform") and cfg.max_n is None:
            cfg.max_n = cfg.n if cfg.n is not None else 4
        if cfg.suite in ("product", "fiber"):
            _need(cfg, "n")
        if cfg.suite == "fiber" and cfg.q not in (2, 3, 5):
            raise UsageError("--q must be 2, 3 or 5")
    if cfg.n is not None and cfg.n < 1:
        raise UsageError("--n must be positive")


def _load_top_class(text: str, n: int, theory) -> QPoly:
    path = Path(text)
    try:
        raw = path.read_text() if path.exists() else text
        data = json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read --top-class: {exc}") from None
    if data.get("n", n) != n:
        raise UsageError(f"--top-class has rank {data.get('n')}, expected {n}")
    return QPoly.from_json({"n": n, **data}, theory)


def _dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _run_suite(cfg: RunConfig) -> dict:
    opts = dict(theories=cfg.theories, max_n=cfg.max_n, n=cfg.n, q=cfg.q, max_len=cfg.max_len,
                seed=cfg.seed, samples=cfg.samples, mirrored=cfg.mirrored)
    cases = suite_cases(cfg.suite, **opts)
    if cfg.jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(run_case, cases, chunksize=max(1, len(cases) // (4 * cfg.jobs))))
    else:
        results = [run_case(c) for c in cases]
    summary = summarize(results)
    return {"command": "check", "suite": cfg.suite, **summary}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a validated config; returns the exit code and the rendered report."""
    theory = cfg.theories[0]
    code = EXIT_OK
    if cfg.command == "bs":
        top = _load_top_class(cfg.top_class, cfg.n, theory) if cfg.top_class else None
        cls = bs_class(cfg.word, cfg.n, theory, top_class=top)
        if cfg.fmt == "latex":
            return code, cls.poly.latex() + "\n"
        report = {"command": "bs", "word": list(cls.word), "n": cfg.n, "theory": theory.name,
                  "class": cls.poly.to_json()}
    elif cfg.command == "stable":
        fam = stable_bs_family(cfg.word, cfg.n, theory, cfg.upto if cfg.upto is not None else cfg.n + 4)
        if cfg.fmt == "latex":
            return code, "".join(f"N={cfg.n + k}: {m.latex()}\n" for k, m in enumerate(fam.members))
        report = {"command": "stable", **fam.to_json()}
    elif cfg.command == "dominant":
        upto = cfg.upto if cfg.upto is not None else cfg.n + 2
        reading = dominant_reading(cfg.partition, cfg.n)
        members = []
        for N in range(cfg.n, upto + 1):
            closed = dominant_closed_form(cfg.partition, cfg.n, N, theory)
            direct = stable_member(reading.word, cfg.n, N, theory)
            agree = closed == direct
            if not agree:
                code = EXIT_COUNTEREXAMPLE
            members.append({"N": N, "agree": agree, "class": closed.to_json(),
                            **({} if agree else {"direct": direct.to_json()})})
        if cfg.fmt == "latex":
            return code, "".join(
                f"N={m['N']}: {dominant_closed_form(cfg.partition, cfg.n, m['N'], theory).latex()}\n" for m in members
            )
        report = {"command": "dominant", "partition": list(cfg.partition), "n": cfg.n,
                  "segments": [list(s) for s in reading.segments],
                  "orbits": [[list(iv) for iv in o] for o in reading.orbits], "members": members}
    elif cfg.command == "decompose":
        split = decompose_ucv_mirrored if cfg.mirrored else decompose_ucv
        d = split(cfg.word, cfg.n)
        short = shift_letters(d.u, 1 if cfg.mirrored else -1) + d.v
        report = {"command": "decompose", "word": list(cfg.word), "rank": cfg.n, "u": list(d.u),
                  "c": list(d.c), "v": list(d.v), "short_word": list(short), "mirrored": cfg.mirrored,
                  "permutation": list(word_to_perm(cfg.word, cfg.n).oneline)}
    else:
        report = _run_suite(cfg)
        if not report["ok"]:
            code = EXIT_COUNTEREXAMPLE
    return code, _dump(report)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = make_config(argv)
        code, text = run(cfg)
    except SystemExit as exc:  # argparse: --help or a malformed command line
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    except UsageError as exc:
        print(f"flagcob: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FlagcobError as exc:
        print(f"flagcob: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        try:
            Path(cfg.out).write_text(text)
        except OSError as exc:
            print(f"flagcob: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
