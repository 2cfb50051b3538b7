"""Command-line front end.

Subcommands: build-code, validate, decode, campaign, bdd, rescale.  Every
flag can also be supplied through a JSON config file (--config) whose keys
mirror the flag names with underscores; explicit flags win.  Campaign
output is CSV with one row per parameter point; bodies are byte-identical
across identical invocations except for the leading timestamp comment.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import channels, codes, decoder, gf2, sim, tanner
from .pauli import PauliString, noisy_syndrome

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _load_code(args) -> codes.DsCheckMatrix:
    sources = [
        args.code is not None,
        args.code_file is not None,
        args.hx is not None or args.hz is not None,
    ]
    if sum(sources) != 1:
        raise ValueError(
            "specify exactly one code source: --code, --code-file, or --hx/--hz"
        )
    if args.code is not None:
        return codes.built_in_code(args.code)
    if args.code_file is not None:
        return codes.ds_extend(codes.load_code_text(args.code_file))
    if args.hx is None or args.hz is None:
        raise ValueError("--hx and --hz must be given together")
    pair = codes.CssPair(gf2.load_matrix_text(args.hx), gf2.load_matrix_text(args.hz))
    return codes.ds_extend(codes.css_to_stabilizer(pair))


def _add_code_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--code", help="built-in code name, e.g. hp-129-28")
    p.add_argument("--code-file", help="stabilizer text file (N K M header)")
    p.add_argument("--hx", help="binary matrix file for the X block")
    p.add_argument("--hz", help="binary matrix file for the Z block")


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _eps_s_value(policy: str, eps_d: float) -> float:
    if policy == "zero":
        return 0.0
    if policy == "equal":
        return eps_d
    try:
        return float(policy)
    except ValueError:
        raise ValueError(
            f"--eps-s must be 'zero', 'equal', or a number, got {policy!r}"
        ) from None


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="ascii"), True


def cmd_build_code(args) -> int:
    ds = _load_code(args)
    code = ds.base
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = args.code or "code"
    codes.save_code_text(code, out_dir / f"{name}.stab")
    written = [str(out_dir / f"{name}.stab")]
    pair = codes.css_blocks(code)
    if pair is not None:
        gf2.save_matrix_text(pair.h_x, out_dir / f"{name}.hx")
        gf2.save_matrix_text(pair.h_z, out_dir / f"{name}.hz")
        written += [str(out_dir / f"{name}.hx"), str(out_dir / f"{name}.hz")]
        ortho = not gf2.multiply_transpose(pair.h_x, pair.h_z).any()
        print(f"orthogonal: {ortho}")
    print(f"N={code.n} K={code.k} M={code.m}")
    if pair is not None:
        min_x, min_z = pair.min_column_weights()
        print(f"min column weights: h_x={min_x} h_z={min_z}")
    print("wrote " + " ".join(written))
    return EXIT_OK


def cmd_validate(args) -> int:
    ds = _load_code(args)
    code = ds.base
    print(f"code {ds.params()}: N={code.n} K={code.k} M={code.m}")
    pair = codes.css_blocks(code)
    if pair is not None:
        report = codes.distance3_conditions(pair)
        print(f"distance-3 conditions: {'pass' if report.ok else 'FAIL'}")
        for reason in report.reasons:
            print(f"  - {reason}")
    found, witness = codes.ds_min_distance_bounded(ds, args.wmax)
    if found:
        print(
            f"joint error of weight {witness.weight} outside the stabilizer "
            f"set: data={witness.data} flips={''.join(map(str, witness.synd))}"
        )
    else:
        print(f"no joint error of weight <= {args.wmax} outside the stabilizer set")
    return EXIT_OK


def cmd_decode(args) -> int:
    ds = _load_code(args)
    code = ds.base
    graph = tanner.build(ds)
    rng = np.random.default_rng(args.seed)
    if args.data_error is not None:
        e_true = PauliString.from_string(args.data_error)
        if args.synd_flips is not None:
            flips = np.array([int(c) for c in args.synd_flips], dtype=np.uint8)
        else:
            flips = np.zeros(code.m, dtype=np.uint8)
        z = noisy_syndrome(e_true, flips, code)
    else:
        e_true = channels.sample_depolarizing(code.n, args.eps_d, rng)
        z = channels.measure_with_votes(e_true, code, args.eps_s, args.repeats, rng)
    print(f"true error : {e_true}")
    print(f"syndrome   : {''.join(map(str, z))}")
    priors = decoder.init_priors(code.n, code.m, args.eps_d, args.eps_s)
    decode = decoder.decode_serial if args.schedule == "serial" else decoder.decode_parallel
    trace: list = []
    res = decode(graph, z, priors, max_iter=args.max_iter, trace=trace)
    for rec in trace:
        print(
            f"iter={rec['iteration']} mismatches={rec['mismatches']} "
            f"data={rec['data_est']} "
            f"synd={''.join(map(str, rec['synd_est']))}"
        )
    print(f"converged  : {res.converged} after {res.iterations} iteration(s)")
    print(f"estimate   : {res.data_est}")
    print(f"flips est  : {''.join(map(str, res.synd_est))}")
    failure = not res.converged or sim.is_logical_error(res.data_est, e_true, code)
    print(f"block error: {failure}")
    return EXIT_OK


def cmd_campaign(args) -> int:
    ds = _load_code(args)
    graph = tanner.build(ds)
    stop = sim.StopRule(min_errors=args.stop_errors, max_trials=args.max_trials)
    name = args.code or args.code_file or "custom"
    out, close = _open_out(args.out)
    try:
        out.write(f"# generated {time.strftime('%Y-%m-%dT%H:%M:%S%z')}\n")
        out.write(sim.CSV_HEADER + "\n")
        for eps_d in _parse_floats(args.eps_d):
            ch = channels.ChannelParams(
                eps_d=eps_d,
                eps_s=_eps_s_value(args.eps_s, eps_d),
                repeats=args.repeats,
            )
            stats = sim.run_campaign(
                ds, args.schedule, ch, stop, args.seed,
                mode=args.mode, max_iter=args.max_iter, graph=graph,
            )
            out.write(sim.csv_row(name, args.schedule, args.mode, stats) + "\n")
            out.flush()
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_bdd(args) -> int:
    gamma = tuple(_parse_floats(args.gamma))
    params = sim.BddParams(n=args.n, t=args.t, gamma=gamma)
    out, close = _open_out(args.out)
    try:
        out.write(f"# generated {time.strftime('%Y-%m-%dT%H:%M:%S%z')}\n")
        out.write(sim.CSV_HEADER + "\n")
        for eps in _parse_floats(args.eps):
            out.write(sim.csv_bdd_row(f"bdd-{args.n}", params, eps) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_rescale(args) -> int:
    lines = Path(args.input).read_text(encoding="ascii").splitlines()
    out, close = _open_out(args.out)
    try:
        for line in lines:
            if line.startswith("#"):
                out.write(line + "\n")
                continue
            if line.startswith("code,"):
                out.write(line + ",lambda_per_ns\n")
                continue
            if not line.strip():
                continue
            fields = line.split(",")
            eps_d = float(fields[3])
            r = int(fields[5]) if fields[5] else args.default_repeats
            lam = sim.fidelity_lambda(eps_d, r * sim.MEASUREMENT_NS)
            out.write(line + f",{lam:.10g}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsbp",
        description="Belief-propagation decoding of quantum data-syndrome codes",
    )
    parser.add_argument("--config", help="JSON file of flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-code", help="construct a code and write its files")
    _add_code_flags(p)
    p.add_argument("--out-dir", default=".", help="directory for code files")
    p.set_defaults(func=cmd_build_code)

    p = sub.add_parser("validate", help="check code conditions and bounded distance")
    _add_code_flags(p)
    p.add_argument("--wmax", type=int, default=2, help="search weight bound")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("decode", help="run one decode with a trace")
    _add_code_flags(p)
    p.add_argument("--schedule", choices=("serial", "parallel"), default="serial")
    p.add_argument("--eps-d", type=float, default=1e-2)
    p.add_argument("--eps-s", type=float, default=0.0)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--max-iter", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--data-error", help="explicit Pauli word, e.g. XIZ")
    p.add_argument("--synd-flips", help="explicit flip bits, e.g. 0100")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("campaign", help="Monte Carlo sweep over eps_d values")
    _add_code_flags(p)
    p.add_argument("--schedule", choices=("serial", "parallel"), default="serial")
    p.add_argument("--mode", choices=("ds", "plain"), default="ds")
    p.add_argument("--eps-d", required=True, help="comma-separated rates")
    p.add_argument("--eps-s", default="zero",
                   help="'zero', 'equal', or a fixed rate")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--max-iter", type=int, default=12)
    p.add_argument("--stop-errors", type=int, default=100)
    p.add_argument("--max-trials", type=int, default=10_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("bdd", help="evaluate the benchmark curve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--gamma", required=True, help="comma-separated, t+1 values")
    p.add_argument("--eps", required=True, help="comma-separated rates")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bdd)

    p = sub.add_parser("rescale", help="append a decay-rate column to a CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.add_argument("--default-repeats", type=int, default=1)
    p.set_defaults(func=cmd_rescale)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if "--config" in argv:
        idx = argv.index("--config")
        try:
            cfg = json.loads(Path(argv[idx + 1]).read_text())
        except (IndexError, OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config: {exc}")
        if not isinstance(cfg, dict):
            parser.error("config file must contain a JSON object")
        for action in parser._subparsers._group_actions:
            for sub_parser in action.choices.values():
                known = {a.dest for a in sub_parser._actions}
                sub_parser.set_defaults(
                    **{k: v for k, v in cfg.items() if k in known}
                )
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, decoder.DegenerateNodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
