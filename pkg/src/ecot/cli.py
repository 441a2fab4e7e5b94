"""Command-line entry point: ``ecot demo|serve|connect|oracle|vectors``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .config import DEFAULT_CURVE, DEFAULT_X, EXAMPLE_CURVE, SessionConfig, default_config, example_config
from .curve import Curve, Point
from .encoding import DEFAULT_KAPPA, Encoder
from .errors import DegenerateX, EcotError
from .transport.local import Transcript, open_transcript, run_local
from .transport.net import DEFAULT_TIMEOUT, run_socket
from .transport.roles import Inputs, summarize


def _ints(text: str, count: int, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v, 0) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must be {count} comma-separated integers") from None
    if len(values) != count:
        raise argparse.ArgumentTypeError(f"{what} must be {count} comma-separated integers")
    return values


def curve_arg(text: str) -> tuple[int, int, int]:
    return _ints(text, 3, "--curve")


def point_arg(text: str) -> tuple[int, int]:
    return _ints(text, 2, "a point")


def _first_x(curve: Curve) -> int:
    for x in range(1, curve.p):
        try:
            if curve.lift_x(x) is not None:
                return x
        except DegenerateX:
            continue
    raise EcotError(f"no usable x-coordinate on {curve}")


def _auto_kappa(p: int) -> int:
    # 16 is comfortable when it still leaves one-byte secrets room
    return DEFAULT_KAPPA if (p - 1) // DEFAULT_KAPPA - 1 >= 255 else 2


def build_config(args) -> SessionConfig:
    if getattr(args, "case", None) is not None:
        if args.curve is not None:
            raise SystemExit("--case fixes the curve; drop --curve")
        return example_config()
    if args.curve is None:
        if args.x_coord is None and args.kappa is None and args.secret_length is None:
            return default_config()
        curve = DEFAULT_CURVE
    else:
        p, a, b = args.curve
        base = Point(*args.base) if args.base else None
        curve = Curve(p, a, b, base=base, base_order=args.base_order)
        if (p, a, b) == (EXAMPLE_CURVE.p, EXAMPLE_CURVE.a, EXAMPLE_CURVE.b) and base is None:
            curve = EXAMPLE_CURVE
        elif curve.base is None:
            g = curve.lift_x(_first_x(curve)).p1
            curve = Curve(p, a, b, base=g, base_order=curve.point_order(g))
    x = args.x_coord if args.x_coord is not None else (
        DEFAULT_X if curve == DEFAULT_CURVE else _first_x(curve))
    kappa = args.kappa or _auto_kappa(curve.p)
    length = args.secret_length or max(1, min(2, Encoder(curve, kappa).max_bytes()))
    return SessionConfig(curve, x, kappa=kappa, secret_length=length)


def _hex(text: str) -> bytes:
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not hex") from None


def _secret_pair(text: str) -> tuple[bytes, bytes]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("--secrets takes two hex strings separated by a comma")
    return _hex(parts[0]), _hex(parts[1])


def build_inputs(args, scenario: str) -> Inputs:
    inp = Inputs(cheat=getattr(args, "cheat", False))
    if getattr(args, "case", None) is not None:
        if scenario != "rabin":
            raise SystemExit("--case applies to the rabin scenario only")
        inp.n_a, inp.pa_choice, inp.n_b, inp.r_point = 5, 0, 3, Point(2, 1)
        inp.pb_choice = args.case - 1
    if args.choice is not None:
        if scenario == "ot12":
            inp.choice = args.choice
        elif scenario == "rabin":
            inp.pb_choice = args.choice
        else:
            raise SystemExit("--choice applies to rabin and ot12")
    if getattr(args, "secret", None) is not None:
        inp.secret_a = inp.secret_b = args.secret
    if getattr(args, "secrets", None) is not None:
        if scenario == "exchange":
            inp.secret_a, inp.secret_b = args.secrets
        else:
            inp.secrets = args.secrets
    return inp


def _scenario(name: str, cheat: bool) -> str:
    if cheat and name != "exchange":
        raise SystemExit("--cheat applies to the exchange scenario only")
    return "exchange-with-cheat" if cheat else name


def _print_transcript(transcript: Transcript) -> None:
    for rec in transcript.records:
        text = rec.message.render() if rec.message is not None else rec.error
        print(f"{rec.direction:6} {text}")


def cmd_demo(args) -> int:
    cfg = build_config(args)
    scenario = _scenario(args.scenario, args.cheat)
    transcript = open_transcript(args.transcript)
    try:
        _, (out_a, out_b) = run_local(cfg, scenario, args.seed, build_inputs(args, args.scenario),
                                      transcript)
    except EcotError as exc:
        _print_transcript(transcript)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _print_transcript(transcript)
    print(json.dumps({"A": summarize(out_a), "B": summarize(out_b)}))
    return 0


def cmd_session(args, listen: bool) -> int:
    cfg = build_config(args)
    scenario = _scenario(args.scenario, args.cheat)
    endpoint = args.listen if listen else args.peer
    transcript = open_transcript(args.transcript)

    def announce(addr) -> None:
        print(f"listening on {addr[0]}:{addr[1]}", file=sys.stderr, flush=True)

    try:
        outcome = run_socket(cfg, scenario, args.role, endpoint, listen=listen,
                             inputs=build_inputs(args, args.scenario), seed=args.seed,
                             timeout=args.timeout, transcript=transcript, on_listen=announce)
    except EcotError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(summarize(outcome)), flush=True)
    return 0


def cmd_oracle_verify(args) -> int:
    from .oracle import verify, view_report
    p, a, b = args.curve
    curve = EXAMPLE_CURVE if (p, a, b) == (EXAMPLE_CURVE.p, EXAMPLE_CURVE.a, EXAMPLE_CURVE.b) else Curve(p, a, b)
    kappa = args.kappa if args.kappa is not None else (2 if p < 64 else 4)
    results = verify(curve, kappa, args.seed)
    print(f"core against oracle on {curve}")
    for r in results:
        print("  " + r.line())
    ok = all(r.passed for r in results)
    if args.views:
        print(f"step-2 views on {curve} (protocol statements, informational)")
        for v in view_report(curve, args.x_coord):
            print("  " + v.line())
    print("all agreement checks passed" if ok else "agreement checks FAILED")
    return 0 if ok else 1


def cmd_vectors(args) -> int:
    from .vectors import emit
    print(json.dumps(emit(), indent=2))
    return 0


def _config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--curve", type=curve_arg, help="p,a,b (defaults to the built-in curve)")
    p.add_argument("--base", type=point_arg, help="base point x,y for a custom curve")
    p.add_argument("--base-order", type=int, help="order of --base")
    p.add_argument("--x-coord", type=int, help="agreed x-coordinate")
    p.add_argument("--kappa", type=int, help="embedding padding factor")
    p.add_argument("--secret-length", type=int, help="secret length in bytes")
    p.add_argument("--seed", help="seed for reproducible randomness (system entropy if absent)")
    p.add_argument("--choice", type=int, choices=(0, 1), help="B's choice (ot12: secret; rabin: P_B)")
    p.add_argument("--cheat", action="store_true", help="B withholds its final transfer when it can")
    p.add_argument("--secret", type=_hex, help="this side's exchange secret, hex")
    p.add_argument("--secrets", type=_secret_pair, help="two hex secrets: s_0,s_1 for ot12, S_A,S_B for exchange")
    p.add_argument("--transcript", help="write the transcript as JSON lines to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecot", description="Oblivious transfer over small elliptic curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="run both roles in this process")
    demo.add_argument("scenario", choices=("rabin", "exchange", "ot12"))
    demo.add_argument("--case", type=int, choices=(1, 2),
                      help="rabin only: the worked example on E_23(9,21), P_B = P_1 (1) or P_2 (2)")
    _config_flags(demo)
    demo.set_defaults(func=cmd_demo, seed=0)

    for name, flag, help_text in (("serve", "--listen", "accept one peer and play a role"),
                                  ("connect", "--peer", "dial a peer and play a role")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--role", choices=("A", "B"), required=True)
        p.add_argument(flag, required=True, metavar="HOST:PORT")
        p.add_argument("--scenario", choices=("rabin", "exchange", "ot12"), default="rabin")
        p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, help="idle timeout, seconds")
        _config_flags(p)
        p.set_defaults(func=lambda a, listen=(name == "serve"): cmd_session(a, listen), case=None)

    oracle = sub.add_parser("oracle", help="brute-force checks")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)
    ver = osub.add_parser("verify", help="check the arithmetic core against the oracle")
    ver.add_argument("--curve", type=curve_arg, required=True, help="p,a,b")
    ver.add_argument("--kappa", type=int, help="embedding factor to check")
    ver.add_argument("--views", action="store_true", help="also compare step-2 views (tiny curves)")
    ver.add_argument("--x-coord", type=int, help="x-coordinate for --views")
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=cmd_oracle_verify)

    vec = sub.add_parser("vectors", help="golden vectors")
    vsub = vec.add_subparsers(dest="vectors_command", required=True)
    vsub.add_parser("emit", help="print the worked-example vectors as JSON").set_defaults(func=cmd_vectors)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EcotError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
