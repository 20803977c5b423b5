"""Command-line front end: ``qdalt keygen | attack | verify | estimate | polysys``.

Exit status is 0 on success, 2 when a search is exhausted or a key does not
verify, and 1 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import attack as at
from . import keyfile, polysys
from . import qd_alternant as qa
from .errors import QdaltError, SearchExhausted
from .galois import make_field
from .params import ParamPreset, get_preset

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2

VARIANT_NAMES = {"bruteforce": at.BRUTEFORCE, "random": at.RANDOM_PAIRS, "shortened": at.SHORTENED}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _params(text: str) -> ParamPreset:
    try:
        ell, gamma, n0, r0 = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected ell,gamma,n0,r0") from None
    return ParamPreset("custom", ell, gamma, n0, r0)


def _preset(text: str) -> ParamPreset:
    try:
        return get_preset(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _add_params(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--preset", type=_preset, help="DAGS_0, DAGS_1, DAGS_3, DAGS_5 or TOY")
    g.add_argument("--params", type=_params, metavar="ELL,GAMMA,N0,R0")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdalt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("keygen", help="sample a quasi-dyadic alternant key pair")
    _add_params(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-sk", type=Path, required=True)
    p.add_argument("--out-pk", type=Path, required=True)

    p = sub.add_parser("attack", help="recover a secret key from a public key")
    p.add_argument("--pk", type=Path, required=True)
    p.add_argument("--variant", choices=sorted(VARIANT_NAMES), default="bruteforce")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-trials", type=int, default=at.AttackConfig.max_trials)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mode", choices=[at.EXACT, at.RANDOMIZED], default=at.EXACT,
                   help="Schur product mode of the conductor test")
    p.add_argument("--out-report", type=Path)

    p = sub.add_parser("verify", help="check a key against a public key")
    p.add_argument("--pk", type=Path, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sk", type=Path)
    g.add_argument("--recovered", type=Path, help="attack report holding the recovered key")

    p = sub.add_parser("estimate", help="log2 work factor of the brute-force attack")
    _add_params(p)

    p = sub.add_parser("polysys", help="write the bilinear system of the second attack variant")
    p.add_argument("--pk", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    return parser


def _keygen(args) -> int:
    pre = args.preset or args.params
    f = make_field(pre.ell)
    sk, pk = qa.qd_keygen(f, pre.gamma, pre.n0, pre.r0, args.seed)
    keyfile.write_secret(sk, args.out_sk)
    keyfile.write_public(pk, args.out_pk)
    print(f"n={pk.n} k={pk.k} r={pk.r} k0={pk.k0}")
    return EXIT_OK


def _attack(args) -> int:
    pk = keyfile.read_public(args.pk)
    cfg = at.AttackConfig(VARIANT_NAMES[args.variant], args.seed, args.max_trials, args.jobs, args.mode)
    try:
        report = at.attack(pk, cfg)
    except SearchExhausted as e:
        print(f"search exhausted after {e.trials} trials", file=sys.stderr)
        return EXIT_FAIL
    text = report.to_text()
    if args.out_report:
        args.out_report.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _verify(args) -> int:
    pk = keyfile.read_public(args.pk)
    if args.sk:
        sk = keyfile.read_secret(args.sk)
        key = at.RecoveredKey(sk.x, sk.y, sk.r)
        ok = sk.field == pk.field and at.verify_key(key, pk)
    else:
        key = keyfile.parse_recovered(args.recovered.read_text(), pk.field, args.recovered)
        ok = at.verify_key(key, pk)
    print(f"verification: {'OK' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def _estimate(args) -> int:
    pre = args.preset or args.params
    print(f"log2_workfactor = {pre.workfactor():.1f}")
    return EXIT_OK


def _polysys(args) -> int:
    pk = keyfile.read_public(args.pk)
    system = polysys.emit_polysys(pk, args.out)
    u, a, t = system.counts
    print(f"U={u} A={a} T={t} equations={len(system.equations)}")
    return EXIT_OK


COMMANDS = {"keygen": _keygen, "attack": _attack, "verify": _verify,
            "estimate": _estimate, "polysys": _polysys}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (OSError, QdaltError, ValueError) as e:
        print(f"qdalt: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
