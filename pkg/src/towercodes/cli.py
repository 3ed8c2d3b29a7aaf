"""Command-line interface."""
import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import textio
from .algebra.linalg import CapExceeded, Empty
from .code import InvalidParams, codeword_from_text, codeword_to_text, corrupt
from .decoder import InterpolationFailure, decoder, tau_closed
from .hse import (CandidateExplosion, EncodingFailure, NotInRange, hse_decode, hse_encode, key_from_text,
                  key_to_text, sample_key, verify_evasive)
from .periodic import empty_text, random_periodic
from .pipeline import (Infeasible, PipelineConfig, describe, folded_rs_baseline, pipeline, plan_params,
                       sweep)

EXIT_OK, EXIT_INFEASIBLE, EXIT_INTERNAL = 0, 2, 3


def _coerce(v):
    for cast in (int, float):
        try:
            return cast(v)
        except ValueError:
            pass
    return v


def load_config(args):
    data = {}
    if getattr(args, "config", None):
        data = json.loads(Path(args.config).read_text())
    for item in getattr(args, "set", None) or []:
        k, _, v = item.partition("=")
        data[k] = _coerce(v) if k not in ("zeta", "c") else v
    return PipelineConfig.from_dict(data)


def _read(path):
    return Path(path).read_text() if path != "-" else sys.stdin.read()


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _msg_text(F, x):
    return textio.vec_to_str(F, x) + "\n"


def cmd_params(args):
    cfg = load_config(args).validate()
    print(json.dumps(describe(cfg), indent=2, default=str))


def cmd_plan(args):
    cfg, rep = plan_params(args.rate, args.kind, args.r, args.size, tau=args.tau, e=args.e, s=args.s)
    print(cfg.to_json())
    print(json.dumps(rep, indent=2, default=str), file=sys.stderr)


def cmd_keygen(args):
    cfg = load_config(args).validate()
    seed = args.seed if args.seed is not None else cfg.key_seed
    _write(args.out, key_to_text(sample_key(cfg.hse_params, seed)))


def _load_key(path):
    return key_from_text(_read(path))


def cmd_encode(args):
    cfg = load_config(args)
    pipe = pipeline(cfg)
    key = _load_key(args.key)
    F = pipe.F
    if args.message:
        x = textio.str_to_vec(F, args.message)
    else:
        x = F.vrandom(np.random.default_rng(args.seed), pipe.hp.msg_len)
    if args.message_out:
        _write(args.message_out, _msg_text(F, x))
    _write(args.out, codeword_to_text(cfg.code_params, pipe.encode(key, x)))


def cmd_hse_encode(args):
    cfg = load_config(args)
    key = _load_key(args.key)
    F = cfg.code_params.F
    y = hse_encode(key, textio.str_to_vec(F, args.message))
    print(textio.vec_to_str(F, y))


def cmd_hse_decode(args):
    cfg = load_config(args)
    key = _load_key(args.key)
    F = cfg.code_params.F
    print(textio.vec_to_str(F, hse_decode(key, textio.str_to_vec(F, args.vector))))


def cmd_corrupt(args):
    cfg = load_config(args)
    cp = cfg.code_params
    cw = codeword_from_text(cp, _read(args.input))
    rx = corrupt(cp.F, cw, args.t, np.random.default_rng(args.seed), burst=args.burst)
    _write(args.out, codeword_to_text(cp, rx, kind="received"))


def cmd_decode_subspace(args):
    cfg = load_config(args)
    dp = cfg.decode_params.validate()
    dec = decoder(dp)
    rx = codeword_from_text(cfg.code_params, _read(args.input))
    Q = dec.interpolate(rx)
    W = dec.extract_subspace(Q)
    if W is Empty:
        _write(args.out, empty_text(dec.F))
        print(f"# empty t_min={dp.t_min} tau_closed={float(tau_closed(dp)):.4f}", file=sys.stderr)
        return
    _write(args.out, W.to_text())
    print(f"# dimU={W.dim_U} free={dec.free_offsets(Q)} t_min={dp.t_min} "
          f"tau_closed={float(tau_closed(dp)):.4f}", file=sys.stderr)


def cmd_decode(args):
    cfg = load_config(args)
    pipe = pipeline(cfg)
    key = _load_key(args.key)
    rx = codeword_from_text(cfg.code_params, _read(args.input))
    rep = pipe.decode(key, rx)
    print("# " + rep.summary(), file=sys.stderr)
    out = "".join(f"{textio.vec_to_str(pipe.F, x)}\n" for x in rep.accepted)
    _write(args.out, out)


def cmd_oracle(args):
    cfg = load_config(args)
    pipe = pipeline(cfg)
    key = _load_key(args.key)
    rx = codeword_from_text(cfg.code_params, _read(args.input))
    out = "".join(f"{textio.vec_to_str(pipe.F, x)}\n" for x in pipe.oracle_decode(key, rx))
    _write(args.out, out)


def cmd_hse_verify(args):
    cfg = load_config(args).validate()
    key = _load_key(args.key)
    hp = key.params
    rng = np.random.default_rng(args.seed)
    dim = args.dim if args.dim is not None else cfg.s * cfg.coarsen_factor - 1
    source = lambda: random_periodic(hp.Fq, hp.delta, hp.b, dim, rng)
    rep = verify_evasive(key, source, args.trials)
    print(json.dumps(rep, indent=2))


def cmd_sweep(args):
    cfg = load_config(args)
    key = _load_key(args.key)
    counts = [int(t) for t in args.errors.split(",")]
    _write(args.out, sweep(cfg, key, counts, args.trials, args.seed, burst=args.burst))


def cmd_baseline_rs(args):
    dec = folded_rs_baseline(args.k, args.m, args.s, args.q, args.N)
    code = dec.code
    F = code.F
    rng = np.random.default_rng(args.seed)
    msg = F.vrandom(rng, args.k)
    t = args.t if args.t is not None else code.N - dec.dp.t_min
    rx = corrupt(F, code.encode(msg), t, rng)
    W = dec.decode_subspace(rx)
    ok = W is not Empty and W.membership(msg)
    dim = W.as_affine().dim if W is not Empty else -1
    print(f"baseline-rs q={args.q} m={args.m} s={args.s} k={args.k} N={args.N} D={dec.D} "
          f"t_min={dec.dp.t_min} errors={t} affine_dim={dim} recovered={ok}")
    if not ok:
        return EXIT_INTERNAL


def build_parser():
    ap = argparse.ArgumentParser(prog="towercodes", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_config(p):
        p.add_argument("--config", help="JSON pipeline config")
        p.add_argument("--set", action="append", metavar="FIELD=VALUE", help="override a config field")
        return p

    p = with_config(sub.add_parser("params", help="derived parameters of a config"))
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("plan", help="search for a config")
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--kind", choices=["hermitian", "gs"], required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--size", type=int, required=True, help="rough number of evaluation places")
    p.add_argument("--tau", type=float)
    p.add_argument("--e", type=int)
    p.add_argument("--s", type=int)
    p.set_defaults(func=cmd_plan)

    p = with_config(sub.add_parser("keygen", help="sample a pre-code key"))
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_keygen)

    p = with_config(sub.add_parser("encode", help="encode a message"))
    p.add_argument("--key", required=True)
    p.add_argument("--message", help="digit strings separated by spaces")
    p.add_argument("--seed", type=int, default=0, help="random message seed when --message is absent")
    p.add_argument("--message-out")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = with_config(sub.add_parser("hse-encode", help="pre-code a message"))
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True)
    p.set_defaults(func=cmd_hse_encode)

    p = with_config(sub.add_parser("hse-decode", help="invert the pre-code"))
    p.add_argument("--key", required=True)
    p.add_argument("--vector", required=True)
    p.set_defaults(func=cmd_hse_decode)

    p = with_config(sub.add_parser("corrupt", help="replace columns of a codeword"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--burst", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_corrupt)

    p = with_config(sub.add_parser("decode-subspace", help="candidate subspace of a received word"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode_subspace)

    p = with_config(sub.add_parser("decode", help="list decode a received word"))
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = with_config(sub.add_parser("oracle", help="brute-force list decoding"))
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = with_config(sub.add_parser("hse-verify", help="intersection statistics against random periodic subspaces"))
    p.add_argument("--key", required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, help="dimension of U (default s*u - 1)")
    p.set_defaults(func=cmd_hse_verify)

    p = with_config(sub.add_parser("sweep", help="recovery rate against error count"))
    p.add_argument("--key", required=True)
    p.add_argument("--errors", required=True, help="comma-separated error counts")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--burst", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("baseline-rs", help="planted run of folded Reed-Solomon decoding")
    for name, default in (("q", 64), ("m", 4), ("s", 2), ("k", 10), ("N", 15), ("seed", 0)):
        p.add_argument(f"--{name}", type=int, default=default)
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_baseline_rs)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args) or EXIT_OK
    except (Infeasible, InvalidParams, NotInRange, EncodingFailure, CandidateExplosion, CapExceeded) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InterpolationFailure, AssertionError) as ex:
        print(f"internal error: {ex}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
