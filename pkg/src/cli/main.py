from __future__ import annotations

import argparse
import csv
import shlex
import sys
from pathlib import Path

import numpy as np
from loguru import logger

from .. import __version__
from ..aggregation.benchmark import calibrate, run_benchmark
from ..aggregation.config import SimConfig
from ..aggregation.energy import EnergyLedger, EnergyModel
from ..aggregation.pipelines import make_pipeline
from ..aggregation.topology import build_topology, save_topology
from ..bgn.ciphertext import LEVEL_POINT, from_wire, to_wire
from ..bgn.config import BgnConfig
from ..bgn.keys import keygen, load_private_key, load_public_key, save_keys
from ..bgn.scheme import decrypt, decrypt_product, encrypt, hom_add, hom_mul
from ..errors import SecAggError
from ..numeric.rng import substream
from ..watermark.attacks import attack_gaussian, attack_jpeg, attack_rotation, attack_zeroing
from ..watermark.ciis import Mode, ciis_params_from_seed, default_watermark, embed_watermark, extract_similarity
from ..watermark.config import WatermarkConfig
from ..watermark.grid import lsc_view, msc_view
from ..watermark.pgm import read_pgm, write_pgm
from ..watermark.suite import attack_suite, write_suite_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

PIPELINE_NAMES = {"sum": "sum", "mean": "mean", "variance": "variance", "wmean": "weighted_mean"}
MODES = {"auth": Mode.AUTHENTICATION, "robust": Mode.UNAUTHENTICATION}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with a one-line diagnostic instead of the usage dump."""

    def error(self, message: str):
        raise UsageError(message)


def setup_logging(debug: bool = False) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if debug else "INFO", format="[{level}] {message}")
    logger.debug("Logging initialized (debug={})", debug)


def provenance(argv: list[str]) -> str:
    return f"secagg {__version__} {shlex.join(argv)}".rstrip()


def parse_levels(text: str) -> set[int]:
    levels: set[int] = set()
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        try:
            levels.update(range(int(lo), int(hi or lo) + 1))
        except ValueError:
            raise UsageError(f"bad level list {text!r}") from None
    if not levels or not levels <= {1, 2, 3, 4}:
        raise UsageError(f"levels must be within 1-4, got {text!r}")
    return levels


def check_tau(tau: int) -> None:
    if tau < 2:
        raise UsageError(f"--tau must be at least 2, got {tau}")


def check_energy_rate(k: float | None) -> None:
    if k is not None and not k >= 0:
        raise UsageError(f"--k must be non-negative, got {k}")


def parse_primes(text: str) -> tuple[int, int]:
    try:
        q1, q2 = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--primes expects q1,q2, got {text!r}") from None
    return q1, q2


def read_watermark(path: Path | None, seed: int, config: WatermarkConfig) -> np.ndarray:
    """Raw '0'/'1' characters; whitespace ignored. Defaults to a key-derived watermark."""
    if path is None:
        return default_watermark(seed, config.watermark_bits)
    text = "".join(Path(path).read_text(encoding="ascii").split())
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"{path}: watermark must be a non-empty string of 0/1 characters")
    return np.array([int(c) for c in text], dtype=np.uint8)


def build_parser() -> _Parser:
    parser = _Parser(prog="secagg", description="Secure aggregation and watermarking for sensor networks")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument("--version", action="version", version=f"secagg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--tau", type=int, default=20, help="bits of q1 and q2")
    p.add_argument("--out-pub", type=Path, default=Path("key.pub.json"))
    p.add_argument("--out-priv", type=Path, default=Path("key.priv.json"))
    p.add_argument("--max-message", type=int, default=BgnConfig().message_bound)
    p.add_argument("--max-product", type=int, default=None)
    p.add_argument("--primes", type=parse_primes, default=None, help="force q1,q2 (toy keys)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("encrypt", help="encrypt an integer")
    p.add_argument("--pub", type=Path, default=Path("key.pub.json"))
    p.add_argument("--value", type=int, required=True)
    p.add_argument("--out", type=Path, default=Path("ct.bin"))
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("decrypt", help="decrypt a level-1 or level-2 ciphertext")
    p.add_argument("--pub", type=Path, default=Path("key.pub.json"))
    p.add_argument("--priv", type=Path, default=Path("key.priv.json"))
    p.add_argument("--in", dest="input", type=Path, default=Path("ct.bin"))

    for name, text in (("add", "homomorphic sum of two level-1 ciphertexts"),
                       ("mul", "homomorphic product of two level-1 ciphertexts")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--pub", type=Path, default=Path("key.pub.json"))
        p.add_argument("--in", dest="inputs", type=Path, nargs=2, required=True)
        p.add_argument("--out", type=Path, default=Path(f"{name}.bin"))
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("simulate", help="run one aggregation pipeline over a random topology")
    p.add_argument("--sensors", type=int, default=SimConfig().n_sensors)
    p.add_argument("--aggregators", type=int, default=SimConfig().n_aggregators)
    p.add_argument("--pipeline", choices=sorted(PIPELINE_NAMES), default="sum")
    p.add_argument("--max-reading", type=int, default=10)
    p.add_argument("--max-weight", type=int, default=3)
    p.add_argument("--tau", type=int, default=20)
    p.add_argument("--pub", type=Path, default=None)
    p.add_argument("--priv", type=Path, default=None)
    p.add_argument("--k", type=float, default=None, help="energy per second; calibrated when omitted")
    p.add_argument("--topology-out", type=Path, default=None)
    p.add_argument("--report", type=Path, default=Path("simulate.csv"))
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bench", help="EC vs RSA energy benchmark")
    p.add_argument("--levels", type=parse_levels, default={1, 2, 3, 4}, help="e.g. 1-4 or 1,3")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--report", type=Path, default=Path("bench.csv"))
    p.add_argument("--series", type=Path, default=None, help="per-round network energy CSV")
    p.add_argument("--seed", type=int, default=0)

    wm = sub.add_parser("wm", help="watermark workflows").add_subparsers(
        dest="wm_command", required=True, parser_class=_Parser
    )
    for name in ("embed", "check", "suite"):
        p = wm.add_parser(name)
        p.add_argument("--in", dest="input", type=Path, required=True)
        p.add_argument("--key", type=int, required=True)
        p.add_argument("--mode", choices=sorted(MODES), default="robust")
        p.add_argument("--watermark", type=Path, default=None)
        p.add_argument("--iterations", type=int, default=None)
    wm.choices["embed"].add_argument("--out", type=Path, required=True)
    wm.choices["suite"].add_argument("--report", type=Path, default=Path("suite.csv"))

    p = wm.add_parser("attack")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--type", choices=["zero", "rotate", "noise", "jpeg"], required=True)
    p.add_argument("--param", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = wm.add_parser("view", help="write the MSC and LSC planes")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--msc-out", type=Path, required=True)
    p.add_argument("--lsc-out", type=Path, required=True)
    return parser


# crypto commands


def cmd_keygen(args, argv) -> None:
    check_tau(args.tau)
    config = BgnConfig(message_bound=args.max_message, product_bound=args.max_product)
    pk, sk = keygen(args.tau, substream(args.seed, "keygen"), config, primes=args.primes)
    save_keys(pk, sk, args.out_pub, args.out_priv)
    print(f"p = {pk.p} ({pk.p.bit_length()} bits), n = {pk.n}, T = {pk.T}, T2 = {pk.T2}")


def cmd_encrypt(args, argv) -> None:
    pk = load_public_key(args.pub)
    args.out.write_bytes(to_wire(encrypt(pk, args.value, substream(args.seed, "encrypt"))))
    print(args.out)


def cmd_decrypt(args, argv) -> None:
    pk, sk = load_public_key(args.pub), load_private_key(args.priv)
    ct = from_wire(args.input.read_bytes(), pk)
    print(decrypt(pk, sk, ct) if ct.level == LEVEL_POINT else decrypt_product(pk, sk, ct))


def _binary(op, args) -> None:
    pk = load_public_key(args.pub)
    a, b = (from_wire(path.read_bytes(), pk) for path in args.inputs)
    args.out.write_bytes(to_wire(op(pk, a, b, substream(args.seed, "encrypt"))))
    print(args.out)


def cmd_add(args, argv) -> None:
    _binary(hom_add, args)


def cmd_mul(args, argv) -> None:
    _binary(hom_mul, args)


# simulation


def cmd_simulate(args, argv) -> None:
    config = SimConfig(n_sensors=args.sensors, n_aggregators=args.aggregators,
                       max_reading=args.max_reading, tau=args.tau)
    if args.sensors < 1 or args.aggregators < 1:
        raise UsageError("--sensors and --aggregators must be at least 1")
    if (args.pub is None) != (args.priv is None):
        raise UsageError("--pub and --priv go together")
    if args.max_reading < 0 or args.max_weight < 0:
        raise UsageError("--max-reading and --max-weight must be non-negative")
    check_energy_rate(args.k)
    if args.pub is not None:
        pk, sk = load_public_key(args.pub), load_private_key(args.priv)
    else:
        check_tau(config.tau)
        bgn = BgnConfig(product_bound=config.product_bound)
        pk, sk = keygen(config.tau, substream(args.seed, "keygen"), bgn)

    topology = build_topology(config.n_sensors, config.n_aggregators, args.seed, config)
    if args.topology_out is not None:
        save_topology(topology, args.topology_out)
    readings_rng = substream(args.seed, "readings")
    readings = [readings_rng.randint(0, config.max_reading) for _ in topology.sensors]
    weights = [readings_rng.randint(0, args.max_weight) for _ in topology.aggregators]

    model = EnergyModel(args.k) if args.k is not None else calibrate(args.seed, config)
    ledger = EnergyLedger.for_topology(topology, model)
    pipeline = make_pipeline(PIPELINE_NAMES[args.pipeline])
    result = pipeline.run(topology, pk, sk, readings, substream(args.seed, "encrypt"),
                          weights=weights if pipeline.name == "weighted_mean" else None, ledger=ledger)

    with open(args.report, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# {provenance(argv)}\n")
        writer = csv.writer(fh)
        writer.writerow(["pipeline", "sensors", "aggregators", "key_bits",
                         "truth_num", "truth_den", "decrypted_num", "decrypted_den", "match", "network_energy"])
        writer.writerow([result.pipeline, config.n_sensors, config.n_aggregators, pk.p.bit_length(),
                         *result.truth, *result.decrypted, result.matches, f"{ledger.total_spent():.6f}"])
    value = result.value
    print(f"{result.pipeline}: {'undefined' if value is None else f'{float(value):.6g}'} "
          f"({result.decrypted[0]}/{result.decrypted[1]}, oracle {'match' if result.matches else 'MISMATCH'})")


def cmd_bench(args, argv) -> None:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.rounds < 1:
        raise UsageError("--rounds must be at least 1")
    check_energy_rate(args.k)
    config = SimConfig(trials=args.trials, workers=args.workers, rounds=args.rounds)
    model = EnergyModel(args.k) if args.k is not None else None
    report = run_benchmark(args.levels, args.trials, model, args.seed, config)
    report.write_csv(args.report, provenance(argv))
    if args.series is not None:
        report.write_series_csv(args.series, provenance(argv))
    for row in report.rows:
        print(f"{row.scheme:>3} level {row.level} ({row.key_bits} bits) {row.role:<10} "
              f"{row.energy_units:.4f} units/op  {row.round_energy_units:.4f} units/round  [{row.status}]")


# watermarking


def _wm_setup(args):
    config = WatermarkConfig(iterations=args.iterations)
    grid = read_pgm(args.input)
    params = ciis_params_from_seed(args.key, MODES[args.mode], grid, config)
    return config, grid, params, read_watermark(args.watermark, args.key, config)


def cmd_wm_embed(args, argv) -> None:
    config, grid, params, watermark = _wm_setup(args)
    write_pgm(embed_watermark(grid, params, watermark, config), args.out)
    print(args.out)


def cmd_wm_check(args, argv) -> None:
    config, grid, params, watermark = _wm_setup(args)
    print(f"{extract_similarity(grid, params, watermark, config):.2f}")


def cmd_wm_suite(args, argv) -> None:
    config, grid, _, watermark = _wm_setup(args)
    rows = attack_suite(grid, args.key, watermark, config)
    write_suite_csv(rows, args.report, provenance(argv))
    for row in rows:
        print(f"{row.mode:<16} {row.attack:<9} {row.parameter:>6g}  {row.similarity:.2f}")


def cmd_wm_attack(args, argv) -> None:
    if not np.isfinite(args.param):
        raise UsageError(f"--param must be finite, got {args.param}")
    if args.type != "rotate" and args.param < 0:
        raise UsageError(f"--param for {args.type} must be non-negative, got {args.param}")
    grid = read_pgm(args.input)
    match args.type:
        case "zero":
            out = attack_zeroing(grid, int(args.param))
        case "rotate":
            out = attack_rotation(grid, args.param)
        case "noise":
            out = attack_gaussian(grid, args.param, args.seed)
        case "jpeg":
            out = attack_jpeg(grid, args.param)
    write_pgm(out, args.out)
    print(args.out)


def cmd_wm_view(args, argv) -> None:
    grid = read_pgm(args.input)
    write_pgm(msc_view(grid), args.msc_out)
    write_pgm(lsc_view(grid), args.lsc_out)
    print(args.msc_out, args.lsc_out)


COMMANDS = {
    "keygen": cmd_keygen,
    "encrypt": cmd_encrypt,
    "decrypt": cmd_decrypt,
    "add": cmd_add,
    "mul": cmd_mul,
    "simulate": cmd_simulate,
    "bench": cmd_bench,
    "wm embed": cmd_wm_embed,
    "wm check": cmd_wm_check,
    "wm suite": cmd_wm_suite,
    "wm attack": cmd_wm_attack,
    "wm view": cmd_wm_view,
}


def run_cli(argv: list[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
        setup_logging(args.debug)
        command = args.command if args.command != "wm" else f"wm {args.wm_command}"
        COMMANDS[command](args, argv)
    except UsageError as e:
        print(f"secagg: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"secagg: error: {e.strerror or e}: {e.filename}", file=sys.stderr)
        return EXIT_USAGE
    except SecAggError as e:
        logger.error("{}: {}", type(e).__name__, e)
        return EXIT_DOMAIN
    return EXIT_OK


def main() -> int:
    return run_cli(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
