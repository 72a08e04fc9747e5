"""
Command-line front end.
"""
import argparse
import json
import sys
import time
from pathlib import Path

import pandas as pd

from l00p3r.backend import make_runner
from l00p3r.core import Loggable
from l00p3r.core.enumeration import collect_by_prefix, count_polygons
from l00p3r.core.errors import DomainError, InvalidInputError, L00p3rError
from l00p3r.core.fraction import FpEvaluator, square_family
from l00p3r.core.green import build_ctable, ctable_load, table_index_for_length
from l00p3r.core.polygon import canonicalize, check_polygon, parse_word, square_word
from l00p3r.core.store import ShardSet, store_stats
from l00p3r.core.sweep import CSV_FLOAT_FORMAT, SweepAccumulator, extrema, fit_report
from l00p3r.core.triangular import tri_asymptotic, tri_closed_form, tri_integral_oracle, tri_recurrence
from l00p3r.core.verification import default_suite, is_success
from l00p3r.utils.misc import datetime_to_string, utcnow

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

TRI_MODES = ("recurrence", "closed", "asymptotic", "oracle")


class MissingTableError(L00p3rError, FileNotFoundError):
    pass


class RunConfig(Loggable):
    """
    Parsed options of one invocation, validated before any long computation.
    """

    OUTPUT_PATHS = ("out", "fit_out", "record", "checkpoint")

    def __init__(self, command, **options):
        self.command = command
        self.options = options

    def __getattr__(self, name):
        options = self.__dict__.get("options", {})
        if name in options:
            return options[name]
        raise AttributeError(name)

    def get(self, name, default=None):
        value = self.options.get(name)
        return default if value is None else value

    def validate(self):
        jobs = self.get("jobs", 1)
        if jobs < 1:
            raise InvalidInputError(f"--jobs must be >= 1, got {jobs}")
        table = self.get("table")
        if table is not None and not Path(table).is_file():
            raise MissingTableError(
                f"C-table {table} not found; build it with `l00p3r cmatrix --max-index N --out {table}`"
            )
        for _key in self.OUTPUT_PATHS:
            path = self.get(_key)
            if path is not None and not Path(path).resolve().parent.is_dir():
                raise InvalidInputError(f"--{_key.replace('_', '-')}: directory of {path} does not exist")
        return self

    def to_dict(self):
        return {"class": self.__class__.__name__, "command": self.command, **self.options}

    @classmethod
    def from_dict(cls, data_dict):
        burner_dict = data_dict.copy()
        class_name = burner_dict.pop("class")
        assert class_name == cls.__name__, f"Class name mismatch: {class_name} vs. {cls.__name__}"
        command = burner_dict.pop("command")
        return cls(command, **burner_dict)

    @classmethod
    def from_namespace(cls, namespace):
        options = {_k: _v for _k, _v in vars(namespace).items() if _k not in ("command", "handler")}
        return cls(namespace.command, **options)

    def dump_json(self, path):
        data_dict = self.to_dict()
        data_dict["recorded_at"] = datetime_to_string(utcnow())
        with open(path, "w") as f:
            json.dump(data_dict, f, indent=2, default=str)

    @classmethod
    def load_json(cls, path):
        with open(path, "r") as f:
            data_dict = json.load(f)
        data_dict.pop("recorded_at", None)
        return cls.from_dict(data_dict)


def emit(frame, out=None):
    """
    Write a frame as CSV to `out`, or to stdout.
    """
    if out is None:
        sys.stdout.write(frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT))
    else:
        frame.to_csv(out, index=False, float_format=CSV_FLOAT_FORMAT)


def check_even_length(length):
    if length is None or length % 2 or length < 2:
        raise DomainError(f"--length must be an even number >= 2, got {length}")


def resolve_table(config, max_index):
    """
    Load --table, or build a table in memory when none is given.
    """
    if config.get("table") is None:
        return build_ctable(max_index)
    table = ctable_load(config.table)
    if table.max_index < max_index:
        config._warn(f"{config.table} only reaches index {table.max_index}, building {max_index} in memory")
        return build_ctable(max_index)
    return table


def cmd_cmatrix(config):
    if config.max_index < 1:
        raise DomainError(f"--max-index must be >= 1, got {config.max_index}")
    start = time.perf_counter()
    table = build_ctable(config.max_index)
    table.save(config.out)
    config._good(
        f"saved {len(table)} coefficients (max_index {table.max_index}) to {config.out} "
        f"in {time.perf_counter() - start:.2f}s"
    )
    print(len(table))
    return EXIT_OK


def cmd_enumerate(config):
    length = config.length
    check_even_length(length)
    runner = make_runner(config.get("jobs", 1))
    start = time.perf_counter()
    if config.get("count_only", False):
        count = count_polygons(length, runner, depth=config.get("shard_depth"))
    else:
        by_prefix = collect_by_prefix(length, runner, depth=config.get("shard_depth"))
        count = sum(len(_words) for _words in by_prefix.values())
        if config.get("out") is not None:
            shards = ShardSet(config.out, length)
            for _prefix, _words in by_prefix.items():
                shards.write(_prefix, _words, compress=config.get("compress", False))
            config._good(f"wrote {len(by_prefix)} shards under {shards.folder}")
        else:
            for _words in by_prefix.values():
                sys.stdout.write("".join(f"{_w}\n" for _w in _words))
    config._info(f"pi({length}) = {count} in {time.perf_counter() - start:.2f}s")
    if config.get("count_only", False) or config.get("out") is not None:
        print(count)
    return EXIT_OK


def cmd_sweep(config):
    max_length = config.length
    check_even_length(max_length)
    if config.get("table") is None:
        raise MissingTableError(
            "sweep needs a C-table; build one with "
            f"`l00p3r cmatrix --max-index {table_index_for_length(max_length)} --out TABLE`"
        )
    table = ctable_load(config.table)
    needed = table_index_for_length(max_length)
    if table.max_index < needed:
        raise MissingTableError(
            f"{config.table} reaches index {table.max_index} but ell={max_length} needs {needed}; "
            f"rebuild it with `l00p3r cmatrix --max-index {needed}`"
        )

    checkpoint = config.get("checkpoint")
    if checkpoint is not None and Path(checkpoint).is_file():
        accumulator = SweepAccumulator.load_pickle(checkpoint)
        config._info(f"resuming after ell={accumulator.last_length} from {checkpoint}")
    else:
        accumulator = SweepAccumulator()

    runner = make_runner(config.get("jobs", 1))
    for _length in range(accumulator.last_length + 2, max_length + 1, 2):
        accumulator.sweep_length(
            _length,
            table,
            runner,
            depth=config.get("shard_depth"),
            store_directory=config.get("stores"),
        )
        if checkpoint is not None:
            accumulator.dump_pickle(checkpoint)

    emit(accumulator.to_frame(), config.get("out"))
    if config.get("fit_out") is not None:
        sweep_frame, _ = fit_report(accumulator.results, [])
        sweep_frame.to_csv(config.fit_out, index=False, float_format=CSV_FLOAT_FORMAT)
    return EXIT_OK


def cmd_fp(config):
    word = check_polygon(parse_word(config.word))
    table = resolve_table(config, table_index_for_length(len(word)))
    info = FpEvaluator(table, exact=config.get("exact", False)).describe(word)
    info["canonical"] = canonicalize(word)
    print(f"{word},{info['F_numeric']!r}")
    if "coefficients" in info:
        print(f"F_exact,{info['F_exact']}")
        for _degree, _coefficient in enumerate(info["coefficients"]):
            print(f"u^{_degree},{_coefficient}")
    config._info(f"canonical form {info['canonical']}, neighborhood of {info['neighborhood']} vertices")
    return EXIT_OK


def cmd_square(config):
    sides = config.sides
    if any(_side < 1 for _side in sides):
        raise DomainError(f"Square sides must be >= 1, got {sides}")
    table = resolve_table(config, table_index_for_length(4 * max(sides)))
    squares = square_family(sides, table)
    for _side, _value in squares:
        print(f"{_side},{_value!r}")
        config._info(f"{square_word(_side)} -> {_value:.16e}")
    if config.get("fit_out") is not None:
        _, square_frame = fit_report([], squares)
        square_frame.to_csv(config.fit_out, index=False)
    return EXIT_OK


def tri_rows(n, mode):
    if mode in ("recurrence", "closed"):
        values = tri_recurrence(n) if mode == "recurrence" else [tri_closed_form(_k) for _k in range(n + 1)]
        rows = []
        for _r in values:
            value = _r.to_float()
            asymptotic = tri_asymptotic(_r.n) if _r.n >= 1 else float("nan")
            rows.append(
                {
                    "n": _r.n,
                    "a": f"{_r.value.a.numerator}/{_r.value.a.denominator}",
                    "b": f"{_r.value.b.numerator}/{_r.value.b.denominator}",
                    "float_value": value,
                    "asymptotic": asymptotic,
                    "residual": value - asymptotic,
                }
            )
        return pd.DataFrame(rows), values[-1]
    if mode == "asymptotic":
        return pd.DataFrame({"n": list(range(1, n + 1)), "asymptotic": [tri_asymptotic(_k) for _k in range(1, n + 1)]}), None
    return pd.DataFrame({"n": list(range(n + 1)), "oracle": [tri_integral_oracle(_k) for _k in range(n + 1)]}), None


def cmd_tri(config):
    n, mode = config.n, config.get("mode", "recurrence")
    if n < 0 or (mode == "asymptotic" and n < 1):
        raise DomainError(f"n out of range for mode {mode}: {n}")
    frame, last = tri_rows(n, mode)
    emit(frame, config.get("out"))
    if last is not None:
        config._good(f"r_{n} = {last} ~ {last.to_float():.5f}")
    return EXIT_OK


def cmd_verify(config):
    outcome = default_suite(max_length=config.get("max_ell", 10)).run()
    return EXIT_OK if is_success(outcome) else EXIT_FAILURE


def cmd_stats(config):
    rows = []
    for _path in config.paths:
        with open(_path, "rb") as f:
            rows.append({"path": _path, **store_stats(f)})
    emit(pd.DataFrame(rows), config.get("out"))
    return EXIT_OK


def cmd_extrema(config):
    length = config.length
    check_even_length(length)
    table = resolve_table(config, table_index_for_length(length))
    argmax, maximum, argmin, minimum = extrema(length, table)
    print(f"max,{argmax},{maximum!r}")
    print(f"min,{argmin},{minimum!r}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="l00p3r",
        description="Self-avoiding polygons, lattice Green's functions and last-erased-loop fractions.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(sub, table=False, jobs=False, out=True):
        if table:
            sub.add_argument("--table", type=str, default=None, help="C-table file from `cmatrix`")
        if jobs:
            sub.add_argument("--jobs", type=int, default=1, help="worker processes (default: 1)")
        if out:
            sub.add_argument("--out", type=str, default=None, help="output path (default: stdout)")
        sub.add_argument("--record", type=str, default=None, help="write the run configuration as JSON")

    p_cmatrix = subparsers.add_parser("cmatrix", help="build and save the exact C-table")
    p_cmatrix.add_argument("--max-index", "-n", type=int, required=True)
    p_cmatrix.add_argument("--out", type=str, required=True, help="table file to write")
    p_cmatrix.set_defaults(handler=cmd_cmatrix)
    add_common(p_cmatrix, out=False)

    p_enumerate = subparsers.add_parser("enumerate", help="enumerate canonical polygons")
    p_enumerate.add_argument("--length", "-l", type=int, required=True)
    p_enumerate.add_argument("--shard-depth", type=int, default=None)
    p_enumerate.add_argument("--compress", action="store_true")
    p_enumerate.add_argument("--count-only", action="store_true")
    p_enumerate.set_defaults(handler=cmd_enumerate)
    add_common(p_enumerate, jobs=True)

    p_fp = subparsers.add_parser("fp", help="F_p of one closed self-avoiding word")
    p_fp.add_argument("word", type=str)
    p_fp.add_argument("--exact", action="store_true")
    p_fp.set_defaults(handler=cmd_fp)
    add_common(p_fp, table=True, out=False)

    p_sweep = subparsers.add_parser("sweep", help="F(ell) and S(ell) for ell = 2, 4, ..., LENGTH")
    p_sweep.add_argument("--length", "-l", type=int, required=True)
    p_sweep.add_argument("--stores", type=str, default=None, help="directory written by `enumerate --out`")
    p_sweep.add_argument("--shard-depth", type=int, default=None)
    p_sweep.add_argument("--checkpoint", type=str, default=None)
    p_sweep.add_argument("--fit-out", type=str, default=None)
    p_sweep.set_defaults(handler=cmd_sweep)
    add_common(p_sweep, table=True, jobs=True)

    p_square = subparsers.add_parser("square", help="F_p of L x L squares")
    p_square.add_argument("sides", type=int, nargs="+")
    p_square.add_argument("--fit-out", type=str, default=None)
    p_square.set_defaults(handler=cmd_square)
    add_common(p_square, table=True, out=False)

    p_tri = subparsers.add_parser("tri", help="triangular-lattice resistances r_0..r_n")
    p_tri.add_argument("n", type=int)
    p_tri.add_argument("--mode", choices=TRI_MODES, default="recurrence")
    p_tri.set_defaults(handler=cmd_tri)
    add_common(p_tri)

    p_verify = subparsers.add_parser("verify", help="run every property check")
    p_verify.add_argument("--max-ell", type=int, default=10)
    p_verify.set_defaults(handler=cmd_verify)
    add_common(p_verify, out=False)

    p_stats = subparsers.add_parser("stats", help="size report of store files")
    p_stats.add_argument("paths", type=str, nargs="+")
    p_stats.set_defaults(handler=cmd_stats)
    add_common(p_stats)

    p_extrema = subparsers.add_parser("extrema", help="largest and smallest F_p of one length")
    p_extrema.add_argument("--length", "-l", type=int, required=True)
    p_extrema.set_defaults(handler=cmd_extrema)
    add_common(p_extrema, table=True, out=False)

    return parser


def main(argv=None):
    parser = build_parser()
    namespace = parser.parse_args(argv)
    config = RunConfig.from_namespace(namespace)
    try:
        config.validate()
        if config.get("record") is not None:
            config.dump_json(config.record)
        return namespace.handler(config)
    except (DomainError, InvalidInputError) as e:
        RunConfig._cls_fail(f"{e}")
        return EXIT_USAGE
    except (L00p3rError, OSError) as e:
        RunConfig._cls_fail(f"{e}")
        return EXIT_FAILURE


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
