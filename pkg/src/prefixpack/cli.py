"""Command-line front end: decide / construct / kraft / entropy / render / selftest.

Exit codes are a contract: 0 = exists or success, 1 = no such code exists,
2 = input error, 3 = selftest disagreement.  Output for a given input is
byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import codes, oracle, packer
from .model import Arities, ProblemSpec

EXIT_EXISTS = 0
EXIT_NOT_EXISTS = 1
EXIT_INPUT_ERROR = 2
EXIT_SELFTEST_FAILED = 3

DEFAULT_SELFTEST_ARITIES = ((2, 2), (2, 3), (3, 2), (3, 3))

# construct/render materialize container grids explicitly; decide keeps a
# (l1max+1) x (l2max+1) count table.  Refuse inputs past these sizes rather
# than letting a valid-looking file take the process down.
CONSTRUCT_CELL_LIMIT = 1 << 18
DECIDE_TABLE_LIMIT = 1 << 24


class InputError(Exception):
    """Malformed instance file or unsupported parameters."""


@dataclass(frozen=True)
class InstanceFile:
    qs: tuple[int, ...]
    lengths: tuple[tuple[int, ...], ...]
    probs: tuple[float, ...] | None
    base: float | None


@dataclass(frozen=True)
class ResultFile:
    decision: bool
    kraft: str  # exact rational as "num/den"
    codebook: tuple[tuple[str, str], ...] | None
    entropy: tuple[float, float, float] | None  # (avg_length, entropy, slack)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InputError(message)


def parse_instance_json(text: str) -> InstanceFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    _require(isinstance(raw, dict), "instance file must be a JSON object")
    _require("q" in raw, 'missing "q" field')
    _require("lengths" in raw, 'missing "lengths" field')
    qs = raw["q"]
    _require(
        isinstance(qs, list) and qs and all(isinstance(v, int) for v in qs),
        '"q" must be a non-empty array of integers',
    )
    lengths = raw["lengths"]
    _require(isinstance(lengths, list), '"lengths" must be an array')
    tuples = []
    for entry in lengths:
        _require(
            isinstance(entry, list) and all(isinstance(v, int) for v in entry),
            f"length entry {entry!r} must be an array of integers",
        )
        _require(
            len(entry) == len(qs),
            f"length entry {entry!r} does not match {len(qs)} channel(s)",
        )
        tuples.append(tuple(entry))
    probs = None
    if "probs" in raw and raw["probs"] is not None:
        _require(
            isinstance(raw["probs"], list)
            and all(isinstance(v, (int, float)) for v in raw["probs"]),
            '"probs" must be an array of numbers',
        )
        _require(
            len(raw["probs"]) == len(tuples),
            '"probs" must have one entry per codeword length',
        )
        probs = tuple(float(v) for v in raw["probs"])
    base = None
    if "D" in raw and raw["D"] is not None:
        _require(isinstance(raw["D"], (int, float)), '"D" must be a number')
        base = float(raw["D"])
    return InstanceFile(tuple(qs), tuple(tuples), probs, base)


def parse_instance_text(text: str) -> InstanceFile:
    """Plain-text alternative: "q1 q2" header, then one "l1 l2" line per codeword."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    _require(bool(rows), "text instance needs at least an arity header line")
    try:
        qs = tuple(int(v) for v in rows[0])
        tuples = tuple(tuple(int(v) for v in row) for row in rows[1:])
    except ValueError as exc:
        raise InputError(f"non-integer token in text instance: {exc}") from exc
    for tup in tuples:
        _require(
            len(tup) == len(qs),
            f"length line {tup} does not match {len(qs)} channel(s)",
        )
    return InstanceFile(qs, tuples, None, None)


def load_instance(path: str, fmt: str) -> InstanceFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_instance_json(text) if fmt == "json" else parse_instance_text(text)


def to_problem_spec(inst: InstanceFile) -> ProblemSpec:
    """Two-channel packing view of an instance; single-channel files get a
    dummy unused second channel (the decision does not depend on it)."""
    _require(
        len(inst.qs) <= 2,
        f"packing commands support at most 2 channels, file has {len(inst.qs)}",
    )
    try:
        if len(inst.qs) == 1:
            return ProblemSpec(
                Arities(inst.qs[0], 2), tuple((t[0], 0) for t in inst.lengths)
            )
        return ProblemSpec(Arities(*inst.qs), tuple(inst.lengths))  # type: ignore[arg-type]
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _guard_decide_size(spec: ProblemSpec) -> None:
    cells = (spec.l1max + 1) * (spec.l2max + 1)
    _require(
        cells <= DECIDE_TABLE_LIMIT,
        f"maximum lengths ({spec.l1max}, {spec.l2max}) need a {cells}-cell count "
        f"table, above the supported {DECIDE_TABLE_LIMIT}",
    )


def _guard_construct_size(spec: ProblemSpec) -> None:
    q = spec.arities
    area = q.q1**spec.l1max * q.q2**spec.l2max
    _require(
        area <= CONSTRUCT_CELL_LIMIT,
        f"container grid has {area} cells, above the supported "
        f"{CONSTRUCT_CELL_LIMIT} for explicit construction (decide scales; "
        "construct/render materialize placements)",
    )


def _kraft_string(inst: InstanceFile) -> str:
    frac = codes.kraft_sum(inst.qs, inst.lengths)
    return f"{frac.numerator}/{frac.denominator}"


def result_to_json(result: ResultFile) -> str:
    payload: dict = {"decision": result.decision, "kraft": result.kraft}
    if result.codebook is not None:
        payload["codebook"] = [{"c1": c1, "c2": c2} for c1, c2 in result.codebook]
    if result.entropy is not None:
        avg, ent, slack = result.entropy
        payload["entropy"] = {"avg_length": avg, "entropy": ent, "slack": slack}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def result_from_json(text: str) -> ResultFile:
    raw = json.loads(text)
    codebook = None
    if "codebook" in raw:
        codebook = tuple((e["c1"], e["c2"]) for e in raw["codebook"])
    entropy = None
    if "entropy" in raw:
        e = raw["entropy"]
        entropy = (e["avg_length"], e["entropy"], e["slack"])
    return ResultFile(raw["decision"], raw["kraft"], codebook, entropy)


def _entropy_triple(inst: InstanceFile) -> tuple[float, float, float] | None:
    if inst.probs is None or inst.base is None:
        return None
    try:
        dist = codes.SourceDistribution(inst.probs, inst.base)
        report = codes.entropy_bound(inst.qs, inst.lengths, dist)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return (report.avg_length, report.entropy, report.slack)


def cmd_decide(args: argparse.Namespace) -> int:
    inst = load_instance(args.input, args.format)
    spec = to_problem_spec(inst)
    _guard_decide_size(spec)
    if packer.decide(spec):
        print("EXISTS")
        return EXIT_EXISTS
    print("NOT-EXISTS")
    return EXIT_NOT_EXISTS


def cmd_construct(args: argparse.Namespace) -> int:
    inst = load_instance(args.input, args.format)
    spec = to_problem_spec(inst)
    _guard_construct_size(spec)
    solution = packer.construct(spec)
    codebook = None
    if solution is not None:
        # for a single-channel file the padded channel-2 words are all empty
        book = codes.solution_to_codebook(spec, solution)
        codebook = tuple((word.c1, word.c2) for word in book)
    result = ResultFile(
        decision=solution is not None,
        kraft=_kraft_string(inst),
        codebook=codebook,
        entropy=_entropy_triple(inst),
    )
    text = result_to_json(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_EXISTS if result.decision else EXIT_NOT_EXISTS


def cmd_kraft(args: argparse.Namespace) -> int:
    inst = load_instance(args.input, args.format)
    try:
        frac = codes.kraft_sum(inst.qs, inst.lengths)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    verdict = "SATISFIED" if frac <= 1 else "VIOLATED"
    print(f"{frac.numerator}/{frac.denominator} {verdict}")
    return EXIT_EXISTS


def cmd_entropy(args: argparse.Namespace) -> int:
    inst = load_instance(args.input, args.format)
    _require(inst.probs is not None, 'entropy needs a "probs" array in the instance file')
    _require(inst.base is not None, 'entropy needs a "D" base in the instance file')
    triple = _entropy_triple(inst)
    assert triple is not None
    avg, ent, slack = triple
    print(f"avg_length {avg:.12g}")
    print(f"entropy {ent:.12g}")
    print(f"slack {slack:.12g}")
    return EXIT_EXISTS


def _svg_axis_map(total: int, canvas: float, log_mode: bool):
    if log_mode:
        denom = math.log1p(total)
        return lambda v: canvas * math.log1p(v) / denom
    return lambda v: canvas * v / total


def render_svg(spec: ProblemSpec, solution: packer.Solution) -> str:
    """SVG diagram: one labeled rectangle per placed block over a q-power grid.

    Axes switch to logarithmic scaling once a channel exceeds 10 symbols of
    maximum length (true scale would be astronomically wide); labels stay
    exact either way.
    """
    q = spec.arities
    book = codes.solution_to_codebook(spec, solution)
    width = q.q1**spec.l1max
    height = q.q2**spec.l2max
    cw, ch = 640.0, 480.0
    log_mode = max(spec.l1max, spec.l2max) > 10
    fx = _svg_axis_map(width, cw, log_mode)
    fy = _svg_axis_map(height, ch, log_mode)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{cw:.0f}" height="{ch:.0f}" '
        f'viewBox="0 0 {cw:.0f} {ch:.0f}" version="1.1">',
        f'<rect class="container" x="0" y="0" width="{cw:.2f}" height="{ch:.2f}" '
        'fill="white" stroke="black"/>',
    ]
    # Grid lines at q-power boundaries, finest level capped to keep files sane.
    max_lines = 64
    drawn: set[tuple[str, int]] = set()
    for k in range(spec.l1max, -1, -1):
        step = q.q1**k
        if width // step > max_lines:
            break
        for t in range(1, width // step):
            x = t * step
            if ("v", x) not in drawn:
                drawn.add(("v", x))
                parts.append(
                    f'<line class="grid" x1="{fx(x):.2f}" y1="0" x2="{fx(x):.2f}" '
                    f'y2="{ch:.2f}" stroke="#cccccc" stroke-width="0.5"/>'
                )
    for k in range(spec.l2max, -1, -1):
        step = q.q2**k
        if height // step > max_lines:
            break
        for t in range(1, height // step):
            y = t * step
            if ("h", y) not in drawn:
                drawn.add(("h", y))
                parts.append(
                    f'<line class="grid" x1="0" y1="{ch - fy(y):.2f}" x2="{cw:.2f}" '
                    f'y2="{ch - fy(y):.2f}" stroke="#cccccc" stroke-width="0.5"/>'
                )
    palette = ("#e66a6a", "#6a8fe6", "#6ce08b", "#e0c76c", "#b96ce0", "#6cd8e0")
    locations = {p.index: (p.x, p.y) for p in solution.assignments}
    for idx, word in enumerate(book):
        x, y = locations[idx]
        l1, l2 = spec.lengths[idx]
        w = q.q1 ** (spec.l1max - l1)
        h = q.q2 ** (spec.l2max - l2)
        x0, x1 = fx(x), fx(x + w)
        # SVG y runs downward; flip so larger y sits higher.
        y0, y1 = ch - fy(y + h), ch - fy(y)
        color = palette[idx % len(palette)]
        label = f"{word.c1 or 'ε'},{word.c2 or 'ε'}"
        parts.append(
            f'<rect class="block" x="{x0:.2f}" y="{y0:.2f}" width="{x1 - x0:.2f}" '
            f'height="{y1 - y0:.2f}" fill="{color}" fill-opacity="0.6" stroke="black"/>'
        )
        parts.append(
            f'<text class="label" x="{(x0 + x1) / 2:.2f}" y="{(y0 + y1) / 2:.2f}" '
            f'font-size="12" text-anchor="middle">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_render(args: argparse.Namespace) -> int:
    inst = load_instance(args.input, args.format)
    spec = to_problem_spec(inst)
    _guard_construct_size(spec)
    solution = packer.construct(spec)
    if solution is None:
        print("NOT-EXISTS")
        return EXIT_NOT_EXISTS
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(render_svg(spec, solution))
    return EXIT_EXISTS


def _parse_arity_flag(values: list[str] | None) -> tuple[tuple[int, int], ...]:
    if not values:
        return DEFAULT_SELFTEST_ARITIES
    pairs = []
    for value in values:
        bits = value.split(",")
        _require(len(bits) == 2, f"--arities wants Q1,Q2 pairs, got {value!r}")
        try:
            pairs.append((int(bits[0]), int(bits[1])))
        except ValueError as exc:
            raise InputError(f"--arities wants integers, got {value!r}") from exc
    return tuple(pairs)


def cmd_selftest(args: argparse.Namespace) -> int:
    arity_pairs = _parse_arity_flag(args.arities)
    limits = oracle.OracleLimits(
        max_m=max(args.max_m, 1), max_dim=4096, max_nodes=5_000_000
    )
    checked = 0
    for spec in oracle.enumerate_instances(arity_pairs, args.max_m, args.max_len):
        fast = packer.decide_fast(spec)
        naive = packer.construct(spec) is not None
        inst = codes.lengths_to_instance(spec)
        brute = oracle.brute_decide(inst.blocks, [inst.container], limits)
        if brute == "budget_exceeded":
            print(
                f"selftest: oracle budget exceeded on q=({spec.arities.q1},{spec.arities.q2}) "
                f"lengths={list(spec.lengths)}"
            )
            return EXIT_SELFTEST_FAILED
        expect = brute == "yes"
        if fast != expect or naive != expect:
            print(
                f"selftest: DISAGREEMENT on q=({spec.arities.q1},{spec.arities.q2}) "
                f"lengths={list(spec.lengths)}: "
                f"fast={fast} naive={naive} brute={expect}"
            )
            return EXIT_SELFTEST_FAILED
        checked += 1
    print(f"selftest: {checked} instances, all procedures agree")
    return EXIT_EXISTS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefixpack",
        description=(
            "Decide whether a two-channel prefix-free code with given codeword "
            "lengths exists, construct one, and report Kraft/entropy bounds."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="instance file path")
        p.add_argument(
            "--format",
            choices=("json", "text"),
            default="json",
            help="instance file format (default json)",
        )

    p_decide = sub.add_parser("decide", help="print EXISTS/NOT-EXISTS and exit 0/1")
    add_input_flags(p_decide)
    p_decide.set_defaults(func=cmd_decide)

    p_construct = sub.add_parser("construct", help="emit a result file with a codebook")
    add_input_flags(p_construct)
    p_construct.add_argument("--output", help="result file path (default stdout)")
    p_construct.set_defaults(func=cmd_construct)

    p_kraft = sub.add_parser("kraft", help="print the exact Kraft sum")
    add_input_flags(p_kraft)
    p_kraft.set_defaults(func=cmd_kraft)

    p_entropy = sub.add_parser("entropy", help="print average length vs entropy")
    add_input_flags(p_entropy)
    p_entropy.set_defaults(func=cmd_entropy)

    p_render = sub.add_parser("render", help="draw the packing as an SVG diagram")
    add_input_flags(p_render)
    p_render.add_argument("--svg", required=True, help="SVG output path")
    p_render.set_defaults(func=cmd_render)

    p_selftest = sub.add_parser(
        "selftest", help="sweep small instances against the brute-force oracle"
    )
    p_selftest.add_argument("--max-m", type=int, default=4)
    p_selftest.add_argument("--max-len", type=int, default=2)
    p_selftest.add_argument(
        "--arities",
        action="append",
        metavar="Q1,Q2",
        help="arity pair to sweep (repeatable; default 2,2 2,3 3,2 3,3)",
    )
    p_selftest.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
