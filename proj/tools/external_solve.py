#!/usr/bin/env python3
"""Solve an LP file written by `netgen export` with HiGHS and write the
solution as `name value` lines, ready for `netgen import`."""

import argparse
import sys
import time

import highspy


def read_starts(path):
    """Blocks of `name value` lines separated by blank lines."""
    blocks, cur = [], {}
    with open(path) as f:
        for line in f:
            parts = line.split()
            if not parts:
                if cur:
                    blocks.append(cur)
                cur = {}
                continue
            cur[parts[0]] = float(parts[1])
    if cur:
        blocks.append(cur)
    return blocks


def complete_start(h, block, time_limit):
    """Solve with the block's columns fixed; full column values or None."""
    lp = h.getLp()
    fixed = []
    for name, v in block.items():
        st, i = h.getColByName(name)
        if st != highspy.HighsStatus.kOk:
            return None
        fixed.append((i, lp.col_lower_[i], lp.col_upper_[i]))
        h.changeColBounds(i, v, v)
    h.setOptionValue("time_limit", time_limit)
    h.run()
    ok = h.getInfo().primal_solution_status == 2
    values = list(h.getSolution().col_value) if ok else None
    for i, lo, hi in fixed:
        h.changeColBounds(i, lo, hi)
    h.clearSolver()
    return values


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("lp", help="LP file from netgen export")
    ap.add_argument("solution", help="output path for the solution")
    ap.add_argument("--time-limit", type=float, default=3600.0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--quiet", action="store_true")
    ap.add_argument("--start", help="start file from `netgen export --start`")
    args = ap.parse_args()
    t0 = time.monotonic()

    h = highspy.Highs()
    h.setOptionValue("output_flag", not args.quiet)
    h.setOptionValue("time_limit", args.time_limit)
    h.setOptionValue("threads", args.threads)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 1e-7)
    if h.readModel(args.lp) != highspy.HighsStatus.kOk:
        print(f"error: cannot read {args.lp}", file=sys.stderr)
        return 2
    if args.start:
        for k, block in enumerate(read_starts(args.start)):
            left = args.time_limit - (time.monotonic() - t0)
            if left <= 1:
                break
            values = complete_start(h, block, min(60.0, left))
            if values is None:
                continue
            sol = highspy.HighsSolution()
            sol.col_value = values
            sol.value_valid = True
            h.setSolution(sol)
            print(f"start {k} accepted", file=sys.stderr)
            break
    h.setOptionValue("time_limit", max(1.0, args.time_limit - (time.monotonic() - t0)))
    h.run()
    status = h.getModelStatus()
    info = h.getInfo()
    print(f"status {h.modelStatusToString(status)} objective {info.objective_function_value}",
          file=sys.stderr)
    if info.primal_solution_status == 0:
        print("error: no feasible solution", file=sys.stderr)
        return 3 if status == highspy.HighsModelStatus.kInfeasible else 4

    lp = h.getLp()
    values = h.getSolution().col_value
    with open(args.solution, "w") as out:
        for name, v in zip(lp.col_names_, values):
            out.write(f"{name} {v:.12g}\n")
    return 0 if status == highspy.HighsModelStatus.kOptimal else 4


if __name__ == "__main__":
    sys.exit(main())
