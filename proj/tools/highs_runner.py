#!/usr/bin/env python3
# Copyright 2026 The gasmip Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Solve an MPS file with HiGHS and write a gasmip solution file."""

import argparse
import sys

import highspy


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("mps")
    ap.add_argument("sol")
    ap.add_argument("--time-limit", type=float, default=3600.0)
    ap.add_argument("--gap", type=float, default=1e-3)
    args = ap.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", args.time_limit)
    h.setOptionValue("mip_rel_gap", args.gap)
    h.setOptionValue("threads", 1)
    if h.readModel(args.mps) == highspy.HighsStatus.kError:
        print("cannot read " + args.mps, file=sys.stderr)
        return 1
    h.run()
    ms = h.getModelStatus()
    S = highspy.HighsModelStatus
    status = {
        S.kOptimal: "optimal",
        S.kInfeasible: "infeasible",
        S.kUnbounded: "unbounded",
        S.kUnboundedOrInfeasible: "infeasible",
        S.kTimeLimit: "limit",
        S.kIterationLimit: "limit",
        S.kSolutionLimit: "limit",
    }.get(ms, "error")
    info = h.getInfo()
    lp = h.getLp()
    with open(args.sol, "w") as f:
        f.write("status %s\n" % status)
        has_x = info.primal_solution_status == 2  # feasible
        if has_x:
            f.write("objective %.17g\n" % info.objective_function_value)
            if lp.integrality_ and any(int(t) != 0 for t in lp.integrality_):
                f.write("bound %.17g\n" % info.mip_dual_bound)
                f.write("nodes %d\n" % max(info.mip_node_count, 0))
            x = h.getSolution().col_value
            for name, v in zip(lp.col_names_, x):
                f.write("%s %.17g\n" % (name, v))
    return 0


if __name__ == "__main__":
    sys.exit(main())
