#!/usr/bin/env python3
# Copyright 2026 The hocbf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Example plot of trajectory CSVs written by `hocbf simulate`.

    hocbf simulate --set form=linear --set p=1 --output linear.csv
    hocbf simulate --set form=quadratic --set p=0.02 --output quadratic.csv
    python3 scripts/plot_trajectory.py linear.csv quadratic.csv -o acc.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("csv", nargs="+", help="trajectory CSV files")
    parser.add_argument("-o", "--output", default="trajectory.png")
    args = parser.parse_args()

    fig, axes = plt.subplots(3, 1, sharex=True, figsize=(7, 8))
    for path in args.csv:
        df = pd.read_csv(path)
        axes[0].plot(df.t, df.v, label=path)
        axes[1].plot(df.t, df.u, label=path)
        axes[2].semilogy(df.t, df.b.clip(lower=1e-9), label=path)
    axes[0].set_ylabel("v [m/s]")
    axes[1].set_ylabel("u [N]")
    axes[2].set_ylabel("b = z - delta [m]")
    axes[2].set_xlabel("t [s]")
    for ax in axes:
        ax.grid(True, alpha=0.3)
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=120)


if __name__ == "__main__":
    main()
