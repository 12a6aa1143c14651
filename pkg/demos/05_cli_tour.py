"""
The command-line front end
==========================

The same computations from a shell, driven by JSON family descriptions.
"""

import subprocess
import sys


def zetadet(*args):
    print("$ zetadet", " ".join(args))
    proc = subprocess.run([sys.executable, "-m", "zetadet", *args], capture_output=True, text=True)
    print(proc.stdout + proc.stderr, end="")
    print(f"(exit {proc.returncode})\n")


# %%
# Values and determinants from a bundled family.
zetadet("zeta", "--config", "flat", "--op", "A", "--s", "0")
zetadet("det", "--config", "sphere", "--op", "D")

# %%
# Identity checks; a failed check exits with 4.
zetadet("verify", "--config", "sphere", "theorem", "--ops", "A,B,C,D,E")
zetadet("verify", "--config", "circle", "zero-anomaly", "--ops", "S1,S2,S3")
zetadet("verify", "--config", "sphere", "zero-anomaly", "--ops", "A,C")

# %%
# Exact randomized suite with a fixed seed.
zetadet("symbolic", "--n", "5", "--trials", "20", "--seed", "7")
