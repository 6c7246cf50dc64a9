"""
The command line
================

Every command prints a reproducibility header, then its report. Exit status is
0 when all checks pass, 1 on a failed check and 2 on bad input.
"""

# %%
import subprocess
import sys


def graphspec(*args):
    r = subprocess.run([sys.executable, "-m", "graphspec", *args], capture_output=True, text=True)
    print("$ graphspec", " ".join(args), f"  (exit {r.returncode})")
    print(r.stdout + r.stderr)


graphspec("spectrum", "--graph6", "Bw")
graphspec("construct", "--k", "1", "--n", "21", "--output", "text")
graphspec("verify", "--suite", "interlacing", "--trials", "3", "--seed", "7")
graphspec("search", "--n", "5", "--form", "mu1+mu2", "--output", "csv")
graphspec("phi", "--n-range", "2..5", "--alpha", "1", "--gamma", "1")
graphspec("amplify", "--graph6", "C}", "--N", "12", "--c-ref", "0.65", "--eps", "0.01")
graphspec("search", "--n", "9", "--method", "exhaustive")
