"""
Driving the command line
========================
"""

# %%
import json
import pathlib
import subprocess

here = pathlib.Path(__file__).parent / "specs"


def run(*args):
    out = subprocess.run(["critlab", *args], capture_output=True, text=True)
    return out.returncode, out.stdout


code, out = run("check", str(here / "h3xr.json"))
item = json.loads(out)["items"][0]
print(code, item["kind"], item["t"], item["energy"], item["soliton_lambda"])

# %%
code, out = run("check", str(here / "su2xr_squashed.json"))
print(code, json.loads(out)["items"][0]["kind"])

# %%
code, out = run("report", "--format", "csv", "--samples", "2")
print("\n".join(out.splitlines()[:4]))
