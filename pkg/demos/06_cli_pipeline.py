"""Driving the batch CLI from Python.

`schreg <command> --config file.json` is a thin wrapper around
schreg.cli.run; both validate the config against the packaged JSON schema,
write artifacts, and finish with a manifest listing each file's sha256.
Outputs are byte-reproducible, so the hashes double as regression anchors.
"""
import json
import pathlib
import tempfile

from schreg import cli

config = {
    "command": "bands",
    "potential": {"variant": "periodic_square", "delta": 0.5},
    "params": {"period": 1.0, "lambda_window": [-2.0, 40.0],
               "resolution": 512},
}

with tempfile.TemporaryDirectory() as out:
    code = cli.run(config, out_dir=out)
    print(f"exit code: {code}\n")
    root = pathlib.Path(out)
    manifest = json.loads((root / "manifest.json").read_text())
    print("manifest:")
    for rec in manifest["files"]:
        print(f"  {rec['name']:<22} {rec['bytes']:>6} bytes  {rec['sha256'][:16]}…")
    doc = json.loads((root / "bands.json").read_text())
    print(f"\nlowest eigenvalue : {doc['lowest_eigenvalue']:.9f}")
    print(f"first band        : {doc['bands'][0]}")

bad = dict(config, typo_field=True)
print(f"\nan unknown field is a config error (exit 2): {cli.run(bad, out_dir=tempfile.mkdtemp())}")
