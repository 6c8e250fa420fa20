"""The full command-line pipeline in one script, run against a temp directory.

gen -> build-sa -> resolvent -> verify, then a deliberately tampered
extension file to show the load-time gate and the red checks behind it.
"""

import json
import tempfile
from pathlib import Path

from symext.cli import main
from symext.serialize import json_dump

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    op, ext, chain = tmp / "op.json", tmp / "ext.json", tmp / "chain.json"

    code = main(["gen", "--dim", "4", "--defect", "2", "--seed", "5", "-o", str(op)])
    print(f"gen: exit {code}", flush=True)

    code = main(["build-sa", str(op), "--z", "0,1", "--double",
                 "-o", str(ext), "--chain", str(chain)])
    steps = json.loads(chain.read_text())["steps"]
    print(f"build-sa: exit {code}, {len(steps)} chain steps", flush=True)

    report = tmp / "res.json"
    code = main(["resolvent", str(op), str(ext), "--lambda0", "0,1",
                 "--csv", str(tmp / "grid.csv"), "-o", str(report)])
    doc = json.loads(report.read_text())
    print(f"resolvent: exit {code}, {len(doc['points'])} grid points, "
          f"max deviation {doc['max_deviation']:.2e}, agree = {doc['agree']}", flush=True)

    vrep = tmp / "verify.json"
    code = main(["verify", str(op), str(ext), "--lambda0", "0,1", "-o", str(vrep)])
    doc = json.loads(vrep.read_text())
    print(f"verify: exit {code}, all_passed = {doc['all_passed']}", flush=True)
    for c in doc["checks"]:
        flag = "skip" if c["skipped"] else ("ok" if c["passed"] else "FAIL")
        print(f"  {c['name']:<28} {flag:<5} max_error {c['max_error']:.2e}", flush=True)

    # tamper with the stored extension: the default tolerance refuses to load
    # it, and a loosened tolerance loads it but turns the identity checks red
    doc = json.loads(ext.read_text())
    doc["extension"]["action"][0][1][0] += 5e-4
    doc["extension"]["action"][1][0][0] += 5e-4
    ext.write_text(json_dump(doc))
    code = main(["verify", str(op), str(ext), "--lambda0", "0,1", "-o", str(vrep)])
    print(f"\ntampered file, default tol: exit {code} (rejected at load)", flush=True)
    code = main(["verify", str(op), str(ext), "--lambda0", "0,1", "--tol", "1e-3",
                 "-o", str(vrep)])
    doc = json.loads(vrep.read_text())
    red = [c["name"] for c in doc["checks"] if not c["passed"]]
    print(f"tampered file, tol 1e-3: exit {code}, all_passed = {doc['all_passed']}, "
          f"red checks: {', '.join(red)}", flush=True)
