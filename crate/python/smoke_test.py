#!/usr/bin/env python3
"""Smoke test for the dgcm_py extension module.

Builds nothing itself: it locates the compiled cdylib under target/,
exposes it under the importable name, and drives a few end-to-end checks.
Run `cargo build -p dgcm-py` first (any profile), then `python3
python/smoke_test.py`.
"""

import json
import pathlib
import shutil
import sys
import sysconfig
import tempfile

REPO = pathlib.Path(__file__).resolve().parent.parent


def locate_cdylib() -> pathlib.Path:
    candidates = [
        REPO / "target" / profile / "libdgcm_py.so"
        for profile in ("debug", "release")
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit("libdgcm_py.so not found; run `cargo build -p dgcm-py` first")


def import_module():
    src = locate_cdylib()
    tmp = tempfile.mkdtemp(prefix="dgcm-py-")
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(src, pathlib.Path(tmp) / f"dgcm_py{suffix}")
    # abi3 module: the plain name works too, keep both for safety.
    shutil.copy2(src, pathlib.Path(tmp) / "dgcm_py.so")
    sys.path.insert(0, tmp)
    import dgcm_py

    return dgcm_py


def main() -> None:
    dgcm_py = import_module()

    names = [name for name, _ in dgcm_py.examples()]
    assert "reg-not-par" in names, names
    assert "nonneg-counterexample" in names, names

    # A Cohen-Macaulay witness: regular element that is not a parameter.
    m = dgcm_py.Model.from_example("reg-not-par")
    assert not m.nonnegative
    assert m.amplitude == 1, m.amplitude
    assert m.dim_h0 == 1, m.dim_h0
    assert m.verdict() == "CM", m.verdict()
    cert = json.loads(m.check_cm())
    assert cert["verdict"] == "CM", cert
    inv = json.loads(m.invariants_json())
    assert inv["amp"] == 1 and inv["rgamma_amp"] == 1, inv
    suite = json.loads(m.verify())
    assert suite["all_hold"], suite
    seq = json.loads(m.regular_sequence(sop=False, seed=1, max_tries=64))
    assert len(seq["elements"]) == 1, seq

    # The localization witness: CM locally, NOT_CM at an embedded stratum.
    loc = dgcm_py.Model.from_example("localiz-counterexample")
    assert loc.verdict() == "CM"
    at = json.loads(loc.check_cm_at(["x", "y"]))
    assert at["verdict"] == "NOT_CM", at
    glob = json.loads(loc.check_cm_global())
    assert glob["verdict"] == "NOT_CM", glob
    dual = json.loads(loc.dualizing())
    assert dual["verdict"] == "CM", dual

    # A non-negative model failing the criterion.
    nn = dgcm_py.Model.from_example("nonneg-counterexample")
    assert nn.nonnegative
    assert nn.verdict() == "NOT_CM", nn.verdict()

    # Problem text round-trips through the same constructor the CLI uses.
    custom = dgcm_py.Model.from_problem(
        json.dumps(
            {
                "variables": ["x"],
                "ideal": ["x^2"],
                "construction": {"type": "koszul", "elements": ["x"]},
            }
        )
    )
    assert custom.verdict() == "CM"
    assert custom.amplitude == 1

    # Errors surface as ValueError with the kernel's message.
    try:
        dgcm_py.Model.from_problem("{ not json")
    except ValueError as e:
        assert "parse error" in str(e), e
    else:
        sys.exit("malformed problem text did not raise")

    print("smoke test passed: 5 models exercised through the Python bindings")


if __name__ == "__main__":
    main()
