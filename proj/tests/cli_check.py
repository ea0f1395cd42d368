"""CLI contract checks: worked examples, purity, exit codes."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile

CLI = os.environ["BTLRANK_CLI"]


def run(*args, expect=0):
    result = subprocess.run([CLI, *args], capture_output=True, text=True)
    if result.returncode != expect:
        raise AssertionError(
            f"{args}: exit {result.returncode} != {expect}\n{result.stderr}"
        )
    return result


def main():
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="btlrank_cli_"))

    # A symmetric two-item fixture: the pairwise test sits at p ~ 0.5.
    fixture = tmp / "two.csv"
    fixture.write_text("i,j,rep,outcome\n0,1,0,1\n0,1,1,0\n")
    report = json.loads(
        run("test", "pair", "--comparisons", str(fixture), "--i", "0",
            "--j", "1").stdout
    )
    assert abs(report["p_value"] - 0.5) < 1e-9, report
    assert report["statistic"] == 0.0
    assert not report["reject"]

    # Block-design simulation drives the full selection pipeline.
    run("simulate", "--n", "40", "--p", "0.6", "--L", "60", "--seed", "9",
        "--score-blocks", "8x10,32x7.5",
        "--out-comparisons", str(tmp / "blocks.csv"),
        "--out-truth", str(tmp / "truth.json"))
    truth = json.loads((tmp / "truth.json").read_text())
    assert truth["n"] == 40 and truth["L"] == 60
    assert abs(sum(truth["theta_star"])) < 1e-9

    selection = json.loads(
        run("select", "topk", "--comparisons", str(tmp / "blocks.csv"),
            "--p", "0.6", "--k", "8", "--method", "fwer",
            "--bootstrap-draws", "1000", "--seed", "4").stdout
    )
    assert selection["method"] == "fwer"
    assert selection["selected"] == list(range(8)), selection["selected"]

    by = json.loads(
        run("select", "topk", "--comparisons", str(tmp / "blocks.csv"),
            "--p", "0.6", "--k", "8", "--method", "fdr-by",
            "--bootstrap-draws", "1000", "--seed", "4").stdout
    )
    assert by["method"] == "fdr-by"
    assert by["selected"] == list(range(8)), by["selected"]
    # BY consistency: selected = items at or under the realized cutoff.
    flagged = [i for i, p in enumerate(by["p_values"])
               if p <= by["threshold_used"]]
    assert flagged == by["selected"]

    # Score vectors can come from a file; they are centered before use.
    (tmp / "scores.json").write_text("[5.0, 4.0, 3.0, 3.0, 3.0, 3.0]")
    run("simulate", "--n", "6", "--p", "1.0", "--L", "5", "--seed", "2",
        "--scores-file", str(tmp / "scores.json"),
        "--out-comparisons", str(tmp / "file.csv"),
        "--out-truth", str(tmp / "file_truth.json"))
    file_truth = json.loads((tmp / "file_truth.json").read_text())
    assert abs(sum(file_truth["theta_star"])) < 1e-9
    assert file_truth["theta_star"][0] - file_truth["theta_star"][1] == 1.0

    # Experiment harness: long CSV with the documented schema.
    run("experiment", "normality", "--reps", "8", "--n", "25", "--p", "0.5",
        "--L-grid", "10", "--seed", "6", "--threads", "2",
        "--out", str(tmp / "norm.csv"))
    lines = (tmp / "norm.csv").read_text().splitlines()
    assert lines[0] == "setting,rep,metric,value"
    assert len(lines) == 9
    assert all(",qq," in line for line in lines[1:])

    # Usage errors exit 1 with no stack trace.
    bad = subprocess.run([CLI, "estimate"], capture_output=True, text=True)
    assert bad.returncode == 1, bad.returncode

    missing = subprocess.run(
        [CLI, "estimate", "--comparisons", str(tmp / "nope.csv")],
        capture_output=True, text=True)
    assert missing.returncode == 1
    assert json.loads(missing.stderr)["error"]["code"] == "Io"

    print("cli_check: all assertions passed")


if __name__ == "__main__":
    sys.exit(main())
