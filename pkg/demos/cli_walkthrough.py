"""Drive the command line interface in-process.

Subcommands accept inline JSON, a file path, or '-' for stdin, and
signal problems through the exit code: 1 for malformed input, 2 for a
well-formed request outside the domain, 3 for a failed selftest.
"""

import json

from mucut.cli import main

RAISE = json.dumps({"terms": [
    {"k": 1, "poly": [{"re": "1", "im": "0"}, {"re": "1", "im": "0"}]}]})
PHASE = json.dumps({"terms": [
    {"k": 1, "poly": [{"re": "1", "im": "0"}]}]})
DIAG = json.dumps({"terms": [
    {"k": 0, "poly": [{"re": "0", "im": "0"}, {"re": "1", "im": "0"}]}]})


def run(*argv):
    print("$ mucut", " ".join(argv))
    code = main(list(argv))
    print(f"(exit {code})")
    print()
    return code


# the raising generator commutes, the bare phase does not
run("commutant-check", RAISE)
run("commutant-check", PHASE)

# factorization through the canonical divisors
run("factorize", RAISE)

# the phase operator is outside the commutant; exit code 2 comes with a
# machine readable error object on stdout
run("factorize", PHASE)

# falling-factorial identity for the first few raising powers
run("identity-pk", "--max-k", "4")

# small spectrum of the mode-number operator
run("spectrum", DIAG, "--window", "8")

# cones: build, cut, compare
run("cone-lens", "--p", "2", "--q", "1")
run("cone-cut", '{"sphere": true}', "--normal", "3", "-2")
run("cone-equiv",
    '{"first": {"lens": [1, 2]}, "second": {"sphere": true}}')

# the deterministic selftest, table flavor
run("selftest", "--seed", "7", "--format", "table")
