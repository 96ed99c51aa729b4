"""Shared fixtures: the four-clause example formula, a hand-built shared-node
refutation of it, and the seeded random corpus swept once per session."""
import itertools
import time

import pytest

from proofsat import (
    Clause,
    Formula,
    InvariantViolation,
    RefutationGraph,
    SolverConfig,
    brute_force_sat,
    check_refutation,
    export_trace,
    gen_random_kcnf,
    init_refutation,
    parse_trace,
    solve,
    verify_model,
    write_dimacs,
)
from proofsat import cli as proofsat_cli
from proofsat.engine import MODE_DLL, MODE_SSS, MODE_TAE


def make_base_formula() -> Formula:
    """(1 2)(-2 3)(-2 -3)(-1 2) over four declared variables; variable 4
    never occurs.  Unsatisfiable: clauses 2 and 3 force -2, clauses 1 and 4
    then clash on variable 1."""
    formula = Formula(4)
    for lits in [(1, 2), (-2, 3), (-2, -3), (-1, 2)]:
        formula.add_clause(Clause(lits))
    return formula


@pytest.fixture
def base_formula() -> Formula:
    return make_base_formula()


def make_shared_node_refutation(formula: Formula) -> RefutationGraph:
    """A four-resolvent refutation of the base formula in which the (-2)
    node is consumed twice, so the derivation is a DAG rather than a tree:
    5=(-2) from 2,3; 6=(1) from 1,5; 7=(-1) from 4,5; 8=() from 6,7."""
    graph = init_refutation(formula)
    graph.add_node(2, 3, 3)  # 5: (-2)
    graph.add_node(1, 5, 2)  # 6: (1)
    graph.add_node(4, 5, 2)  # 7: (-1)
    graph.add_node(6, 7, 1)  # 8: ()
    return graph


# ---------------------------------------------------------------------------
# Corpus sweep, computed once per session and shared by the property and
# acceptance tests.

CORPUS_SIZE = 500

_SSS_COMBOS = list(itertools.product((False, True), repeat=4))  # bcp,ncb,cdb,ccr


def corpus_formula(seed: int) -> Formula:
    n = 4 + seed % 9  # 4..12
    return gen_random_kcnf(n, 4 * n, 3, seed)


def _sss_label(bcp, ncb, cdb, ccr):
    label = "sss"
    for on, tag in ((bcp, "bcp"), (ncb, "ncb"), (cdb, "cdb"), (ccr, "ccr")):
        if on:
            label += "+" + tag
    return label


class SweepRecord(dict):
    """Plain dict subclass so failures print the whole record."""


@pytest.fixture(scope="session")
def sweep(tmp_path_factory):
    """Run the whole corpus under every configuration, with debug checks on,
    and collect compact per-run records plus wall-clock totals.

    Per record: seed, label, mode, ccr flag, verdict, oracle verdict,
    decisions, final_proof_size, and for satisfiable runs whether the model
    verifies, for unsatisfiable solver-graph runs whether the exported trace
    passes the CLI checker and whether parsing the trace back reproduces the
    exact graph and check report.
    """
    workdir = tmp_path_factory.mktemp("sweep")
    cnf_path = workdir / "formula.cnf"
    trace_path = workdir / "proof.trace"
    records = []
    violations = []
    start = time.perf_counter()
    for seed in range(CORPUS_SIZE):
        formula = corpus_formula(seed)
        oracle_verdict = "SAT" if brute_force_sat(formula) is not None else "UNSAT"
        cnf_written = False
        configs = [
            (
                _sss_label(bcp, ncb, cdb, ccr),
                SolverConfig(
                    bcp=bcp, ncb=ncb, cdb_1uip=cdb, ccr=ccr, debug_checks=True
                ),
            )
            for bcp, ncb, cdb, ccr in _SSS_COMBOS
        ]
        configs.append(("tae", SolverConfig(mode=MODE_TAE, debug_checks=True)))
        configs.append(("dll_strict", SolverConfig(mode=MODE_DLL, debug_checks=True)))
        for label, config in configs:
            record = SweepRecord(
                seed=seed,
                label=label,
                mode=config.mode,
                ccr=config.ccr,
                oracle=oracle_verdict,
            )
            try:
                outcome = solve(formula, config)
            except InvariantViolation as exc:
                violations.append("seed %d %s: %s" % (seed, label, exc))
                records.append(record)
                continue
            record["verdict"] = outcome.verdict
            record["decisions"] = outcome.stats.decisions
            record["final_proof_size"] = outcome.stats.final_proof_size
            if outcome.verdict == "SAT":
                record["model_ok"] = verify_model(formula, outcome.model)
            elif outcome.proof is not None:
                report = check_refutation(outcome.proof, formula)
                record["valid"] = report.valid
                record["complete"] = report.complete
                record["tree_like"] = report.tree_like
                record["proof_size"] = report.size
                if not cnf_written:
                    cnf_path.write_text(write_dimacs(formula))
                    cnf_written = True
                trace = export_trace(outcome.proof)
                trace_path.write_text(trace)
                record["check_exit"] = proofsat_cli.main(
                    ["check", str(cnf_path), str(trace_path)]
                )
                reparsed = parse_trace(trace, formula)
                record["roundtrip_equal"] = reparsed == outcome.proof
                record["roundtrip_same_report"] = (
                    check_refutation(reparsed, formula) == report
                )
            records.append(record)
    elapsed = time.perf_counter() - start
    return {"records": records, "violations": violations, "elapsed": elapsed}
