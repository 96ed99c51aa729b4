"""Exhaustive truth-table SAT oracle, independent of the search engine.

Each variable is expanded to a 2^n-bit integer whose bit i holds the
variable's value in assignment number i; clause and formula evaluation
are then bitwise OR/AND over those masks.  Assignment numbers are read
as big-endian variable vectors (variable 1 is the most significant bit),
so the lowest set bit of the formula mask is the lexicographically first
model under the ordering False < True.
"""
from __future__ import annotations

from typing import Dict, Optional

from .cnf import Formula, Variable

MAX_ORACLE_VARS = 24


def _variable_masks(n: int) -> Dict[int, int]:
    total_bits = 1 << n
    full = (1 << total_bits) - 1
    masks: Dict[int, int] = {}
    for var in range(1, n + 1):
        half = 1 << (n - var)
        period = half << 1
        block = ((1 << half) - 1) << half
        # The mask repeats `block` every `period` bits across the table.
        # Start with one copy and double the covered span until it fills
        # the table: log2(total/period) big-integer ORs instead of one OR
        # per copy.
        pattern = block
        span = period
        while span < total_bits:
            pattern |= pattern << span
            span <<= 1
        masks[var] = pattern & full
    return masks


def brute_force_sat(formula: Formula) -> Optional[Dict[Variable, bool]]:
    """Return the lexicographically first model, or None when unsatisfiable.

    Guarded to formulas of at most MAX_ORACLE_VARS variables; the table
    grows as 2^n bits per variable.
    """
    n = formula.num_vars
    if n > MAX_ORACLE_VARS:
        raise ValueError(
            "oracle limited to %d variables, formula declares %d"
            % (MAX_ORACLE_VARS, n)
        )
    total_bits = 1 << n
    full = (1 << total_bits) - 1
    masks = _variable_masks(n)
    formula_mask = full
    for cid in formula.ids():
        clause_mask = 0
        for lit in formula.clause(cid):
            var_mask = masks[abs(lit)]
            clause_mask |= var_mask if lit > 0 else (full & ~var_mask)
        formula_mask &= clause_mask
        if formula_mask == 0:
            return None
    index = (formula_mask & -formula_mask).bit_length() - 1
    return {
        var: bool((index >> (n - var)) & 1) for var in range(1, n + 1)
    }
