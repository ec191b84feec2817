"""Clifford circuit canonicalization into -H-C-CZ-P-H-P-CZ-C- and LNN compilation."""

from ._core import (
    Circuit,
    ParseError,
    StagedForm,
    Tableau,
    canonicalize,
    compile_lnn,
    decompose_11,
    equal,
    extract,
    fold,
    fold_to_8,
    interval_schedule,
    random_circuit,
    reexpress,
    synth_cnot,
    synth_cz,
    synth_czhat_lnn,
    table1_csv,
)

__all__ = [
    "Circuit",
    "ParseError",
    "StagedForm",
    "Tableau",
    "canonicalize",
    "compile_lnn",
    "decompose_11",
    "equal",
    "extract",
    "fold",
    "fold_to_8",
    "interval_schedule",
    "random_circuit",
    "reexpress",
    "synth_cnot",
    "synth_cz",
    "synth_czhat_lnn",
    "table1_csv",
]
