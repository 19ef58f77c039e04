"""Parse, elaborate and interpret TLSF specifications."""

from ._tlsf import (
    BasicSpec,
    Formula,
    TlsfError,
    check_machine_mealy,
    elaborate,
    eval_lasso,
    interpret,
    parse_formula,
    print_basic,
    run_cli,
    transforms,
)

__all__ = [
    "BasicSpec",
    "Formula",
    "TlsfError",
    "check_machine_mealy",
    "elaborate",
    "eval_lasso",
    "interpret",
    "parse_formula",
    "print_basic",
    "run_cli",
    "transforms",
]
