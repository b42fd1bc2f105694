"""Exact graded homological algebra: Ext, Hochschild cohomology, Azumaya and Morita checks."""

from ._hhalg import (
    BudgetExceeded,
    Definition,
    InputError,
    Table,
    cokernel,
    parse_definition,
    run,
    smith_normal_form,
)


def load(path):
    """Parses a definition file from disk."""
    with open(path, encoding="utf-8") as f:
        return parse_definition(f.read())


__all__ = [
    "BudgetExceeded",
    "Definition",
    "InputError",
    "Table",
    "cokernel",
    "load",
    "parse_definition",
    "run",
    "smith_normal_form",
]
