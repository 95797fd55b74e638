class InvariantViolation(ValueError):
    """An input breaks a structural invariant (bad dimensions, impossible
    numerical invariants, subgroup that is not a subgroup, ...).

    The message always names the violated invariant; the CLI maps this
    exception to exit code 65.
    """
