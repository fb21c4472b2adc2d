"""Worked radix-3 example: M=3, K=2, every unitary the 3x3 DFT, identity
permutation.  Symbols are written as powers of w = exp(2 pi i / 3)."""

D0 = [0, 1, 2, 0, 1, 2, 0, 1, 2]
D1 = [0, 0, 0, 1, 1, 1, 2, 2, 2]

# exponent tables as printed
MU_PRINTED = [
    [[0, 0, 0, 0, 1, 2, 0, 2, 1], [0, 0, 0, 1, 2, 0, 2, 1, 0], [0, 0, 0, 2, 0, 1, 1, 0, 2]],
    [[0, 1, 2, 0, 2, 1, 0, 0, 0], [0, 1, 2, 1, 0, 2, 2, 2, 2], [0, 1, 2, 2, 1, 0, 1, 1, 1]],
    [[0, 2, 1, 0, 0, 0, 0, 1, 2], [0, 1, 2, 1, 1, 1, 2, 0, 1], [0, 2, 1, 2, 2, 2, 1, 2, 0]],
]
# the printed (2, 1) entry disagrees with its own formula
MU_PRINTED_TYPOS = {(2, 1): [0, 2, 1, 1, 1, 1, 2, 0, 1]}

# sequence sets as printed; "-1" marks symbols the formula gives as w^2
SETS_PRINTED = [
    [["1", "1", "1", "1", "w", "w2", "1", "w2", "w"],
     ["1", "1", "1", "w", "w2", "1", "w2", "w", "1"],
     ["1", "1", "1", "w2", "1", "w", "w", "1", "w2"]],
    [["1", "w", "w2", "1", "w2", "w", "1", "1", "1"],
     ["1", "w", "w2", "w", "1", "w2", "-1", "-1", "-1"],
     ["1", "w", "w2", "w2", "w", "1", "w", "w", "w"]],
    [["1", "w2", "w", "1", "1", "1", "1", "w", "w2"],
     ["1", "w2", "w", "w", "w", "w", "w2", "1", "w"],
     ["1", "w2", "w", "-1", "-1", "-1", "w", "w2", "1"]],
]
SYMBOL_EXP = {"1": 0, "w": 1, "w2": 2}

# matched filter of the example: complemented stage delays in signal-flow order
FILTER_DELAYS = [(2, 1, 0), (6, 3, 0)]


def mu(r: int, s: int, n: int) -> int:
    d0, d1 = D0[n], D1[n]
    return (r * d0 + d0 * d1 + d1 * s) % 3
