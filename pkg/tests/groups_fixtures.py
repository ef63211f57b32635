"""Small permutation groups used across the tests."""

from bct import groups as gr

C3 = [[1, 2, 0]]
C6 = [[1, 2, 3, 4, 5, 0]]
S3 = [[1, 0, 2], [1, 2, 0]]
S4 = [[1, 0, 2, 3], [1, 2, 3, 0]]
A4 = [[1, 2, 0, 3], [0, 2, 3, 1]]
V4_IN_S4 = [[1, 0, 3, 2], [2, 3, 0, 1]]
D12 = [[1, 2, 3, 4, 5, 0], [0, 5, 4, 3, 2, 1]]


def group(gens):
    return gr.build_group(generators=gens)


def sub(g, gens):
    return gr.closure(g, [g.perms.index(tuple(x)) for x in gens])
