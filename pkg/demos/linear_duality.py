"""Subspace characterizations and their orthogonal complements.

For subspaces W_i of F_p^m the coset variables give index p^(m - dim W_a).  The
rank vector of the complements is the same function, which an exhaustive pass
over all triples of subspaces of F_2^4 confirms.
"""

import itertools

from groupentropy.linear import (
    LinearCharacterization,
    dual_rank_entropy,
    entropy_from_linear,
    enumerate_subspaces,
)

subs = enumerate_subspaces(2, 4)
print(f"F_2^4 has {len(subs)} subspaces")

mismatches = 0
for tup in itertools.product(subs, repeat=3):
    c = LinearCharacterization(2, 4, tup)
    mismatches += entropy_from_linear(c) != dual_rank_entropy(c)
print(f"{len(subs) ** 3} triples checked, {mismatches} mismatches")

example = LinearCharacterization(2, 4, (subs[3], subs[20], subs[40]))
print("example indices:", entropy_from_linear(example).indices)
