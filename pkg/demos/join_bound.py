"""Outer bound from a join extension, and an explicit adhesive extension.

Adding a third variable equal to the pair (X1, X2) and asking only that the
three-variable vector be a polymatroid gives back exactly the two-variable
polymatroid cone after projecting the new coordinates away.

The second half builds the group behind an adhesive extension of a cyclic
subgroup of S3 and checks every defining property exactly.
"""

from groupentropy.cone import equivalent, gamma
from groupentropy.entropy import characterize, entropy_from_characterization
from groupentropy.extension import (
    adhesive_group_extension,
    bound_by_extension,
    join_extension_constraints,
)
from groupentropy.group import permutation, symmetric

spec = join_extension_constraints(2, 1, 2)
print("extension constraints:")
print(spec.constraints.to_text())

bound = bound_by_extension(2, spec, gamma(3))
print("projected bound:")
print(bound.to_text())
print("equivalent to the two-variable polymatroid cone:", equivalent(bound, gamma(2)))

g = symmetric(3)
rot = g.generate([g.element(permutation(3, "(123)"))])
c = characterize(g, rot)
witness, ext = adhesive_group_extension(c, 1)
print(f"\nadhesive extension of <(123)> in S3: |K| = {witness.K.order}")
print("all checks pass:", witness.ok)
print("extended entropy indices:", entropy_from_characterization(ext).indices)
