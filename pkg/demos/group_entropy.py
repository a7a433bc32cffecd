"""Entropy of two random cosets in S3.

Pick a uniformly random permutation of three points and report which left coset
of two different transposition subgroups it lies in.  Each coordinate is then
uniform on three cosets, the pair is uniform on six outcomes, and the entropy
vector is the vector of subgroup indices on a log scale.
"""

import math

from groupentropy.entropy import (
    characterize,
    common_information,
    entropy_from_characterization,
    induced_joint_distribution,
    mutual_information_ratio,
    oracle_vector,
)
from groupentropy.group import permutation, symmetric

g = symmetric(3)
a = g.generate([g.element(permutation(3, "(12)"))])
b = g.generate([g.element(permutation(3, "(13)"))])
c = characterize(g, a, b)

v = entropy_from_characterization(c)
print("coset indices:", v.as_dict())
print("entropies in bits:", [round(v.bits(m), 6) for m in (1, 2, 3)])

# the same numbers straight from the joint distribution of the two cosets
d = induced_joint_distribution(c)
print("distribution oracle:", [round(x, 6) for x in oracle_vector(d)])

mi = mutual_information_ratio(v, 1, 2)
ci = common_information(d)
print(f"I(X1;X2) = log2({mi}) = {math.log2(mi):.6f} bits")
print(f"common part: {ci.components} component(s), {ci.entropy_bits:.6f} bits")
print("the two coset variables share information but have no common part")
