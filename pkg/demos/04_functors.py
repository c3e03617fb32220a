"""
Spaces and operators are the same thing
=======================================

Send every partition to its upper operator and back, then check the
functor laws over all maps between small spaces.
"""

from roughcat import functor_F, functor_F_prime, space_corpus, verify_functor_laws, verify_roundtrips
from roughcat.functors import FUNCTORS

corpus = space_corpus(3)
print(f"{len(corpus.spaces)} spaces, {len(corpus.arrows)} relation-preserving maps")

for line in verify_roundtrips(corpus).lines():
    print(line)

S = corpus.spaces[-1]
print(f"\n{S} -> {functor_F_prime(functor_F(S))}")

print()
for name in FUNCTORS:
    r = verify_functor_laws(name, corpus)
    print(f"{name:10s} identity={r.identity_law} composition={r.composition_law}")
