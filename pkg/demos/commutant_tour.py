"""
A tour of the projector commutant in shift normal form
======================================================

Operators here are finite sums of terms (k, q): shift the mode index by k
and multiply by the polynomial q evaluated at the original index.  The
interesting question is which of them commute with the hard mode cutoff.
"""

from mucut import (CanonicalOperator, Parity, Polynomial, adjoint,
                   commutant_factorize, commutator, compose, make_generator,
                   raising_product, recompose_factors, required_vanishing,
                   szego_commutes, szego_commutator_entries,
                   verify_pk_identity)

D = make_generator("D")
Raise = make_generator("Raise")
Lower = make_generator("Lower")

print("D      =", D)
print("Raise  =", Raise)
print("Lower  =", Lower)

# The raising generator to the k-th power carries the falling-factorial
# style product (x+1)...(x+k).  Checked exactly, no floats involved.
print()
for k in (1, 2, 3):
    print(f"Raise^{k} coefficient:", raising_product(k),
          "identity holds:", verify_pk_identity(k))

# Commutators close up nicely: [D, Raise] = Raise, [D, Lower] = -Lower.
print()
print("[D, Raise] =", commutator(D, Raise))
print("[D, Lower] =", commutator(Lower, D))
print("Raise*Lower =", compose(Raise, Lower))
print("Lower*Raise =", compose(Lower, Raise))

# What does it take for a single term to commute with the cutoff?  A
# downward shift by k must kill the modes that would leak across zero.
print()
for k in (-2, -1, 1, 2):
    roots = required_vanishing(k, Parity.FULL)
    print(f"shift {k:+d} needs q = 0 on {sorted(roots)}")

# The plain phase factor fails the criterion, and the commutator entries
# say exactly where the leak happens.
phase = CanonicalOperator({1: Polynomial([1])})
print()
print("pure phase commutes:", szego_commutes(phase))
for row, col, value in szego_commutator_entries(phase):
    print(f"leak at ({row}, {col}): {value}")

# Under the even-mode cutoff the roles shift: the reversed even lowering
# term {-2: x-2} looks symmetric but does not commute.
reversed_even = CanonicalOperator({-2: Polynomial([-2, 1])})
print()
print("reversed even term commutes (even):",
      szego_commutes(reversed_even, Parity.EVEN))
for row, col, value in szego_commutator_entries(reversed_even, Parity.EVEN):
    print(f"leak at ({row}, {col}): {value}")

# Members of the commutant factor through canonical divisors, one per
# shift, and the factorization is exactly invertible.
member = compose(Raise, compose(Raise, D))
factors = commutant_factorize(member)
print()
print("member =", member)
for k, cofactor in sorted(factors.items()):
    print(f"  shift {k:+d} cofactor {cofactor}")
print("recomposition matches:",
      recompose_factors(factors, Parity.FULL) == member)

# Adjoints stay inside the commutant: Raise* = Lower up to the index shift.
print()
print("Raise* =", adjoint(Raise))
print("Raise* == Lower:", adjoint(Raise) == Lower)
