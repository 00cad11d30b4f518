import mucut
from mucut import (LaurentSymbol, Parity, SymbolVariant,
                   build_commuting_from_symbol, compose, exactness_witness,
                   leading_symbol, make_generator, poisson_bracket,
                   symbol_tower)

# Every operator in the commutant has a leading symbol: a Laurent
# polynomial in the angle with a radial power attached.  D maps to s,
# Raise to s*e^{it}, Lower to s*e^{-it}.

D = make_generator("D")
Raise = make_generator("Raise")
Lower = make_generator("Lower")

print("sigma(D)     =", leading_symbol(D))
print("sigma(Raise) =", leading_symbol(Raise))
print("sigma(Lower) =", leading_symbol(Lower))

# products multiply on the nose
ab = compose(Raise, Lower)
print()
print("sigma(Raise Lower) =", leading_symbol(ab))
print("product rule exact:",
      leading_symbol(ab) == leading_symbol(Raise) * leading_symbol(Lower))

# commutators drop one order and land on -i times the Poisson bracket
lie = mucut.commutator(D, Raise)
pb = poisson_bracket(leading_symbol(D), leading_symbol(Raise))
minus_i = mucut.GaussianRational(0, -1)
print()
print("sigma([D, Raise]) =", leading_symbol(lie))
print("{s, s e^it}       =", pb)
print("bracket rule exact:", leading_symbol(lie) == minus_i * pb)

# Admissible symbols lift back to commuting operators.  The lift of the
# symbol s^2 e^{-2it} is Lower squared, not some other representative.
sq = LaurentSymbol.homogeneous(2, {-2: 1})
lifted = build_commuting_from_symbol(sq, Parity.FULL)
print()
print("lift of s^2 e^{-2it} =", lifted)
print("equals Lower^2:", lifted == compose(Lower, Lower))

# Peeling leading symbols repeatedly gives a finite tower that rebuilds
# the operator exactly.
member = compose(Raise, compose(Lower, D))
tower = symbol_tower(member)
print()
print("tower of Raise Lower D:")
for order, sigma in tower:
    print(f"  order {order}: {sigma}")

rebuilt = mucut.CanonicalOperator({})
for order, sigma in tower:
    rebuilt = rebuilt + build_commuting_from_symbol(sigma, Parity.FULL)
print("tower rebuild matches:", rebuilt == member)

# the witness triple spells out one peeling step
order, sigma, remainder = exactness_witness(member)
print()
print("witness: order", order, "symbol", sigma)
print("remainder order:", remainder.order)

# On the even-mode side only even angular modes are admissible.
even_variant = SymbolVariant.M_PLUS_EVEN
print()
print("s e^{it} admissible on even cone:",
      mucut.is_admissible(leading_symbol(Raise), even_variant))
print("s e^{2it} admissible on even cone:",
      mucut.is_admissible(leading_symbol(make_generator("RaiseEven")),
                          even_variant))
