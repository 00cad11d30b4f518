from mucut import (Jet, SymbolVariant, extends_smoothly, odd_monomials,
                   pullback_jet, pushforward_symbol)

# z^2, |z|^2 and conj(z)^2 written as exponent pairs (k, l)
z2 = Jet(2, {(2, 0): 1})
r2 = Jet(2, {(1, 1): 1})
zbar2 = Jet(2, {(0, 2): 1})

# a jet descends to the cut cones exactly when every monomial has even
# total degree
mixed = Jet(3, {(1, 1): 1, (0, 3): 2, (1, 0): -1})
print("mixed jet extends:", extends_smoothly(mixed))
print("offending monomials:", odd_monomials(mixed))
print("|z|^2 extends:", extends_smoothly(r2))

for variant in (SymbolVariant.M_PLUS_EVEN, SymbolVariant.M_PLUS_PLUS):
    print()
    print("variant", variant.value)
    for name, jet in [("z^2", z2), ("|z|^2", r2), ("conj(z)^2", zbar2)]:
        print(f"  {name:10s} -> {pullback_jet(jet, variant)}")

# pushforward inverts the pullback on polynomial symbols
combo = z2 + r2 * 3 + zbar2
sigma = pullback_jet(combo, SymbolVariant.M_PLUS_EVEN)
back = pushforward_symbol(sigma, SymbolVariant.M_PLUS_EVEN)
print()
print("combined jet:", combo)
print("its symbol:  ", sigma)
print("round trip equal:", back == combo)
