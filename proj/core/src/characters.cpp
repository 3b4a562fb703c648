#include "shalika/characters.hpp"

namespace shalika {

Padic teichmuller(uint32_t p, uint32_t r, int prec) {
    r %= p;
    if (r == 0) throw domain_error("teichmuller of 0");
    if (prec < 0) prec = Padic::max_digits(p);
    if (prec > Padic::max_digits(p)) prec = Padic::max_digits(p);
    uint64_t pk = detail::pow_u64(p, static_cast<unsigned>(prec));
    // Hensel: x <- x^p converges to the root of unity congruent to r.
    uint64_t x = r;
    for (int i = 0; i < prec + 1; ++i) {
        uint64_t y = 1, b = x;
        uint32_t e = p;
        while (e) {
            if (e & 1) y = detail::mul_mod(y, b, pk);
            b = detail::mul_mod(b, b, pk);
            e >>= 1;
        }
        if (y == x) break;
        x = y;
    }
    return Padic::from_unit(p, x, 0, prec);
}

uint32_t teich_residue(const Padic& x) {
    if (x.is_zero()) throw domain_error("teich_residue of zero");
    return static_cast<uint32_t>(x.mantissa() % x.prime());
}

TameChar TameChar::trivial(uint32_t p) {
    return TameChar{MultChar{ResidueField::prime_field(p), 0}, RootOfUnity{1, 0}};
}

RootOfUnity TameChar::value_root(const Padic& x) const {
    if (x.is_zero()) throw domain_error("tame character at 0");
    int32_t v = x.val();
    uint32_t r = teich_residue(x);
    RootOfUnity out = at_pi.pow(v);
    if (r != 1 && !mu.is_trivial()) out = out * mu.value_root(r);
    return out;
}

TameChar TameChar::power(uint64_t k) const {
    return TameChar{mu.power(k), at_pi.pow(static_cast<long long>(k))};
}

TameChar TameChar::times(const TameChar& o) const {
    return TameChar{mu.times(o.mu), at_pi * o.at_pi};
}

Cyc tame_eval(const TameChar& eta, const Padic& x) { return eta(x); }

}  // namespace shalika
