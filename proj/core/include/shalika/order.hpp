#pragma once

#include <array>
#include <optional>

#include "shalika/matrix.hpp"

namespace shalika {

using ValGrid = std::array<std::array<int, 4>, 4>;

// Hereditary O_F-order in Mat(4, F) presented as an entry-valuation grid:
// a matrix m belongs to the order iff v(m_ij) >= L[i][j]. Multiplicative
// closure (min-plus triangle inequality) and admissibility of the identity
// are validated at construction. Radical powers P^n follow the grid
// recursion P^{n+e} = p * P^n.
class OrderSpec {
public:
    OrderSpec(ValGrid order_grid, ValGrid radical_grid, int period);

    static OrderSpec minimal_order();       // I_m (Iwahori), period 4
    static OrderSpec middle_order();        // A_4 of the 2+2 partition, period 2
    static OrderSpec maximal_order_conj();  // A_M = t Mat(4,O) t^{-1}, period 1

    const ValGrid& grid() const { return L_; }
    const ValGrid& radical() const { return R_; }
    int period() const { return e_; }

    // grid of P^n for any integer n (negative allowed)
    ValGrid radical_power(int n) const;

    bool contains(const Mat4& m) const;
    // largest n >= 0 with m in U^n (U^0 = order units, U^n = 1 + P^n);
    // nullopt when m is not a unit of the order.
    std::optional<int> u_level(const Mat4& m, int max_level = 16) const;

    // m - I in P^n?
    bool in_unit_group_level(const Mat4& m, int n) const;

private:
    ValGrid L_, R_;
    int e_;
    std::array<ValGrid, 4> small_;  // P^0 .. P^{e-1}
};

}  // namespace shalika
