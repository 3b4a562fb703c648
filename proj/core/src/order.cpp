#include "shalika/order.hpp"

namespace shalika {

namespace {
ValGrid minplus(const ValGrid& A, const ValGrid& B) {
    ValGrid C{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int best = A[i][0] + B[0][j];
            for (int k = 1; k < 4; ++k) best = std::min(best, A[i][k] + B[k][j]);
            C[i][j] = best;
        }
    return C;
}

ValGrid shifted(const ValGrid& A, int s) {
    ValGrid C = A;
    for (auto& row : C)
        for (auto& x : row) x += s;
    return C;
}
}  // namespace

OrderSpec::OrderSpec(ValGrid order_grid, ValGrid radical_grid, int period)
    : L_(order_grid), R_(radical_grid), e_(period) {
    for (int i = 0; i < 4; ++i) {
        if (L_[i][i] > 0) throw domain_error("order grid rejects the identity");
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                if (L_[i][k] > L_[i][j] + L_[j][k])
                    throw domain_error("order grid is not multiplicatively closed");
    }
    // validate the radical recursion P^e = p * order
    small_[0] = L_;
    ValGrid pw = R_;
    for (int n = 1; n < e_ && n < 4; ++n) {
        small_[n] = pw;
        pw = minplus(pw, R_);
    }
    ValGrid expect = shifted(L_, 1);
    if (pw != expect) throw domain_error("radical grid does not satisfy P^e = pA");
}

ValGrid OrderSpec::radical_power(int n) const {
    int q = n >= 0 ? n / e_ : -((-n + e_ - 1) / e_);
    int s = n - q * e_;  // 0 <= s < e
    return shifted(small_[s], q);
}

OrderSpec OrderSpec::minimal_order() {
    ValGrid L{}, R{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            L[i][j] = i > j ? 1 : 0;
            R[i][j] = i >= j ? 1 : 0;
        }
    return OrderSpec(L, R, 4);
}

OrderSpec OrderSpec::middle_order() {
    ValGrid L = {{{0, 0, -1, -1}, {1, 0, 0, -1}, {1, 1, 0, 0}, {2, 1, 1, 0}}};
    ValGrid R = {{{1, 0, 0, -1}, {1, 1, 0, 0}, {2, 1, 1, 0}, {2, 2, 1, 1}}};
    return OrderSpec(L, R, 2);
}

OrderSpec OrderSpec::maximal_order_conj() {
    ValGrid L{}, R{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            L[i][j] = i - j;
            R[i][j] = i - j + 1;
        }
    return OrderSpec(L, R, 1);
}

bool OrderSpec::contains(const Mat4& m) const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!val_ge(m(i, j), L_[i][j])) return false;
    return true;
}

bool OrderSpec::in_unit_group_level(const Mat4& m, int n) const {
    ValGrid G = radical_power(n);
    uint32_t p = m.prime();
    Padic one = Padic::from_int(p, 1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Padic d = (i == j) ? m(i, j) - one : m(i, j);
            if (!val_ge(d, G[i][j])) return false;
        }
    return true;
}

std::optional<int> OrderSpec::u_level(const Mat4& m, int max_level) const {
    if (!contains(m)) return std::nullopt;
    Padic d = m.det();
    if (d.is_zero() || d.val() != 0) return std::nullopt;
    // units of the order: both m and m^{-1} in the order
    if (!contains(m.inverse())) return std::nullopt;
    int lvl = 0;
    for (int n = 1; n <= max_level; ++n) {
        if (in_unit_group_level(m, n))
            lvl = n;
        else
            break;
    }
    return lvl;
}

}  // namespace shalika
