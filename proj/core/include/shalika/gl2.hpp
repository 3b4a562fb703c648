#pragma once

#include <cstdint>
#include <optional>

#include "shalika/matrix.hpp"

namespace shalika {

// Enumeration of GL(2, O/P^M) by lifts with entries in [0, p^M). Raw indices
// run over all entry tuples; decode() rejects non-invertible ones, so the
// enumeration is complete and duplicate-free. Partitionable by index range.
class Gl2Enumerator {
public:
    Gl2Enumerator(uint32_t p, int level);

    uint32_t p() const { return p_; }
    int level() const { return M_; }
    uint64_t raw_size() const { return raw_; }
    uint64_t group_size() const;  // |GL(2, F_p)| * p^{4(M-1)}

    struct Entry {
        uint64_t a, b, c, d;  // in [0, p^M), row-major [[a,b],[c,d]]
    };
    // false when the tuple is not invertible mod p
    bool decode(uint64_t raw_index, Entry& out) const;
    Mat2 lift(const Entry& e, int prec = -1) const;

private:
    uint32_t p_;
    int M_;
    uint64_t pM_, raw_;
};

enum class IwahoriCell {
    Iwahori,  // h_{11}, h_{22} units (h_21 in P); lower-triangular representatives
    Bruhat,   // h_{12}, h_{21} units in the cell representatives
};

// Classification of h in GL(2, O) by the Iwahori-Bruhat cell of its
// reduction: h_21 in P <=> Iwahori.
IwahoriCell iwahori_classify(const Mat2& h);

// The evaluated Shalika-integral element
//   sigma_4 n(n^-(x)) diag(g, g) sigma_4,  g = diag(pi^r, 1) h,
// laid out as
//   [ h11 w^r   .        h12 w^r   .       ]
//   [ .         h11 w^r  .         h12 w^r ]
//   [ h21       h11 x w^r h22      h12 x w^r]
//   [ .         h21      .         h22     ]
Mat4 shalika_embed(int r, const Mat2& h, const Padic& x);

}  // namespace shalika
