#pragma once

// Macaulay-matrix multipolynomial resultant of four homogeneous forms in
// v_0..v_3, computed as a ratio of two determinants. The construction uses
// monomials of total degree d = (sum of the input degrees) - 3, partitioned
// by the reduced-monomial rule; when the denominator determinant vanishes,
// the system is retried under seeded unimodular changes of the v
// coordinates, which preserve vanishing of the resultant.

#include <array>
#include <cstdint>
#include <stdexcept>

#include "inc4/multipoly.hpp"

namespace inc4 {

struct zero_form_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct macaulay_degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MacaulayOptions {
    std::uint64_t seed = 0x4d414341;
    int max_retries = 8;
};

// Exact resultant value; zero iff the system has a nontrivial common
// projective root. Throws zero_form_error when some F_i is identically zero
// or not homogeneous of its declared degree, and macaulay_degenerate_error
// when every coordinate change leaves the denominator singular.
Rational macaulay_resultant(const std::array<MultiPoly, 4>& forms,
                            const std::array<int, 4>& degrees,
                            const MacaulayOptions& opts = {});

}  // namespace inc4
