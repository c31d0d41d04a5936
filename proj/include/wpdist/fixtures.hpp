#pragma once

// Named polarized limiting data used by the tests, the acceptance suite and the CLI.

#include <string>
#include <vector>

#include "wpdist/limiting_data.hpp"

namespace wpdist {

/// One weight-1 tensor factor: contributes 2 (y1 * a + y2 * b + c) to the polynomial part.
struct LinearFactor {
  Rational a;
  Rational b;
  Rational c;
};

/// Tensor product of weight-1 strings, the i-th nilpotent acting on factor k
/// by coefficient (a_k, b_k)[i], and a0 = ⊗ (e1 + i c_k e2).
LimitingExpansion product_fixture(const std::vector<LinearFactor>& factors, std::size_t divisor_count = 2,
                                  std::vector<ExpansionTerm> terms = {});

/// (e1 + i c e2)^{⊗3} in the orbit-sum basis of the symmetric cube.
GVector sym3_vector(const Rational& c);

std::vector<std::string> fixture_names();

/// Throws UnknownFixture for names not in fixture_names().
LimitingExpansion fixture(const std::string& name);

}  // namespace wpdist
