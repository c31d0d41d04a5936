#pragma once

// The holomorphic expansion a(t) = a0 + sum a_I t^I of the top Hodge piece at
// a boundary point with one or two boundary divisors.

#include <complex>
#include <optional>
#include <vector>

#include "wpdist/hodge_core.hpp"

namespace wpdist {

struct ExpansionTerm {
  std::vector<int> exponent;  ///< multi-exponent I, one entry per divisor, |I| >= 1
  GVector vec;
};

class LimitingExpansion {
 public:
  /// truncation_order < 0 means "the largest |I| among the terms".
  LimitingExpansion(PolarizedSpace space, std::vector<NilpotentOperator> nilpotents, GVector a0,
                    std::vector<ExpansionTerm> terms = {}, int truncation_order = -1,
                    std::optional<DecreasingFiltration> hodge = std::nullopt);

  const PolarizedSpace& space() const { return space_; }
  const std::vector<NilpotentOperator>& nilpotents() const { return nilpotents_; }
  const NilpotentOperator& nilpotent(std::size_t i) const { return nilpotents_.at(i); }
  std::size_t divisor_count() const { return nilpotents_.size(); }
  const GVector& a0() const { return a0_; }
  const std::vector<ExpansionTerm>& terms() const { return terms_; }
  int truncation_order() const { return truncation_order_; }
  const std::optional<DecreasingFiltration>& hodge() const { return hodge_; }

  /// The same datum with the divisors listed in the opposite order.
  LimitingExpansion swapped() const;

 private:
  PolarizedSpace space_;
  std::vector<NilpotentOperator> nilpotents_;
  GVector a0_;
  std::vector<ExpansionTerm> terms_;
  int truncation_order_;
  std::optional<DecreasingFiltration> hodge_;
};

enum class DivisorTag { Finite, Infinite };

struct DivisorClass {
  DivisorTag tag;
  int degree;
};

/// max l with N^l a0 != 0.
int degree(const NilpotentOperator& n_op, const GVector& a0);

DivisorClass classify_divisor(const NilpotentOperator& n_op, const GVector& a0);

/// N_i^{d_i+1} a_I = 0 for every divisor i and every stored term, d_i = degree(N_i, a0).
bool threefold_constraint(const LimitingExpansion& exp);

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// a0 + sum a_I t^I.
CVector evaluate_a(const LimitingExpansion& exp, const std::vector<std::complex<double>>& t);

/// exp(sum z_i N_i) a(t(z)) with t_i = exp(2 pi i z_i).
CVector evaluate_omega(const LimitingExpansion& exp, const std::vector<std::complex<double>>& z);

/// exp(M) for a nilpotent complex matrix, summed until the powers vanish.
CMatrix nilpotent_exp(const CMatrix& m);

}  // namespace wpdist
