#include "wpdist/limiting_data.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wpdist {

LimitingExpansion::LimitingExpansion(PolarizedSpace space, std::vector<NilpotentOperator> nilpotents, GVector a0,
                                     std::vector<ExpansionTerm> terms, int truncation_order,
                                     std::optional<DecreasingFiltration> hodge)
    : space_(std::move(space)),
      nilpotents_(std::move(nilpotents)),
      a0_(std::move(a0)),
      terms_(std::move(terms)),
      truncation_order_(truncation_order),
      hodge_(std::move(hodge)) {
  const Eigen::Index dim = space_.dim();
  if (nilpotents_.empty() || nilpotents_.size() > 2)
    throw Error(ErrorCode::InvalidDatum, "expected one or two boundary divisors");
  for (const auto& n : nilpotents_)
    if (n.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "nilpotent does not act on the space");
  for (size_t i = 0; i < nilpotents_.size(); ++i)
    for (size_t j = i + 1; j < nilpotents_.size(); ++j)
      if (!nilpotents_[i].commutes_with(nilpotents_[j])) throw Error(ErrorCode::NonCommuting, "N_i N_j != N_j N_i");
  if (a0_.size() != dim) throw Error(ErrorCode::DimensionMismatch, "a0 has the wrong length");
  if (is_zero_matrix(a0_)) throw Error(ErrorCode::ZeroVector, "a0 = 0");
  if (hodge_ && hodge_->ambient_dim() != dim)
    throw Error(ErrorCode::DimensionMismatch, "Hodge filtration lives in another space");

  int max_order = 0;
  for (const auto& term : terms_) {
    if (term.exponent.size() != nilpotents_.size())
      throw Error(ErrorCode::DimensionMismatch, "multi-exponent length differs from the number of divisors");
    int order = 0;
    for (int e : term.exponent) {
      if (e < 0) throw Error(ErrorCode::InvalidDatum, "negative exponent");
      order += e;
    }
    if (order < 1) throw Error(ErrorCode::InvalidDatum, "term with |I| = 0");
    if (term.vec.size() != dim) throw Error(ErrorCode::DimensionMismatch, "a_I has the wrong length");
    max_order = std::max(max_order, order);
  }
  if (truncation_order_ < 0) truncation_order_ = max_order;
  if (max_order > truncation_order_)
    throw Error(ErrorCode::InvalidDatum, "term beyond the truncation order " + std::to_string(truncation_order_));
}

LimitingExpansion LimitingExpansion::swapped() const {
  std::vector<NilpotentOperator> ns(nilpotents_.rbegin(), nilpotents_.rend());
  std::vector<ExpansionTerm> ts = terms_;
  for (auto& t : ts) std::reverse(t.exponent.begin(), t.exponent.end());
  return LimitingExpansion(space_, std::move(ns), a0_, std::move(ts), truncation_order_, hodge_);
}

int degree(const NilpotentOperator& n_op, const GVector& a0) {
  if (is_zero_matrix(a0)) throw Error(ErrorCode::ZeroVector, "a0 = 0");
  if (a0.size() != n_op.dim()) throw Error(ErrorCode::DimensionMismatch, "a0 has the wrong length");
  int d = 0;
  GVector v = n_op.matrix() * a0;
  while (!is_zero_matrix(v)) {
    ++d;
    v = n_op.matrix() * v;
  }
  return d;
}

DivisorClass classify_divisor(const NilpotentOperator& n_op, const GVector& a0) {
  const int d = degree(n_op, a0);
  return {d == 0 ? DivisorTag::Finite : DivisorTag::Infinite, d};
}

bool threefold_constraint(const LimitingExpansion& exp) {
  if (exp.space().weight() != 3) throw Error(ErrorCode::WrongWeight, "constraint applies to weight 3 only");
  for (const auto& n : exp.nilpotents()) {
    const GMatrix& p = n.power(degree(n, exp.a0()) + 1);
    for (const auto& term : exp.terms())
      if (!is_zero_matrix(GVector(p * term.vec))) return false;
  }
  return true;
}

CVector evaluate_a(const LimitingExpansion& exp, const std::vector<std::complex<double>>& t) {
  if (t.size() != exp.divisor_count()) throw Error(ErrorCode::DimensionMismatch, "wrong number of coordinates");
  for (const auto& ti : t)
    if (!(std::abs(ti) < 1.0)) throw Error(ErrorCode::DomainError, "|t_i| >= 1");
  CVector out = to_complex(exp.a0());
  for (const auto& term : exp.terms()) {
    std::complex<double> mono(1.0);
    for (size_t i = 0; i < t.size(); ++i) mono *= std::pow(t[i], term.exponent[i]);
    out += mono * to_complex(term.vec);
  }
  return out;
}

CMatrix nilpotent_exp(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  CMatrix out = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (Eigen::Index j = 1; j <= n; ++j) {
    term = term * m / static_cast<double>(j);
    out += term;
  }
  return out;
}

CVector evaluate_omega(const LimitingExpansion& exp, const std::vector<std::complex<double>>& z) {
  if (z.size() != exp.divisor_count()) throw Error(ErrorCode::DimensionMismatch, "wrong number of coordinates");
  std::vector<std::complex<double>> t;
  const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
  CMatrix m = CMatrix::Zero(exp.space().dim(), exp.space().dim());
  for (size_t i = 0; i < z.size(); ++i) {
    t.push_back(std::exp(two_pi_i * z[i]));
    m += z[i] * to_complex(exp.nilpotent(i).matrix());
  }
  return nilpotent_exp(m) * evaluate_a(exp, t);
}

}  // namespace wpdist
