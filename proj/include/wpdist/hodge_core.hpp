#pragma once

// Polarized vector spaces, nilpotent operators and their filtrations, all
// over exact Gaussian rationals.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wpdist/errors.hpp"
#include "wpdist/linalg.hpp"
#include "wpdist/scalar.hpp"

namespace wpdist {

/// A finite-dimensional space with weight n and a nondegenerate bilinear form
/// Q(u, v) = u^T Q v that is (-1)^n symmetric. The twisted form is i^n Q.
class PolarizedSpace {
 public:
  PolarizedSpace(int weight, GMatrix form);

  Eigen::Index dim() const { return form_.rows(); }
  int weight() const { return weight_; }
  const GMatrix& form() const { return form_; }

  /// (sqrt(-1))^n.
  Gaussian twist_sign() const { return i_power(weight_); }
  GMatrix twisted_form() const { return twist_sign() * form_; }

  Gaussian pair(const GVector& u, const GVector& v) const { return (u.transpose() * form_ * v)(0, 0); }
  Gaussian twisted_pair(const GVector& u, const GVector& v) const { return twist_sign() * pair(u, v); }

 private:
  int weight_;
  GMatrix form_;
};

/// A nilpotent endomorphism with its index: the smallest k with N^{k+1} = 0.
class NilpotentOperator {
 public:
  explicit NilpotentOperator(GMatrix matrix);

  static NilpotentOperator zero(Eigen::Index dim) { return NilpotentOperator(zeros(dim, dim)); }

  const GMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  int index() const { return index_; }

  /// N^k, cached for k <= index + 1.
  const GMatrix& power(int k) const;

  bool commutes_with(const NilpotentOperator& other) const;

  /// Q(Nu, v) + Q(u, Nv) = 0 for all u, v.
  bool is_infinitesimal_isometry(const PolarizedSpace& space) const;

  friend NilpotentOperator operator*(const Rational& c, const NilpotentOperator& n) {
    return NilpotentOperator(Gaussian(c) * n.matrix_);
  }
  friend NilpotentOperator operator+(const NilpotentOperator& a, const NilpotentOperator& b) {
    return NilpotentOperator(a.matrix_ + b.matrix_);
  }

 private:
  GMatrix matrix_;
  int index_ = 0;
  std::vector<GMatrix> powers_;
};


/// 0 = W_{lowest-1} ⊆ W_lowest ⊆ ... ⊆ W_highest = V.
class IncreasingFiltration {
 public:
  IncreasingFiltration(int lowest, std::vector<GSubspace> levels);

  int lowest() const { return lowest_; }
  int highest() const { return lowest_ + static_cast<int>(levels_.size()) - 1; }
  Eigen::Index ambient_dim() const { return ambient_; }

  /// W_l for any integer l (zero below the range, V above it).
  GSubspace operator[](int l) const;

  Eigen::Index graded_dim(int l) const { return (*this)[l].dim() - (*this)[l - 1].dim(); }

  friend bool operator==(const IncreasingFiltration& a, const IncreasingFiltration& b);

 private:
  int lowest_;
  Eigen::Index ambient_;
  std::vector<GSubspace> levels_;
};

/// V ⊇ F^0 ⊇ F^1 ⊇ ... ⊇ F^top ⊇ F^{top+1} = 0, with F^p = F^0 for p < 0.
class DecreasingFiltration {
 public:
  explicit DecreasingFiltration(std::vector<GSubspace> pieces);

  int top() const { return static_cast<int>(pieces_.size()) - 1; }
  Eigen::Index ambient_dim() const { return ambient_; }
  GSubspace operator[](int p) const;
  const std::vector<GSubspace>& pieces() const { return pieces_; }

 private:
  Eigen::Index ambient_;
  std::vector<GSubspace> pieces_;
};

struct PolarizationReport {
  bool cond_a = false;  ///< Q(F^p, F^{m+1-p}) = 0 for all p
  bool cond_b = false;  ///< Q(C v, conj v) > 0 for v != 0
  bool decomposes = false;  ///< V = ⊕ F^p ∩ conj(F^q)
};

/// Checks both Hodge-Riemann conditions for F as a Hodge structure of weight m.
/// The Weil operator acts as i^{p-q} on F^p ∩ conj(F^q).
PolarizationReport check_polarization(const PolarizedSpace& space, const DecreasingFiltration& f, int m);

/// The Weil operator i^{p-q} on the decomposition induced by F, or nullopt if
/// F does not induce a direct sum decomposition.
std::optional<GMatrix> weil_operator(const DecreasingFiltration& f, int m);

/// Unique W centred at n with N W_l ⊆ W_{l-2} and N^s : Gr_{n+s} ≅ Gr_{n-s}.
IncreasingFiltration weight_filtration(const NilpotentOperator& n_op, int n);

/// True iff W(a N1 + b N2) is the same filtration for every sample (a, b).
bool cone_invariance(const NilpotentOperator& n1, const NilpotentOperator& n2, int n,
                     const std::vector<std::pair<Rational, Rational>>& samples);

struct PrimitivePart {
  GMatrix basis;  ///< representatives in W_{n+s} of a basis of P_{n+s}
  GMatrix gram;   ///< Q(u_a, N^s conj(u_b)), or Q(C u_a, N^s conj(u_b)) with a twist
  bool hermitian = false;
  int definite_sign = 0;  ///< +1 positive definite, -1 negative definite, 0 otherwise
};

/// P_{n+s} = ker(N^{s+1} : Gr_{n+s} -> Gr_{n-s-2}) with its induced form.
PrimitivePart graded_primitive(const PolarizedSpace& space, const NilpotentOperator& n_op, const IncreasingFiltration& w,
                               int n, int s, const std::optional<GMatrix>& weil = std::nullopt);

/// Sign of a Hermitian matrix by leading principal minors: +1, -1, or 0 if indefinite/singular.
int definite_sign(const GMatrix& h);

bool is_hermitian(const GMatrix& h);

/// Q(e^{zN}u, e^{zN}v) - Q(u, v) vanishes as a polynomial in z.
bool exponential_isometry_holds(const NilpotentOperator& n_op, const PolarizedSpace& space);

// Fixture blocks ------------------------------------------------------------

/// Polarized data with one nilpotent per boundary divisor.
struct HodgeBlock {
  PolarizedSpace space;
  std::vector<NilpotentOperator> nilpotents;
  DecreasingFiltration hodge;
};

struct BlockOptions {
  int max_weight = 6;
};

/// Weight-1 string: Q(e1, e2) = 1, N e1 = e2, F^1 = span(e1 + i e2). One
/// nilpotent c_j N per entry of `coefficients`.
HodgeBlock weight1_string(const std::vector<Rational>& coefficients = {Rational(1)});

/// Hodge structure of type (w/2, w/2) on `dim` dimensions with Q = 1 and zero nilpotents.
HodgeBlock trivial_block(Eigen::Index dim, int weight = 0, std::size_t nilpotent_count = 1);

/// Product form, N_i ⊗ 1 + 1 ⊗ N_i, and the convolved Hodge filtration.
HodgeBlock tensor(const HodgeBlock& a, const HodgeBlock& b, const BlockOptions& options = {});

/// Orthogonal direct sum of two blocks of the same weight.
HodgeBlock direct_sum(const HodgeBlock& a, const HodgeBlock& b);

/// Restriction of the k-th tensor power to symmetric tensors. The basis is the
/// orbit sums of monomials, ordered by the multiset of factor indices.
HodgeBlock sym_power(const HodgeBlock& a, int k, const BlockOptions& options = {});

/// Restriction to an invariant subspace with the given (column) basis.
HodgeBlock restrict_block(const HodgeBlock& a, const GMatrix& basis);

}  // namespace wpdist
