#include "wpdist/hodge_core.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace wpdist {

namespace {

GMatrix hstack(const std::vector<GMatrix>& blocks, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  GMatrix out(rows, cols);
  Eigen::Index c = 0;
  for (const auto& b : blocks) {
    if (b.cols() == 0) continue;
    out.middleCols(c, b.cols()) = b;
    c += b.cols();
  }
  return out;
}

GSubspace conj(const GSubspace& s) {
  if (s.dim() == 0) return s;
  return GSubspace(wpdist::conj(s.basis()));
}

GSubspace kron(const GSubspace& a, const GSubspace& b) {
  const Eigen::Index ambient = a.ambient_dim() * b.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return GSubspace::zero(ambient);
  return GSubspace(wpdist::kron(a.basis(), b.basis()));
}

GMatrix block_diag(const GMatrix& a, const GMatrix& b) {
  GMatrix out = zeros(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

GSubspace direct_sum(const GSubspace& a, const GSubspace& b) {
  GMatrix basis = zeros(a.ambient_dim() + b.ambient_dim(), a.dim() + b.dim());
  if (a.dim() > 0) basis.topLeftCorner(a.ambient_dim(), a.dim()) = a.basis();
  if (b.dim() > 0) basis.bottomRightCorner(b.ambient_dim(), b.dim()) = b.basis();
  return GSubspace(basis);
}

// Sets W_l for l in [lo, hi] given the N-stable pair L ⊆ U, recursing on U/L.
void fill_weight_levels(const NilpotentOperator& n_op, int center, const GSubspace& upper, const GSubspace& lower,
                        int lo, int hi, std::map<int, GSubspace>& levels) {
  if (upper == lower) {
    for (int l = lo; l <= hi; ++l) levels[l] = upper;
    return;
  }
  int k = 0;
  for (int j = n_op.index(); j >= 0; --j) {
    if (!lower.contains(apply(n_op.power(j), upper))) {
      k = j;
      break;
    }
  }
  for (int l = center + k; l <= hi; ++l) levels[l] = upper;
  for (int l = lo; l <= center - k - 1; ++l) levels[l] = lower;
  if (k == 0) return;
  const GMatrix& nk = n_op.power(k);
  GSubspace next_upper = intersect(upper, preimage(nk, lower));
  GSubspace next_lower = apply(nk, upper) + lower;
  fill_weight_levels(n_op, center, next_upper, next_lower, center - k, center + k - 1, levels);
}

}  // namespace

PolarizedSpace::PolarizedSpace(int weight, GMatrix form) : weight_(weight), form_(std::move(form)) {
  if (weight_ < 0) throw Error(ErrorCode::InvalidDatum, "weight must be nonnegative");
  if (form_.rows() != form_.cols() || form_.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "bilinear form must be a nonempty square matrix");
  const Gaussian sign = (weight_ % 2 == 0) ? Gaussian(1) : Gaussian(-1);
  if (form_.transpose() != sign * form_)
    throw Error(ErrorCode::InvalidDatum, "Q must satisfy Q^T = (-1)^n Q");
  if (is_zero(determinant(form_))) throw Error(ErrorCode::InvalidDatum, "Q is degenerate");
}

NilpotentOperator::NilpotentOperator(GMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw Error(ErrorCode::DimensionMismatch, "nilpotent must be square");
  const Eigen::Index n = matrix_.rows();
  powers_.push_back(identity(n));
  while (!is_zero_matrix(powers_.back())) {
    if (static_cast<Eigen::Index>(powers_.size()) > n)
      throw Error(ErrorCode::InvalidDatum, "operator is not nilpotent");
    powers_.push_back(powers_.back() * matrix_);
  }
  // powers_ = {1, N, ..., N^{k+1} = 0}
  index_ = static_cast<int>(powers_.size()) - 2;
  if (index_ < 0) index_ = 0;  // zero-dimensional space
}

const GMatrix& NilpotentOperator::power(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  if (k >= static_cast<int>(powers_.size())) return powers_.back();  // zero
  return powers_[static_cast<size_t>(k)];
}

bool NilpotentOperator::commutes_with(const NilpotentOperator& other) const {
  return matrix_ * other.matrix_ == other.matrix_ * matrix_;
}

bool NilpotentOperator::is_infinitesimal_isometry(const PolarizedSpace& space) const {
  const GMatrix sum = matrix_.transpose() * space.form() + space.form() * matrix_;
  return is_zero_matrix(sum);
}

IncreasingFiltration::IncreasingFiltration(int lowest, std::vector<GSubspace> levels)
    : lowest_(lowest), ambient_(0), levels_(std::move(levels)) {
  if (levels_.empty()) throw Error(ErrorCode::DegenerateFiltration, "empty filtration");
  ambient_ = levels_.front().ambient_dim();
  for (size_t i = 1; i < levels_.size(); ++i) {
    if (levels_[i].ambient_dim() != ambient_)
      throw Error(ErrorCode::DimensionMismatch, "filtration levels in different spaces");
    if (!levels_[i].contains(levels_[i - 1]))
      throw Error(ErrorCode::DegenerateFiltration, "W_{l-1} is not contained in W_l");
  }
  if (levels_.back().dim() != ambient_)
    throw Error(ErrorCode::DegenerateFiltration, "top level of W is not the whole space");
}

GSubspace IncreasingFiltration::operator[](int l) const {
  if (l < lowest_) return GSubspace::zero(ambient_);
  if (l > highest()) return levels_.back();
  return levels_[static_cast<size_t>(l - lowest_)];
}

bool operator==(const IncreasingFiltration& a, const IncreasingFiltration& b) {
  if (a.ambient_ != b.ambient_) return false;
  const int lo = std::min(a.lowest(), b.lowest()) - 1;
  const int hi = std::max(a.highest(), b.highest());
  for (int l = lo; l <= hi; ++l)
    if (a[l] != b[l]) return false;
  return true;
}

DecreasingFiltration::DecreasingFiltration(std::vector<GSubspace> pieces) : ambient_(0), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::DegenerateFiltration, "empty filtration");
  ambient_ = pieces_.front().ambient_dim();
  for (size_t p = 1; p < pieces_.size(); ++p) {
    if (pieces_[p].ambient_dim() != ambient_)
      throw Error(ErrorCode::DimensionMismatch, "filtration pieces in different spaces");
    if (!pieces_[p - 1].contains(pieces_[p]))
      throw Error(ErrorCode::DegenerateFiltration, "F^{p+1} is not contained in F^p");
  }
}

GSubspace DecreasingFiltration::operator[](int p) const {
  if (p < 0) return pieces_.front();
  if (p > top()) return GSubspace::zero(ambient_);
  return pieces_[static_cast<size_t>(p)];
}

namespace {

// Bases of P^{p,m-p} = F^p ∩ conj(F^{m-p}) for p = m, ..., 0.
std::vector<GSubspace> hodge_pieces(const DecreasingFiltration& f, int m) {
  std::vector<GSubspace> out;
  for (int p = m; p >= 0; --p) out.push_back(intersect(f[p], conj(f[m - p])));
  return out;
}

bool pieces_decompose(const std::vector<GSubspace>& pieces, Eigen::Index dim) {
  Eigen::Index total = 0;
  std::vector<GMatrix> bases;
  for (const auto& s : pieces) {
    total += s.dim();
    bases.push_back(s.basis());
  }
  return total == dim && rank(hstack(bases, dim)) == dim;
}

}  // namespace

std::optional<GMatrix> weil_operator(const DecreasingFiltration& f, int m) {
  const Eigen::Index dim = f.ambient_dim();
  const auto pieces = hodge_pieces(f, m);
  if (!pieces_decompose(pieces, dim)) return std::nullopt;
  std::vector<GMatrix> bases;
  std::vector<Gaussian> eigen;
  for (size_t k = 0; k < pieces.size(); ++k) {
    const int p = m - static_cast<int>(k);
    bases.push_back(pieces[k].basis());
    for (Eigen::Index j = 0; j < pieces[k].dim(); ++j) eigen.push_back(i_power(p - (m - p)));
  }
  const GMatrix b = hstack(bases, dim);
  GMatrix scaled = b;
  for (Eigen::Index j = 0; j < b.cols(); ++j) scaled.col(j) = eigen[static_cast<size_t>(j)] * b.col(j);
  // C = scaled * b^{-1}; solve row by row via coordinates of the identity.
  GMatrix binv(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) binv.col(j) = coordinates(b, unit(dim, j));
  return GMatrix(scaled * binv);
}

PolarizationReport check_polarization(const PolarizedSpace& space, const DecreasingFiltration& f, int m) {
  if (f.ambient_dim() != space.dim())
    throw Error(ErrorCode::DimensionMismatch, "filtration and space have different dimensions");
  PolarizationReport report;
  report.cond_a = true;
  for (int p = 0; p <= m + 1 && report.cond_a; ++p) {
    const GSubspace fp = f[p];
    const GSubspace fq = f[m + 1 - p];
    if (fp.dim() == 0 || fq.dim() == 0) continue;
    report.cond_a = is_zero_matrix(GMatrix(fp.basis().transpose() * space.form() * fq.basis()));
  }

  const auto pieces = hodge_pieces(f, m);
  report.decomposes = pieces_decompose(pieces, space.dim());
  if (!report.decomposes) return report;

  // Gram matrix of Q(C u, conj v) on a basis adapted to the decomposition.
  std::vector<GMatrix> bases;
  std::vector<Gaussian> weil;
  for (size_t k = 0; k < pieces.size(); ++k) {
    const int p = m - static_cast<int>(k);
    bases.push_back(pieces[k].basis());
    for (Eigen::Index j = 0; j < pieces[k].dim(); ++j) weil.push_back(i_power(2 * p - m));
  }
  const GMatrix b = hstack(bases, space.dim());
  GMatrix cb = b;
  for (Eigen::Index j = 0; j < b.cols(); ++j) cb.col(j) = weil[static_cast<size_t>(j)] * b.col(j);
  const GMatrix gram = cb.transpose() * space.form() * wpdist::conj(b);
  report.cond_b = is_hermitian(gram) && definite_sign(gram) == 1;
  return report;
}

bool is_hermitian(const GMatrix& h) {
  return h.rows() == h.cols() && GMatrix(h.transpose()) == wpdist::conj(h);
}

int definite_sign(const GMatrix& h) {
  if (!is_hermitian(h) || h.rows() == 0) return 0;
  bool pos = true;
  bool neg = true;
  for (Eigen::Index k = 1; k <= h.rows(); ++k) {
    const Gaussian minor = determinant(GMatrix(h.topLeftCorner(k, k)));
    const Rational& d = minor.real();
    if (!(d > 0)) pos = false;
    // negative definite: minors alternate sign starting negative
    const bool want_negative = (k % 2 == 1);
    if (want_negative ? !(d < 0) : !(d > 0)) neg = false;
  }
  if (pos) return 1;
  if (neg) return -1;
  return 0;
}

IncreasingFiltration weight_filtration(const NilpotentOperator& n_op, int n) {
  const int k = n_op.index();
  if (k > n)
    throw Error(ErrorCode::IndexExceedsWeight,
                "nilpotent index " + std::to_string(k) + " exceeds weight " + std::to_string(n));
  const Eigen::Index dim = n_op.dim();
  std::map<int, GSubspace> levels;
  fill_weight_levels(n_op, n, GSubspace::full(dim), GSubspace::zero(dim), n - k, n + k, levels);
  std::vector<GSubspace> ordered;
  for (int l = n - k; l <= n + k; ++l) ordered.push_back(levels.at(l));
  return IncreasingFiltration(n - k, std::move(ordered));
}

bool cone_invariance(const NilpotentOperator& n1, const NilpotentOperator& n2, int n,
                     const std::vector<std::pair<Rational, Rational>>& samples) {
  if (!n1.commutes_with(n2)) throw Error(ErrorCode::NonCommuting, "N1 N2 != N2 N1");
  std::optional<IncreasingFiltration> reference;
  for (const auto& [a, b] : samples) {
    if (!(a > 0) || !(b > 0)) throw Error(ErrorCode::InvalidDatum, "cone samples must be positive");
    const IncreasingFiltration w = weight_filtration(a * n1 + b * n2, n);
    if (!reference) {
      reference = w;
    } else if (!(*reference == w)) {
      return false;
    }
  }
  return true;
}

PrimitivePart graded_primitive(const PolarizedSpace& space, const NilpotentOperator& n_op, const IncreasingFiltration& w,
                               int n, int s, const std::optional<GMatrix>& weil) {
  if (space.dim() != n_op.dim() || w.ambient_dim() != n_op.dim())
    throw Error(ErrorCode::DimensionMismatch, "space, operator and filtration disagree in dimension");
  if (s < 0 || n + s > w.highest() || n - s < w.lowest())
    throw Error(ErrorCode::GradeOutOfRange, "grade n+s=" + std::to_string(n + s) + " out of range");
  // {u in W_{n+s} : N^{s+1} u in W_{n-s-3}}, modulo W_{n+s-1}
  const GSubspace candidates = intersect(w[n + s], preimage(n_op.power(s + 1), w[n - s - 3]));
  PrimitivePart out;
  out.basis = candidates.dim() == 0 ? GMatrix(space.dim(), 0) : complement_in(w[n + s - 1], candidates.basis());
  GMatrix left = out.basis;
  if (weil) left = (*weil) * out.basis;
  out.gram = left.transpose() * space.form() * n_op.power(s) * wpdist::conj(out.basis);
  out.hermitian = is_hermitian(out.gram);
  out.definite_sign = out.basis.cols() == 0 ? 0 : definite_sign(out.gram);
  return out;
}

bool exponential_isometry_holds(const NilpotentOperator& n_op, const PolarizedSpace& space) {
  const int k = n_op.index();
  // Coefficient of z^m in e^{zN}^T Q e^{zN} is sum_{j+l=m} (N^j)^T Q N^l / (j! l!).
  for (int m = 1; m <= 2 * k; ++m) {
    GMatrix coeff = zeros(space.dim(), space.dim());
    for (int j = 0; j <= m; ++j) {
      const int l = m - j;
      Rational fact(1);
      for (int t = 2; t <= j; ++t) fact *= t;
      for (int t = 2; t <= l; ++t) fact *= t;
      coeff += Gaussian(Rational(1) / fact) * GMatrix(n_op.power(j).transpose() * space.form() * n_op.power(l));
    }
    if (!is_zero_matrix(coeff)) return false;
  }
  return true;
}

// Blocks ---------------------------------------------------------------------

HodgeBlock weight1_string(const std::vector<Rational>& coefficients) {
  GMatrix q = zeros(2, 2);
  q(0, 1) = Gaussian(1);
  q(1, 0) = Gaussian(-1);
  GMatrix n = zeros(2, 2);
  n(1, 0) = Gaussian(1);  // N e1 = e2
  std::vector<NilpotentOperator> nilpotents;
  for (const auto& c : coefficients) nilpotents.emplace_back(Gaussian(c) * n);
  GVector f1(2);
  f1 << Gaussian(1), Gaussian::i();
  return HodgeBlock{PolarizedSpace(1, q), std::move(nilpotents),
                    DecreasingFiltration({GSubspace::full(2), GSubspace(GMatrix(f1))})};
}

HodgeBlock trivial_block(Eigen::Index dim, int weight, std::size_t nilpotent_count) {
  if (weight % 2 != 0) throw Error(ErrorCode::InvalidDatum, "trivial block needs even weight");
  std::vector<NilpotentOperator> nilpotents(nilpotent_count, NilpotentOperator::zero(dim));
  std::vector<GSubspace> pieces;
  for (int p = 0; p <= weight; ++p) pieces.push_back(p <= weight / 2 ? GSubspace::full(dim) : GSubspace::zero(dim));
  return HodgeBlock{PolarizedSpace(weight, identity(dim)), std::move(nilpotents), DecreasingFiltration(std::move(pieces))};
}

HodgeBlock tensor(const HodgeBlock& a, const HodgeBlock& b, const BlockOptions& options) {
  if (a.nilpotents.size() != b.nilpotents.size())
    throw Error(ErrorCode::DimensionMismatch, "blocks carry different numbers of nilpotents");
  const int weight = a.space.weight() + b.space.weight();
  if (weight > options.max_weight)
    throw Error(ErrorCode::WeightOverflow, "combined weight " + std::to_string(weight) + " exceeds bound");
  const GMatrix ia = identity(a.space.dim());
  const GMatrix ib = identity(b.space.dim());
  std::vector<NilpotentOperator> nilpotents;
  for (size_t i = 0; i < a.nilpotents.size(); ++i)
    nilpotents.emplace_back(GMatrix(kron(a.nilpotents[i].matrix(), ib) + kron(ia, b.nilpotents[i].matrix())));
  std::vector<GSubspace> pieces;
  const Eigen::Index ambient = a.space.dim() * b.space.dim();
  for (int p = 0; p <= a.hodge.top() + b.hodge.top(); ++p) {
    GSubspace piece = GSubspace::zero(ambient);
    for (int s = 0; s <= p; ++s) piece = piece + kron(a.hodge[s], b.hodge[p - s]);
    pieces.push_back(piece);
  }
  return HodgeBlock{PolarizedSpace(weight, kron(a.space.form(), b.space.form())), std::move(nilpotents),
                    DecreasingFiltration(std::move(pieces))};
}

HodgeBlock direct_sum(const HodgeBlock& a, const HodgeBlock& b) {
  if (a.space.weight() != b.space.weight())
    throw Error(ErrorCode::DimensionMismatch, "direct sum needs equal weights");
  if (a.nilpotents.size() != b.nilpotents.size())
    throw Error(ErrorCode::DimensionMismatch, "blocks carry different numbers of nilpotents");
  std::vector<NilpotentOperator> nilpotents;
  for (size_t i = 0; i < a.nilpotents.size(); ++i)
    nilpotents.emplace_back(block_diag(a.nilpotents[i].matrix(), b.nilpotents[i].matrix()));
  std::vector<GSubspace> pieces;
  const int top = std::max(a.hodge.top(), b.hodge.top());
  for (int p = 0; p <= top; ++p) pieces.push_back(direct_sum(a.hodge[p], b.hodge[p]));
  return HodgeBlock{PolarizedSpace(a.space.weight(), block_diag(a.space.form(), b.space.form())),
                    std::move(nilpotents), DecreasingFiltration(std::move(pieces))};
}

HodgeBlock restrict_block(const HodgeBlock& a, const GMatrix& basis) {
  const GSubspace span(basis);
  if (span.dim() != basis.cols()) throw Error(ErrorCode::InvalidDatum, "restriction basis is not independent");
  std::vector<NilpotentOperator> nilpotents;
  for (const auto& n : a.nilpotents) {
    GMatrix image = n.matrix() * basis;
    GMatrix coords(basis.cols(), basis.cols());
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      if (!span.contains(GVector(image.col(j))))
        throw Error(ErrorCode::InvalidDatum, "subspace is not invariant under the nilpotents");
      coords.col(j) = coordinates(basis, GVector(image.col(j)));
    }
    nilpotents.emplace_back(coords);
  }
  std::vector<GSubspace> pieces;
  for (int p = 0; p <= a.hodge.top(); ++p) {
    const GSubspace inter = intersect(a.hodge[p], span);
    GMatrix coords(basis.cols(), inter.dim());
    for (Eigen::Index j = 0; j < inter.dim(); ++j) coords.col(j) = coordinates(basis, GVector(inter.basis().col(j)));
    pieces.push_back(inter.dim() == 0 ? GSubspace::zero(basis.cols()) : GSubspace(coords));
  }
  return HodgeBlock{PolarizedSpace(a.space.weight(), GMatrix(basis.transpose() * a.space.form() * basis)),
                    std::move(nilpotents), DecreasingFiltration(std::move(pieces))};
}

HodgeBlock sym_power(const HodgeBlock& a, int k, const BlockOptions& options) {
  if (k < 1) throw Error(ErrorCode::InvalidDatum, "symmetric power must be positive");
  if (a.space.weight() * k > options.max_weight)
    throw Error(ErrorCode::WeightOverflow, "combined weight exceeds bound");
  HodgeBlock power = a;
  for (int j = 1; j < k; ++j) power = tensor(power, a, options);
  const Eigen::Index d = a.space.dim();
  Eigen::Index total = 1;
  for (int j = 0; j < k; ++j) total *= d;
  // One orbit sum per multiset of factor indices, keyed by the sorted tuple.
  std::map<std::vector<Eigen::Index>, GVector> orbit;
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    std::vector<Eigen::Index> digits(static_cast<size_t>(k));
    Eigen::Index rest = flat;
    for (int j = k - 1; j >= 0; --j) {
      digits[static_cast<size_t>(j)] = rest % d;
      rest /= d;
    }
    std::vector<Eigen::Index> key = digits;
    std::sort(key.begin(), key.end());
    auto it = orbit.find(key);
    if (it == orbit.end()) it = orbit.emplace(key, GVector::Constant(total, Gaussian(0))).first;
    it->second(flat) = Gaussian(1);
  }
  GMatrix basis(total, static_cast<Eigen::Index>(orbit.size()));
  Eigen::Index c = 0;
  for (const auto& [key, v] : orbit) basis.col(c++) = v;
  return restrict_block(power, basis);
}

}  // namespace wpdist
