#include "wpdist/fixtures.hpp"

#include <functional>
#include <map>

namespace wpdist {

namespace {

const Gaussian kEps(Rational(0), make_rational(1, 10));

GVector weight1_vector(const Rational& c) {
  GVector v(2);
  v << Gaussian(1), Gaussian(Rational(0), c);
  return v;
}

GVector kron_vec(const GVector& a, const GVector& b) { return kron(GMatrix(a), GMatrix(b)).col(0); }

// (e1 + i e2)^2 (e1 - i e2) in the symmetric cube: the (2,1) direction next to sym3_vector(1).
GVector sym3_hodge21() {
  GVector v(4);
  v << Gaussian(1), Gaussian(Rational(0), make_rational(1, 3)), Gaussian(make_rational(1, 3)),
      Gaussian(Rational(0), Rational(1));
  return v;
}

LimitingExpansion from_block(const HodgeBlock& block, GVector a0, std::vector<ExpansionTerm> terms = {},
                             bool keep_hodge = true) {
  std::optional<DecreasingFiltration> hodge;
  if (keep_hodge) hodge = block.hodge;
  return LimitingExpansion(block.space, block.nilpotents, std::move(a0), std::move(terms), -1, std::move(hodge));
}

// Weight-3 block Sym^3(W1) ⊕ (W1 ⊗ T) where the first nilpotents act on the
// symmetric cube and the remaining ones are rank one on the second summand.
HodgeBlock mixed_block(const std::vector<Rational>& sym_coeffs, const std::vector<Rational>& rank_one_coeffs) {
  return direct_sum(sym_power(weight1_string(sym_coeffs), 3),
                    tensor(weight1_string(rank_one_coeffs), trivial_block(1, 2, rank_one_coeffs.size())));
}

GVector pad(const GVector& v, Eigen::Index extra) {
  GVector out = GVector::Constant(v.size() + extra, Gaussian(0));
  out.head(v.size()) = v;
  return out;
}

LimitingExpansion mixed() {
  const HodgeBlock block = mixed_block({1, 0}, {0, 1});
  GVector a0 = pad(sym3_vector(1), 2);
  std::vector<ExpansionTerm> terms;
  terms.push_back({{0, 1}, kEps * pad(sym3_hodge21(), 2)});
  terms.push_back({{1, 0}, kEps * GVector(block.nilpotents[0].matrix() * a0)});
  return from_block(block, a0, terms);
}

LimitingExpansion finite_finite() {
  // Symmetric cube with no monodromy, plus one rank-one block per divisor.
  const HodgeBlock rank_one_1 = tensor(weight1_string({1, 0}), trivial_block(1, 2, 2));
  const HodgeBlock rank_one_2 = tensor(weight1_string({0, 1}), trivial_block(1, 2, 2));
  const HodgeBlock block = direct_sum(direct_sum(sym_power(weight1_string({0, 0}), 3), rank_one_1), rank_one_2);
  GVector a0 = pad(sym3_vector(1), 4);
  std::vector<ExpansionTerm> terms;
  terms.push_back({{1, 0}, kEps * pad(sym3_hodge21(), 4)});
  terms.push_back({{0, 1}, Gaussian(make_rational(1, 5)) * pad(sym3_hodge21(), 4)});
  terms.push_back({{1, 1}, kEps * a0});
  return from_block(block, a0, terms);
}

LimitingExpansion with_terms(const LimitingExpansion& base) {
  // Terms drawn from span{N^j a0}, so the weight-3 constraint holds.
  std::vector<ExpansionTerm> terms;
  const auto& a0 = base.a0();
  if (base.divisor_count() == 1) {
    terms.push_back({{1}, kEps * GVector(base.nilpotent(0).matrix() * a0)});
    terms.push_back({{2}, kEps * a0});
  } else {
    terms.push_back({{1, 0}, kEps * GVector(base.nilpotent(1).matrix() * a0)});
    terms.push_back({{0, 1}, kEps * GVector(base.nilpotent(0).matrix() * a0)});
    terms.push_back({{1, 1}, kEps * a0});
  }
  return LimitingExpansion(base.space(), base.nilpotents(), a0, terms, -1, base.hodge());
}

using Builder = std::function<LimitingExpansion()>;

const std::map<std::string, Builder>& registry() {
  static const std::map<std::string, Builder> builders = [] {
    std::map<std::string, Builder> m;
    m["weight1"] = [] { return from_block(weight1_string(), unit(2, 0), {}, false); };
    m["weight1-decay"] = [] {
      return from_block(weight1_string(), unit(2, 0), {{{1}, kEps * unit(2, 1)}}, false);
    };
    m["sym3-maximal"] = [] { return from_block(sym_power(weight1_string(), 3), sym3_vector(1)); };
    m["sym3-decay"] = [] { return with_terms(from_block(sym_power(weight1_string(), 3), sym3_vector(1))); };
    m["rank-one-finite"] = [] {
      return from_block(mixed_block({0}, {1}), pad(sym3_vector(1), 2), {{{1}, kEps * pad(sym3_hodge21(), 2)}});
    };
    m["tensor-11"] = [] { return product_fixture({{1, 0, 1}, {0, 1, 1}}); };
    m["case-i"] = [] { return product_fixture({{1, 1, 0}}); };
    m["case-ii"] = [] { return product_fixture({{1, 0, 1}, {0, 1, 2}}); };
    m["case-iii"] = [] { return product_fixture({{0, 1, 1}, {1, 1, 2}}); };
    m["case-iv"] = [] { return product_fixture({{1, 0, 1}, {0, 1, 2}, {0, 1, 3}}); };
    m["case-v"] = [] { return product_fixture({{1, 1, 1}, {0, 1, 2}, {0, 1, 3}}); };
    m["case-vi"] = [] { return product_fixture({{1, 1, 1}, {1, 2, 2}}); };
    m["case-vii"] = [] { return product_fixture({{1, 0, 1}, {0, 1, 2}, {1, 1, 3}}); };
    m["case-viii"] = [] { return product_fixture({{0, 1, 1}, {1, 1, 2}, {1, 2, 3}}); };
    m["case-ix"] = [] { return product_fixture({{2, 1, 1}, {1, 1, 2}, {1, 2, 3}}); };
    m["case-ix-cube"] = [] { return product_fixture({{1, 1, 0}, {1, 1, 0}, {1, 1, 0}}); };
    m["type-31"] = [] { return with_terms(product_fixture({{1, 0, 1}, {1, 0, 2}, {1, 1, 3}})); };
    m["decay-two"] = [] { return with_terms(product_fixture({{1, 0, 1}, {0, 1, 2}})); };
    m["mixed"] = mixed;
    m["finite-finite"] = finite_finite;
    m["p11222-qualitative"] = mixed;
    m["p11222-c1-ccon"] = finite_finite;
    m["p11222-d-c1"] = mixed;
    m["p11222-d-cinf"] = [] { return with_terms(product_fixture({{1, 0, 1}, {1, 0, 2}, {1, 1, 3}})); };
    return m;
  }();
  return builders;
}

}  // namespace

GVector sym3_vector(const Rational& c) {
  GVector v(4);
  Gaussian ic(Rational(0), c);
  Gaussian p(1);
  for (int j = 0; j < 4; ++j) {
    v(j) = p;
    p *= ic;
  }
  return v;
}

LimitingExpansion product_fixture(const std::vector<LinearFactor>& factors, std::size_t divisor_count,
                                  std::vector<ExpansionTerm> terms) {
  if (factors.empty()) throw Error(ErrorCode::InvalidDatum, "no factors");
  if (divisor_count < 1 || divisor_count > 2) throw Error(ErrorCode::InvalidDatum, "one or two divisors");
  auto coeffs = [&](const LinearFactor& f) {
    return divisor_count == 1 ? std::vector<Rational>{f.a} : std::vector<Rational>{f.a, f.b};
  };
  HodgeBlock block = weight1_string(coeffs(factors[0]));
  GVector a0 = weight1_vector(factors[0].c);
  bool standard = factors[0].c == 1;
  for (size_t k = 1; k < factors.size(); ++k) {
    block = tensor(block, weight1_string(coeffs(factors[k])));
    a0 = kron_vec(a0, weight1_vector(factors[k].c));
    standard = standard && factors[k].c == 1;
  }
  return from_block(block, a0, std::move(terms), standard);
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [name, builder] : registry()) names.push_back(name);
  return names;
}

LimitingExpansion fixture(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorCode::UnknownFixture, "no fixture named '" + name + "'");
  return it->second();
}

}  // namespace wpdist
