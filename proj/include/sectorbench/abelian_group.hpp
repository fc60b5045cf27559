#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sectorbench/matrix.hpp"

namespace sectorbench {

/// Z_{n_1} x ... x Z_{n_r}; elements are indexed in mixed radix with the last factor fastest.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    for (int f : factors_) {
      if (f < 2) throw std::invalid_argument("invariant factors must be at least 2");
    }
  }

  const std::vector<int>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }

  Index order() const {
    Index n = 1;
    for (int f : factors_) n *= f;
    return n;
  }

  std::vector<int> element(Index idx) const {
    std::vector<int> e(factors_.size());
    for (std::size_t j = factors_.size(); j-- > 0;) {
      e[j] = static_cast<int>(idx % factors_[j]);
      idx /= factors_[j];
    }
    return e;
  }

  Index index(const std::vector<int>& e) const {
    if (e.size() != factors_.size()) throw std::invalid_argument("group element has the wrong length");
    Index idx = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      idx = idx * factors_[j] + ((e[j] % factors_[j]) + factors_[j]) % factors_[j];
    }
    return idx;
  }

  Index add(Index a, Index b) const {
    auto x = element(a), y = element(b);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += y[j];
    return index(x);
  }

  Index negate(Index a) const {
    auto x = element(a);
    for (auto& v : x) v = -v;
    return index(x);
  }

  Index generator(std::size_t j) const {
    std::vector<int> e(factors_.size(), 0);
    e[j] = 1;
    return index(e);
  }

  /// <gamma, g> = exp(2 pi i sum_j gamma_j g_j / n_j), the dual identified with the group itself.
  Complex pairing(Index gamma, Index g) const {
    const auto a = element(gamma), b = element(g);
    double phase = 0.0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      phase += static_cast<double>((static_cast<long long>(a[j]) * b[j]) % factors_[j]) / factors_[j];
    }
    return std::polar(1.0, kTwoPi * phase);
  }

  std::string label(Index idx) const {
    std::string s = "(";
    const auto e = element(idx);
    for (std::size_t j = 0; j < e.size(); ++j) s += (j ? "," : "") + std::to_string(e[j]);
    return s + ")";
  }

 private:
  std::vector<int> factors_;
};

/// Normalized unimodular 2-cocycle given by its full table.
class TwoCocycle {
 public:
  TwoCocycle() = default;
  TwoCocycle(FiniteAbelianGroup g, MatElem table) : group_(std::move(g)), table_(std::move(table)) {}

  static TwoCocycle trivial(const FiniteAbelianGroup& g) {
    return TwoCocycle(g, MatElem::Ones(g.order(), g.order()));
  }

  /// Bilinear cocycle exp(2 pi i sum_{j,k} m_jk a_j b_k / gcd(n_j, n_k)).
  static TwoCocycle bilinear(const FiniteAbelianGroup& g, const std::vector<std::vector<int>>& m) {
    const std::size_t r = g.rank();
    if (m.size() != r) throw std::invalid_argument("exponent matrix must be rank x rank");
    const Index n = g.order();
    MatElem t(n, n);
    for (Index a = 0; a < n; ++a) {
      const auto x = g.element(a);
      for (Index b = 0; b < n; ++b) {
        const auto y = g.element(b);
        double phase = 0.0;
        for (std::size_t j = 0; j < r; ++j) {
          if (m[j].size() != r) throw std::invalid_argument("exponent matrix must be rank x rank");
          for (std::size_t k = 0; k < r; ++k) {
            const int d = std::gcd(g.factors()[j], g.factors()[k]);
            phase += static_cast<double>((static_cast<long long>(m[j][k]) * x[j] * y[k]) % d) / d;
          }
        }
        t(a, b) = std::polar(1.0, kTwoPi * phase);
      }
    }
    return TwoCocycle(g, std::move(t));
  }

  const FiniteAbelianGroup& group() const { return group_; }
  const MatElem& table() const { return table_; }
  Complex operator()(Index a, Index b) const { return table_(a, b); }

  /// Largest violation of unimodularity, normalization and the cocycle identity.
  double defect() const {
    const Index n = group_.order();
    if (table_.rows() != n || table_.cols() != n) return 1.0;
    double worst = 0.0;
    for (Index a = 0; a < n; ++a) {
      worst = std::max({worst, std::abs(table_(0, a) - 1.0), std::abs(table_(a, 0) - 1.0)});
      for (Index b = 0; b < n; ++b) {
        worst = std::max(worst, std::abs(std::abs(table_(a, b)) - 1.0));
        const Index ab = group_.add(a, b);
        for (Index c = 0; c < n; ++c) {
          const Complex lhs = table_(a, b) * table_(ab, c);
          const Complex rhs = table_(b, c) * table_(a, group_.add(b, c));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
    return worst;
  }

  void validate(const ToleranceContext& ctx) const {
    if (!table_.allFinite()) throw InvalidCocycle("cocycle table has non-finite entries");
    const double d = defect();
    if (d > ctx.eq_tol) throw InvalidCocycle("cocycle identity fails (defect " + std::to_string(d) + ")");
  }

  Complex permutator(Index a, Index b) const { return table_(a, b) / table_(b, a); }

  /// lambda with omega(a,b) = lambda(a) lambda(b) / lambda(a+b), if one exists.
  ///
  /// An abelian twisted group algebra is commutative exactly when omega is
  /// symmetric; its one-dimensional representations then supply lambda.
  std::optional<std::vector<Complex>> coboundary_witness(const ToleranceContext& ctx) const {
    const Index n = group_.order();
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        if (std::abs(permutator(a, b) - 1.0) > ctx.eq_tol) return std::nullopt;
      }
    std::vector<MatElem> left(static_cast<std::size_t>(n), MatElem::Zero(n, n));
    for (Index a = 0; a < n; ++a)
      for (Index e = 0; e < n; ++e) left[static_cast<std::size_t>(a)](group_.add(a, e), e) = table_(a, e);
    Rng rng(29);
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatElem mix = MatElem::Zero(n, n);
    for (Index a = 0; a < n; ++a) mix += Complex(gauss(rng), gauss(rng)) * left[static_cast<std::size_t>(a)];
    Eigen::ComplexEigenSolver<MatElem> es(mix);
    const ColumnVec v = es.eigenvectors().col(0);
    Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    std::vector<Complex> mu(static_cast<std::size_t>(n));
    for (Index a = 0; a < n; ++a) {
      const ColumnVec w = left[static_cast<std::size_t>(a)] * v;
      mu[static_cast<std::size_t>(a)] = w(pivot) / v(pivot);
    }
    // L_a L_b = omega(a,b) L_{a+b} on a common eigenvector gives mu(a)mu(b) = omega(a,b) mu(a+b)
    std::vector<Complex> lambda(mu.size());
    for (std::size_t a = 0; a < mu.size(); ++a) lambda[a] = mu[a] / std::abs(mu[a]);
    double worst = 0.0;
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        const Complex lhs = lambda[static_cast<std::size_t>(a)] * lambda[static_cast<std::size_t>(b)] /
                            lambda[static_cast<std::size_t>(group_.add(a, b))];
        worst = std::max(worst, std::abs(lhs - table_(a, b)));
      }
    if (worst > 1e3 * ctx.eq_tol) throw NumericalBreakdown("symmetric cocycle without a trivializing function");
    return lambda;
  }

  bool is_coboundary(const ToleranceContext& ctx) const { return coboundary_witness(ctx).has_value(); }

 private:
  FiniteAbelianGroup group_;
  MatElem table_;
};

}  // namespace sectorbench
