#include "saltire/hardy.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

namespace saltire {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCoeffTrim = 1e-14;   // relative trim of leading coefficients
constexpr double kPoleEps = 1e-14;     // |den(lambda)| below this is a pole
constexpr double kLogClip = -69.07755278982137;  // log(1e-30)

/// Drop negligible leading (highest-degree) coefficients; all-negligible
/// input becomes the empty vector.
std::vector<cxd> trim(std::vector<cxd> v) {
  double mag = 0.0;
  for (const cxd& c : v) mag = std::max(mag, std::abs(c));
  if (mag == 0.0) return {};
  while (!v.empty() && std::abs(v.back()) <= kCoeffTrim * mag) v.pop_back();
  return v;
}

std::vector<cxd> conv(const std::vector<cxd>& a, const std::vector<cxd>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cxd> out(a.size() + b.size() - 1, cxd(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<cxd> add_poly(const std::vector<cxd>& a,
                          const std::vector<cxd>& b) {
  std::vector<cxd> out(std::max(a.size(), b.size()), cxd(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

cxd horner(const std::vector<cxd>& coeffs, cxd lambda) {
  cxd acc(0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * lambda + *it;
  return acc;
}

/// Interior probes used to pin the unimodular constant of an inner-outer
/// factorisation; scattered so a rational function of moderate degree
/// cannot vanish at all of them.
const cxd kPhaseProbes[] = {cxd(0.3, 0.17), cxd(-0.41, 0.13),
                            cxd(0.05, -0.37), cxd(0.52, 0.08),
                            cxd(-0.2, -0.3)};

}  // namespace

std::vector<cxd> poly_roots(const std::vector<cxd>& coeffs) {
  const std::vector<cxd> p = trim(coeffs);
  const int n = static_cast<int>(p.size()) - 1;
  if (n < 1) return {};
  MatX companion = MatX::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<MatX> solver(companion, /*computeEigenvectors=*/false);
  const VecX ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

RationalFunction::RationalFunction() : num_(), den_{cxd(1.0)} {}

RationalFunction::RationalFunction(std::vector<cxd> num, std::vector<cxd> den)
    : num_(trim(std::move(num))), den_(trim(std::move(den))) {
  if (den_.empty())
    throw ZeroDenominator("rational function with zero denominator");
  // Cancel a common monomial factor (exact zeros only, as produced by
  // shifted-coefficient constructions).
  while (!num_.empty() && den_.size() > 1 && num_.front() == cxd(0.0) &&
         den_.front() == cxd(0.0)) {
    num_.erase(num_.begin());
    den_.erase(den_.begin());
  }
  double mag = 0.0;
  for (const cxd& c : den_) mag = std::max(mag, std::abs(c));
  for (cxd& c : num_) c /= mag;
  for (cxd& c : den_) c /= mag;
}

RationalFunction RationalFunction::constant(cxd c) {
  return RationalFunction({c}, {cxd(1.0)});
}

RationalFunction RationalFunction::polynomial(std::vector<cxd> coeffs) {
  return RationalFunction(std::move(coeffs), {cxd(1.0)});
}

cxd RationalFunction::operator()(cxd lambda) const {
  const cxd d = horner(den_, lambda);
  if (std::abs(d) < kPoleEps)
    throw PoleError("rational function evaluated at a pole");
  return num_.empty() ? cxd(0.0) : horner(num_, lambda) / d;
}

bool RationalFunction::h_infinity(double boundary_band) const {
  for (const cxd& r : poly_roots(den_))
    if (std::abs(r) <= 1.0 + boundary_band) return false;
  return true;
}

RationalFunction operator+(const RationalFunction& a,
                           const RationalFunction& b) {
  return RationalFunction(
      add_poly(conv(a.num_, b.den_), conv(b.num_, a.den_)),
      conv(a.den_, b.den_));
}

RationalFunction operator-(const RationalFunction& a,
                           const RationalFunction& b) {
  return a + (-b);
}

RationalFunction operator*(const RationalFunction& a,
                           const RationalFunction& b) {
  return RationalFunction(conv(a.num_, b.num_), conv(a.den_, b.den_));
}

RationalFunction operator*(cxd c, const RationalFunction& a) {
  std::vector<cxd> num = a.num_;
  for (cxd& x : num) x *= c;
  return RationalFunction(std::move(num), a.den_);
}

RationalFunction RationalFunction::operator-() const {
  return cxd(-1.0) * (*this);
}

cxd InnerFactor::operator()(cxd lambda) const {
  cxd acc = constant;
  for (const cxd& a : zeros) {
    const cxd d = cxd(1.0) - std::conj(a) * lambda;
    if (std::abs(d) < kPoleEps)
      throw PoleError("Blaschke factor evaluated at a pole");
    acc *= (lambda - a) / d;
  }
  return acc;
}

OuterFunction::OuterFunction(std::vector<double> log_modulus)
    : log_modulus_(std::move(log_modulus)) {
  if (log_modulus_.empty())
    throw ShapeMismatch("outer function needs at least one boundary sample");
  for (double& v : log_modulus_)
    v = std::isfinite(v) ? std::max(v, kLogClip) : kLogClip;
}

OuterFunction OuterFunction::constant(double modulus, int grid) {
  return OuterFunction(
      std::vector<double>(static_cast<std::size_t>(std::max(grid, 1)),
                          modulus > 0.0 ? std::log(modulus) : kLogClip));
}

OuterFunction OuterFunction::from_log_modulus(
    const std::function<double(double)>& log_abs, int grid) {
  const int g = std::max(grid, 1);
  std::vector<double> samples(static_cast<std::size_t>(g));
  for (int k = 0; k < g; ++k)
    samples[static_cast<std::size_t>(k)] = log_abs(2.0 * kPi * k / g);
  return OuterFunction(std::move(samples));
}

OuterFunction OuterFunction::exact_product(
    double log_scale, std::vector<std::pair<cxd, double>> factors) {
  OuterFunction outer(std::vector<double>{0.0});
  outer.log_scale_ = log_scale;
  outer.factors_ = std::move(factors);
  return outer;
}

cxd OuterFunction::operator()(cxd lambda) const {
  if (std::abs(lambda) >= 1.0)
    throw PoleError("outer function evaluated outside the open unit disc");
  cxd log_acc(log_scale_, 0.0);
  for (const auto& [c, w] : factors_)
    log_acc += w * std::log(cxd(1.0) - c * lambda);
  const int g = grid_size();
  cxd acc(0.0);
  for (int k = 0; k < g; ++k) {
    const double theta = 2.0 * kPi * k / g;
    const cxd w = std::polar(1.0, theta);
    acc += (w + lambda) / (w - lambda) * log_modulus_[static_cast<std::size_t>(k)];
  }
  return std::exp(acc / static_cast<double>(g) + log_acc);
}

OuterFunction outer_sqrt(const OuterFunction& g) {
  std::vector<double> halved = g.log_modulus();
  for (double& v : halved) v *= 0.5;
  OuterFunction root(std::move(halved));
  root.log_scale_ = 0.5 * g.log_scale_;
  root.factors_ = g.factors_;
  for (auto& [c, w] : root.factors_) w *= 0.5;
  return root;
}

std::pair<InnerFactor, OuterFunction> inner_outer_factorize(
    const RationalFunction& f, double boundary_band, int grid) {
  (void)grid;  // retained in the signature; the construction is exact
  if (f.num_degree() < 0)
    throw ZeroFunction("inner-outer factorisation of the zero function");
  // Trim with the same rule as poly_roots so the leading coefficients
  // below correspond to the root lists.
  const std::vector<cxd> num = trim(f.num());
  const std::vector<cxd> den = trim(f.den());
  const std::vector<cxd> poles = poly_roots(den);
  for (const cxd& r : poles)
    if (std::abs(r) <= 1.0 + boundary_band)
      throw PoleInDisc("function has a pole in the closed unit disc");

  // Closed-form split: zeros strictly inside the disc go to the Blaschke
  // part and reappear reflected in the outer part as (1 - conj(a) lambda);
  // all other zeros a (boundary zeros included) contribute (1 - lambda/a),
  // and poles b contribute (1 - lambda/b)^{-1}.  Every coefficient has
  // modulus <= 1, and the leftover positive constant makes the moduli of
  // both sides agree on the circle.
  InnerFactor inner{cxd(1.0), {}};
  std::vector<std::pair<cxd, double>> factors;
  double log_scale = std::log(std::abs(num.back()));
  for (const cxd& r : poly_roots(num)) {
    if (std::abs(r) < 1.0) {
      inner.zeros.push_back(r);
      factors.emplace_back(std::conj(r), 1.0);
    } else {
      factors.emplace_back(cxd(1.0) / r, 1.0);
      log_scale += std::log(std::abs(r));
    }
  }
  log_scale -= std::log(std::abs(den.back()));
  for (const cxd& r : poles) {
    factors.emplace_back(cxd(1.0) / r, -1.0);
    log_scale -= std::log(std::abs(r));
  }
  OuterFunction outer = OuterFunction::exact_product(log_scale, std::move(factors));

  // Pin the unimodular constant by matching the phase of f at an interior
  // probe; the ratio should already have modulus near 1, so prefer a probe
  // where it does and fall back to the best available otherwise.
  cxd best(1.0);
  double best_gap = std::numeric_limits<double>::infinity();
  for (const cxd& p : kPhaseProbes) {
    const cxd parts = inner(p) * outer(p);
    if (std::abs(parts) == 0.0) continue;
    const cxd ratio = f(p) / parts;
    if (!std::isfinite(std::abs(ratio)) || std::abs(ratio) == 0.0) continue;
    const double gap = std::abs(std::abs(ratio) - 1.0);
    if (gap < best_gap) {
      best_gap = gap;
      best = ratio / std::abs(ratio);
    }
    if (gap < 1e-6) break;
  }
  inner.constant = best;
  return {std::move(inner), std::move(outer)};
}

struct Evaluable::Node {
  enum class Op { kLeaf, kAdd, kSub, kMul, kDiv, kNeg };
  Op op = Op::kLeaf;
  std::variant<cxd, RationalFunction, InnerFactor, OuterFunction,
               std::function<cxd(cxd)>>
      leaf = cxd(0.0);
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  cxd eval(cxd lambda) const {
    switch (op) {
      case Op::kLeaf:
        return std::visit(
            [lambda](const auto& f) -> cxd {
              using T = std::decay_t<decltype(f)>;
              if constexpr (std::is_same_v<T, cxd>)
                return f;
              else
                return f(lambda);
            },
            leaf);
      case Op::kAdd:
        return lhs->eval(lambda) + rhs->eval(lambda);
      case Op::kSub:
        return lhs->eval(lambda) - rhs->eval(lambda);
      case Op::kMul:
        return lhs->eval(lambda) * rhs->eval(lambda);
      case Op::kDiv: {
        const cxd den = rhs->eval(lambda);
        if (std::abs(den) < kPoleEps)
          throw ZeroDenominator(
              "evaluable quotient with vanishing denominator");
        return lhs->eval(lambda) / den;
      }
      case Op::kNeg:
        return -lhs->eval(lambda);
    }
    throw Error("unreachable evaluable node kind");
  }
};

namespace {

template <typename Leaf>
std::shared_ptr<const Evaluable::Node> make_leaf(Leaf leaf) {
  auto node = std::make_shared<Evaluable::Node>();
  node->leaf = std::move(leaf);
  return node;
}

}  // namespace

Evaluable::Evaluable() : Evaluable(cxd(0.0)) {}
Evaluable::Evaluable(cxd c) : node_(make_leaf(c)) {}
Evaluable::Evaluable(double c) : Evaluable(cxd(c)) {}
Evaluable::Evaluable(RationalFunction f) : node_(make_leaf(std::move(f))) {}
Evaluable::Evaluable(InnerFactor f) : node_(make_leaf(std::move(f))) {}
Evaluable::Evaluable(OuterFunction f) : node_(make_leaf(std::move(f))) {}

Evaluable Evaluable::from_function(std::function<cxd(cxd)> f) {
  return Evaluable(make_leaf(std::move(f)));
}

Evaluable::Evaluable(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

cxd Evaluable::operator()(cxd lambda) const { return node_->eval(lambda); }

namespace {

std::shared_ptr<const Evaluable::Node> make_branch(
    Evaluable::Node::Op op, std::shared_ptr<const Evaluable::Node> lhs,
    std::shared_ptr<const Evaluable::Node> rhs) {
  auto node = std::make_shared<Evaluable::Node>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

}  // namespace

Evaluable operator+(const Evaluable& a, const Evaluable& b) {
  return Evaluable(make_branch(Evaluable::Node::Op::kAdd, a.node_, b.node_));
}

Evaluable operator-(const Evaluable& a, const Evaluable& b) {
  return Evaluable(make_branch(Evaluable::Node::Op::kSub, a.node_, b.node_));
}

Evaluable operator*(const Evaluable& a, const Evaluable& b) {
  return Evaluable(make_branch(Evaluable::Node::Op::kMul, a.node_, b.node_));
}

Evaluable operator/(const Evaluable& a, const Evaluable& b) {
  return Evaluable(make_branch(Evaluable::Node::Op::kDiv, a.node_, b.node_));
}

Evaluable Evaluable::operator-() const {
  return Evaluable(make_branch(Node::Op::kNeg, node_, nullptr));
}

std::vector<cxd> boundary_profile(const Evaluable& f, int grid_size,
                                  double shrink) {
  const int g = std::max(grid_size, 1);
  const double r = 1.0 - shrink;
  std::vector<cxd> out(static_cast<std::size_t>(g));
  for (int k = 0; k < g; ++k)
    out[static_cast<std::size_t>(k)] = f(std::polar(r, 2.0 * kPi * k / g));
  return out;
}

}  // namespace saltire
