#include "kinetic/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kinetic/errors.hpp"

namespace kinetic {

IntervalT::IntervalT(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ContractError("interval endpoints must be finite");
  }
  if (lo > hi) {
    throw ContractError("interval is empty: lo " + std::to_string(lo) +
                        " > hi " + std::to_string(hi));
  }
}

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : coeffs_(coeffs) {
  canonicalize();
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  canonicalize();
}

Polynomial Polynomial::constant(double c) { return Polynomial{c}; }

void Polynomial::canonicalize() {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) {
      throw ContractError("polynomial coefficients must be finite");
    }
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) {
    coeffs_.pop_back();
  }
  // normalize -0.0 so serialized coefficients are stable
  for (double& c : coeffs_) {
    if (c == 0.0) c = 0.0;
  }
  if (degree() > kMaxWorkingDegree) {
    throw DegreeOverflowError("polynomial degree " + std::to_string(degree()) +
                              " exceeds working cap " +
                              std::to_string(kMaxWorkingDegree));
  }
}

double Polynomial::coefficient(int k) const noexcept {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double Polynomial::eval(double t) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator-() const {
  std::vector<double> c(coeffs_);
  for (double& v : c) v = -v;
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = a.coefficient(static_cast<int>(k)) +
           b.coefficient(static_cast<int>(k));
  }
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = a.coefficient(static_cast<int>(k)) -
           b.coefficient(static_cast<int>(k));
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial{};
  const int result_degree = a.degree() + b.degree();
  if (result_degree > kMaxWorkingDegree) {
    throw DegreeOverflowError(
        "product degree " + std::to_string(result_degree) +
        " exceeds working cap " + std::to_string(kMaxWorkingDegree));
  }
  std::vector<double> c(static_cast<std::size_t>(result_degree) + 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(std::move(c));
}

bool approx_equal(const Polynomial& a, const Polynomial& b, double atol) {
  const int top = std::max(a.degree(), b.degree());
  for (int k = 0; k <= top; ++k) {
    if (std::abs(a.coefficient(k) - b.coefficient(k)) > atol) return false;
  }
  return true;
}

double scale_on(const Polynomial& p, const IntervalT& iv) {
  double maxc = 0.0;
  for (double c : p.coefficients()) maxc = std::max(maxc, std::abs(c));
  return maxc * std::max(1.0, std::pow(std::abs(iv.hi()), p.degree()));
}

namespace {

constexpr int kMaxBisectIterations = 200;

// Bisection on a strict sign change. fa is p(a), nonzero and of opposite
// sign to p(b). Stops once the bracket is narrower than width_stop or the
// midpoint is no longer representable strictly inside it.
double bisect_root(const Polynomial& p, double a, double b, double fa,
                   double width_stop) {
  for (int iter = 0; iter < kMaxBisectIterations; ++iter) {
    const double m = a + 0.5 * (b - a);
    if (m == a || m == b) return m;
    const double fm = p.eval(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
    if (b - a <= width_stop) return a + 0.5 * (b - a);
  }
  throw NumericalError("root refinement did not converge", a, b);
}

std::vector<double> roots_impl(const Polynomial& p, const IntervalT& iv,
                               double tol) {
  const int deg = p.degree();
  const double zero_thresh = tol * scale_on(p, iv);
  std::vector<double> out;

  if (iv.degenerate()) {
    if (std::abs(p.eval(iv.lo())) <= zero_thresh) out.push_back(iv.lo());
    return out;
  }
  if (deg == 0) return out;  // nonzero constant

  // Points where |p| <= zero_thresh counts as a zero outright: the interval
  // ends plus every interior stationary point. The stationary points are
  // what catch zeros of even multiplicity, which never change sign.
  std::vector<double> probe = {iv.lo(), iv.hi()};

  if (deg == 1) {
    const double r = -p.coefficient(0) / p.coefficient(1);
    if (iv.contains(r)) out.push_back(r);
  } else if (deg == 2) {
    const double c2 = p.coefficient(2);
    const double c1 = p.coefficient(1);
    const double c0 = p.coefficient(0);
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc > 0.0) {
      // classic cancellation-free form
      const double s = c1 >= 0.0 ? 1.0 : -1.0;
      const double q = -0.5 * (c1 + s * std::sqrt(disc));
      const double r1 = q / c2;
      const double r2 = q != 0.0 ? c0 / q : r1;
      if (iv.contains(r1)) out.push_back(r1);
      if (iv.contains(r2)) out.push_back(r2);
    } else {
      // vertex is the only place a real zero (double root or near-touch)
      // can hide
      const double v = -c1 / (2.0 * c2);
      if (iv.contains(v)) probe.push_back(v);
    }
  } else {
    // p is strictly monotone between consecutive stationary points, so one
    // strict sign change per gap pins down exactly one crossing.
    const std::vector<double> crit = roots_impl(p.derivative(), iv, tol);
    std::vector<double> breaks;
    breaks.reserve(crit.size() + 2);
    breaks.push_back(iv.lo());
    for (double c : crit) {
      if (c > breaks.back() && c < iv.hi()) breaks.push_back(c);
    }
    breaks.push_back(iv.hi());
    probe.insert(probe.end(), crit.begin(), crit.end());

    const double width_stop = tol * 1e-3;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      const double a = breaks[k];
      const double b = breaks[k + 1];
      const double fa = p.eval(a);
      const double fb = p.eval(b);
      if (fa != 0.0 && fb != 0.0 && (fa > 0.0) != (fb > 0.0)) {
        out.push_back(bisect_root(p, a, b, fa, width_stop));
      }
    }
  }

  for (double t : probe) {
    if (std::abs(p.eval(t)) <= zero_thresh) out.push_back(t);
  }

  for (double& r : out) r = std::clamp(r, iv.lo(), iv.hi());
  std::sort(out.begin(), out.end());
  std::vector<double> merged;
  for (double r : out) {
    if (merged.empty()) {
      merged.push_back(r);
      continue;
    }
    const double prev = merged.back();
    if (r - prev < tol) continue;
    // near an even-multiplicity zero, rounding noise can make p wobble
    // across zero and yield a cluster of candidates; if p is still inside
    // the zero band between two candidates they witness the same zero
    if (std::abs(p.eval(0.5 * (prev + r))) <= zero_thresh) continue;
    merged.push_back(r);
  }
  return merged;
}

}  // namespace

std::vector<double> roots_in(const Polynomial& p, const IntervalT& iv,
                             double tol) {
  if (tol <= 0.0 || !std::isfinite(tol)) {
    throw ContractError("root tolerance must be positive and finite");
  }
  if (p.is_zero()) {
    throw EverywhereZeroError(
        "root isolation asked for the zero polynomial, which vanishes "
        "everywhere");
  }
  return roots_impl(p, iv, tol);
}

}  // namespace kinetic
