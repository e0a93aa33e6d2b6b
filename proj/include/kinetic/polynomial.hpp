#pragma once

#include <initializer_list>
#include <vector>

namespace kinetic {

// Default accuracy, in time units, for root isolation and for the residual
// tests derived from it.
inline constexpr double kDefaultTol = 1e-9;

// Hard cap on the degree any arithmetic result may reach. Exceeding it means
// a scenario multiplies polynomials far beyond what bounded-degree motion
// can produce.
inline constexpr int kMaxWorkingDegree = 64;

// Closed interval [lo, hi] on the time axis. Endpoints are finite and
// lo <= hi; a zero-width interval is legal and stands for a single instant.
class IntervalT {
 public:
  IntervalT(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return lo_ + 0.5 * (hi_ - lo_); }
  bool contains(double t) const noexcept { return t >= lo_ && t <= hi_; }
  bool degenerate() const noexcept { return lo_ == hi_; }

  friend bool operator==(const IntervalT& a, const IntervalT& b) noexcept {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  double lo_;
  double hi_;
};

// Univariate real polynomial in canonical form: coefficients stored by
// ascending power with trailing zeros stripped. The zero polynomial keeps an
// empty coefficient vector; it has degree 0 and evaluates to 0 everywhere.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c);

  int degree() const noexcept {
    return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
  }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }

  // Coefficient of t^k; zero beyond the stored degree.
  double coefficient(int k) const noexcept;
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  double eval(double t) const noexcept;
  double operator()(double t) const noexcept { return eval(t); }

  Polynomial derivative() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void canonicalize();

  std::vector<double> coeffs_;
};

// Coefficient-wise equality within an absolute tolerance, missing
// coefficients counting as zero.
bool approx_equal(const Polynomial& a, const Polynomial& b,
                  double atol = 1e-12);

// Residual normalizer for root and zero tests on iv: the largest absolute
// coefficient times max(1, hi^degree).
double scale_on(const Polynomial& p, const IntervalT& iv);

// All distinct real roots of p inside iv, strictly increasing, each accurate
// to tol. Roots closer than tol are merged to one representative, and roots
// of even multiplicity are reported (they are found as derivative zeros
// where |p| <= tol * scale_on(p, iv)). Throws EverywhereZeroError for the
// zero polynomial and NumericalError if bracket refinement fails to
// converge.
std::vector<double> roots_in(const Polynomial& p, const IntervalT& iv,
                             double tol = kDefaultTol);

}  // namespace kinetic
