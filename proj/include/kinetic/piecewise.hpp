#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "kinetic/polynomial.hpp"

namespace kinetic {

// Which branch of |p| is active on an interval where p keeps one sign.
enum class SignChoice { kPlus, kMinus };

enum class CombineOp { kAdd, kSub, kMul };

// One maximal subinterval together with the polynomial that equals the
// function there.
struct Piece {
  Polynomial func;
  IntervalT interval;
};

struct TimeValue {
  double time;
  double value;
};

struct Extrema {
  TimeValue min;
  TimeValue max;
};

// Continuous piecewise-polynomial function on a closed horizon. Pieces are
// ordered, share endpoints exactly, cover the horizon seamlessly, and
// adjacent pieces carry distinct polynomials; the internal boundaries are
// the switchpoints, so switchpoint_count() + 1 == pieces().size() always
// holds. Values are immutable once built.
class PiecewiseFunction {
 public:
  // Compacts runs of equal-polynomial pieces (coefficient-wise within 1e-12)
  // and validates every invariant above, including continuity at the
  // surviving boundaries. Throws ContractError when the pieces do not form a
  // legal description.
  static PiecewiseFunction from_pieces(std::vector<Piece> pieces,
                                       const IntervalT& horizon,
                                       double tol = kDefaultTol);

  // Single polynomial viewed as a one-piece function.
  static PiecewiseFunction single(Polynomial f, const IntervalT& horizon);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const IntervalT& horizon() const noexcept { return horizon_; }

  std::size_t switchpoint_count() const noexcept { return pieces_.size() - 1; }
  // Interior boundaries, ascending.
  std::vector<double> switchpoints() const;

  const Piece& piece_at(double t) const;
  double eval(double t) const { return piece_at(t).func.eval(t); }
  double operator()(double t) const { return eval(t); }

  PiecewiseFunction negated() const;

  // Re-runs the construction-time checks; tests call this after every
  // operation that produced the value.
  void check_invariants(double tol = kDefaultTol) const;

 private:
  PiecewiseFunction(std::vector<Piece> pieces, IntervalT horizon)
      : pieces_(std::move(pieces)), horizon_(horizon) {}

  std::vector<Piece> pieces_;
  IntervalT horizon_;
};

// Sign of p on an interval whose open interior contains no root of p,
// decided by one evaluation at the midpoint. Throws ContractError when that
// evaluation sits inside the zero band, since then the precondition cannot
// have held.
SignChoice piece_sign_on(const Polynomial& p, const IntervalT& iv,
                         double tol = kDefaultTol);

// Piecewise description of |p| on the horizon: gaps between consecutive
// roots get p or -p by their interior sign, and same-sign gaps merge, so a
// zero of even multiplicity produces no switchpoint. A constant p never
// consults the root machinery.
PiecewiseFunction abs_pieces(const Polynomial& p, const IntervalT& horizon,
                             double tol = kDefaultTol);

// Pointwise op over two descriptions of the same horizon, built on the
// overlay of both partitions and recompacted. The result's switchpoint set
// is contained in the union of the inputs' switchpoints.
PiecewiseFunction combine(const PiecewiseFunction& F,
                          const PiecewiseFunction& G, CombineOp op,
                          double tol = kDefaultTol);

// signs[0]*F + signs[1]*G + signs[2]*H via two combines; each sign is +1 or
// -1.
PiecewiseFunction combine3(const PiecewiseFunction& F,
                           const PiecewiseFunction& G,
                           const PiecewiseFunction& H,
                           const std::array<int, 3>& signs,
                           double tol = kDefaultTol);

// Global minimum and maximum with the earliest achieving times. Candidates
// on each piece are its endpoints plus the zeros of its derivative; ties
// keep the earliest time.
Extrema extrema_on(const PiecewiseFunction& F, double tol = kDefaultTol);

// Smallest t in the horizon with F(t) <= c (resp. >= c), scanning pieces in
// order and solving piece - c = 0; absent when the condition never holds.
std::optional<double> first_time_leq(const PiecewiseFunction& F, double c,
                                     double tol = kDefaultTol);
std::optional<double> first_time_geq(const PiecewiseFunction& F, double c,
                                     double tol = kDefaultTol);

}  // namespace kinetic
