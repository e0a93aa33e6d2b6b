#include "kinetic/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "kinetic/errors.hpp"

namespace kinetic {

namespace {

double continuity_threshold(const Piece& a, const Piece& b, double tol) {
  const IntervalT span(std::min(a.interval.lo(), b.interval.lo()),
                       std::max(a.interval.hi(), b.interval.hi()));
  return tol * std::max({1.0, scale_on(a.func, span), scale_on(b.func, span)});
}

}  // namespace

PiecewiseFunction PiecewiseFunction::from_pieces(std::vector<Piece> pieces,
                                                const IntervalT& horizon,
                                                double tol) {
  if (pieces.empty()) {
    throw ContractError("piecewise function needs at least one piece");
  }

  // compact runs of equal polynomials before validating adjacency
  std::vector<Piece> compact;
  compact.reserve(pieces.size());
  for (Piece& p : pieces) {
    if (!compact.empty() && approx_equal(compact.back().func, p.func)) {
      compact.back().interval =
          IntervalT(compact.back().interval.lo(), p.interval.hi());
    } else {
      compact.push_back(std::move(p));
    }
  }

  PiecewiseFunction f(std::move(compact), horizon);
  f.check_invariants(tol);
  return f;
}

PiecewiseFunction PiecewiseFunction::single(Polynomial f,
                                            const IntervalT& horizon) {
  return from_pieces({Piece{std::move(f), horizon}}, horizon);
}

void PiecewiseFunction::check_invariants(double tol) const {
  if (pieces_.empty()) {
    throw ContractError("piecewise function has no pieces");
  }
  if (pieces_.front().interval.lo() != horizon_.lo() ||
      pieces_.back().interval.hi() != horizon_.hi()) {
    throw ContractError("pieces do not span the horizon");
  }
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    const IntervalT& iv = pieces_[k].interval;
    const Piece& prev = pieces_[k - 1];
    if (prev.interval.hi() != iv.lo()) {
      throw ContractError("pieces " + std::to_string(k - 1) + " and " +
                          std::to_string(k) +
                          " do not share their boundary exactly");
    }
    if (approx_equal(prev.func, pieces_[k].func)) {
      throw ContractError("adjacent pieces " + std::to_string(k - 1) +
                          " and " + std::to_string(k) +
                          " carry the same polynomial; description is not "
                          "maximal");
    }
    const double boundary = iv.lo();
    const double jump =
        std::abs(prev.func.eval(boundary) - pieces_[k].func.eval(boundary));
    if (jump > continuity_threshold(prev, pieces_[k], tol)) {
      throw ContractError("function is discontinuous at boundary t=" +
                          std::to_string(boundary));
    }
  }
}

std::vector<double> PiecewiseFunction::switchpoints() const {
  std::vector<double> sp;
  sp.reserve(switchpoint_count());
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    sp.push_back(pieces_[k].interval.lo());
  }
  return sp;
}

const Piece& PiecewiseFunction::piece_at(double t) const {
  // a little slack at the ends: grid generators may land an ulp outside
  const double slack = 1e-12 * std::max(1.0, std::abs(horizon_.hi()));
  if (t < horizon_.lo() - slack || t > horizon_.hi() + slack) {
    throw ContractError("evaluation time " + std::to_string(t) +
                        " lies outside the horizon");
  }
  for (std::size_t k = 0; k + 1 < pieces_.size(); ++k) {
    if (t <= pieces_[k].interval.hi()) return pieces_[k];
  }
  return pieces_.back();
}

PiecewiseFunction PiecewiseFunction::negated() const {
  std::vector<Piece> neg;
  neg.reserve(pieces_.size());
  for (const Piece& p : pieces_) {
    neg.push_back(Piece{-p.func, p.interval});
  }
  return PiecewiseFunction(std::move(neg), horizon_);
}

SignChoice piece_sign_on(const Polynomial& p, const IntervalT& iv,
                         double tol) {
  const double mid = iv.midpoint();
  const double v = p.eval(mid);
  if (!iv.degenerate() && std::abs(v) <= tol * scale_on(p, iv)) {
    throw ContractError(
        "sign witness at the midpoint is inside the zero band; the interval "
        "interior must be root-free");
  }
  return v >= 0.0 ? SignChoice::kPlus : SignChoice::kMinus;
}

PiecewiseFunction abs_pieces(const Polynomial& p, const IntervalT& horizon,
                             double tol) {
  if (p.is_constant()) {
    const double v = p.eval(horizon.lo());
    return PiecewiseFunction::single(v >= 0.0 ? p : -p, horizon);
  }
  if (horizon.degenerate()) {
    const double v = p.eval(horizon.lo());
    return PiecewiseFunction::single(v >= 0.0 ? p : -p, horizon);
  }

  const std::vector<double> roots = roots_in(p, horizon, tol);

  // Breakpoints are the interior roots, padded with the horizon ends. Roots
  // hugging an endpoint closer than tol are dropped rather than allowed to
  // create sliver gaps the sign witness cannot decide.
  std::vector<double> breaks;
  breaks.reserve(roots.size() + 2);
  breaks.push_back(horizon.lo());
  for (double r : roots) {
    if (r - breaks.back() > tol && horizon.hi() - r > tol) breaks.push_back(r);
  }
  breaks.push_back(horizon.hi());

  std::vector<Piece> pieces;
  pieces.reserve(breaks.size() - 1);
  const Polynomial neg = -p;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const IntervalT gap(breaks[k], breaks[k + 1]);
    const SignChoice s = piece_sign_on(p, gap, tol);
    pieces.push_back(Piece{s == SignChoice::kPlus ? p : neg, gap});
  }
  // from_pieces merges the same-sign neighbors, which is what keeps
  // even-multiplicity zeros from showing up as switchpoints
  return PiecewiseFunction::from_pieces(std::move(pieces), horizon, tol);
}

PiecewiseFunction combine(const PiecewiseFunction& F,
                          const PiecewiseFunction& G, CombineOp op,
                          double tol) {
  if (!(F.horizon() == G.horizon())) {
    throw ContractError("combine needs both functions on one horizon");
  }
  const IntervalT& horizon = F.horizon();

  const auto apply = [op](const Polynomial& a, const Polynomial& b) {
    switch (op) {
      case CombineOp::kAdd:
        return a + b;
      case CombineOp::kSub:
        return a - b;
      case CombineOp::kMul:
        return a * b;
    }
    throw ContractError("unknown combine op");
  };

  if (horizon.degenerate()) {
    return PiecewiseFunction::single(
        apply(F.pieces().front().func, G.pieces().front().func), horizon);
  }

  // overlay both partitions; boundaries closer than tol collapse onto the
  // earlier one, with the horizon ends always kept
  std::vector<double> bounds;
  bounds.reserve(F.pieces().size() + G.pieces().size() + 1);
  for (const auto& src : {std::cref(F), std::cref(G)}) {
    for (double s : src.get().switchpoints()) bounds.push_back(s);
  }
  std::sort(bounds.begin(), bounds.end());
  std::vector<double> cells;
  cells.push_back(horizon.lo());
  for (double b : bounds) {
    if (b - cells.back() > tol && horizon.hi() - b > tol) cells.push_back(b);
  }
  cells.push_back(horizon.hi());

  std::vector<Piece> pieces;
  pieces.reserve(cells.size() - 1);
  for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
    const IntervalT cell(cells[k], cells[k + 1]);
    const double mid = cell.midpoint();
    pieces.push_back(
        Piece{apply(F.piece_at(mid).func, G.piece_at(mid).func), cell});
  }
  return PiecewiseFunction::from_pieces(std::move(pieces), horizon, tol);
}

PiecewiseFunction combine3(const PiecewiseFunction& F,
                           const PiecewiseFunction& G,
                           const PiecewiseFunction& H,
                           const std::array<int, 3>& signs, double tol) {
  for (int s : signs) {
    if (s != 1 && s != -1) {
      throw ContractError("combine3 signs must be +1 or -1");
    }
  }
  const PiecewiseFunction first =
      combine(signs[0] == 1 ? F : F.negated(), G,
              signs[1] == 1 ? CombineOp::kAdd : CombineOp::kSub, tol);
  return combine(first, H, signs[2] == 1 ? CombineOp::kAdd : CombineOp::kSub,
                 tol);
}

Extrema extrema_on(const PiecewiseFunction& F, double tol) {
  bool seeded = false;
  Extrema ext{};

  const auto consider = [&](double t, double v) {
    if (!seeded) {
      ext.min = TimeValue{t, v};
      ext.max = TimeValue{t, v};
      seeded = true;
      return;
    }
    if (v < ext.min.value) ext.min = TimeValue{t, v};
    if (v > ext.max.value) ext.max = TimeValue{t, v};
  };

  for (const Piece& piece : F.pieces()) {
    std::vector<double> candidates = {piece.interval.lo()};
    if (piece.func.degree() >= 1 && !piece.interval.degenerate()) {
      // stationary points; the derivative of a non-constant polynomial is
      // never identically zero
      for (double r : roots_in(piece.func.derivative(), piece.interval, tol)) {
        candidates.push_back(r);
      }
    }
    candidates.push_back(piece.interval.hi());
    std::sort(candidates.begin(), candidates.end());
    for (double t : candidates) consider(t, piece.func.eval(t));
  }
  return ext;
}

namespace {

std::optional<double> first_crossing(const PiecewiseFunction& F, double c,
                                     bool satisfied_at_start, double tol) {
  if (satisfied_at_start) return F.horizon().lo();
  for (const Piece& piece : F.pieces()) {
    const Polynomial shifted = piece.func - Polynomial::constant(c);
    if (shifted.is_zero()) {
      // the function sits exactly on the level across this whole piece
      return piece.interval.lo();
    }
    const std::vector<double> roots = roots_in(shifted, piece.interval, tol);
    if (!roots.empty()) return roots.front();
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> first_time_leq(const PiecewiseFunction& F, double c,
                                     double tol) {
  // once the start is above the level, the first time at or below it is the
  // first crossing of the level itself
  return first_crossing(F, c, F.eval(F.horizon().lo()) <= c, tol);
}

std::optional<double> first_time_geq(const PiecewiseFunction& F, double c,
                                     double tol) {
  return first_crossing(F, c, F.eval(F.horizon().lo()) >= c, tol);
}

}  // namespace kinetic
