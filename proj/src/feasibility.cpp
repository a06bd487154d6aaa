#include "vk/feasibility.hpp"

#include "vk/error.hpp"

namespace vk {

namespace {

class Tableau {
public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), width_(cols + 1), cells_(rows * (cols + 1)) {}

  Rational& operator()(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }
  std::size_t rhs() const { return width_ - 1; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Rational inv = 1 / (*this)(pr, pc);
    for (std::size_t c = 0; c < width_; ++c) (*this)(pr, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const Rational f = (*this)(r, pc);
      if (f == 0) continue;
      for (std::size_t c = 0; c < width_; ++c) {
        if ((*this)(pr, c) != 0) (*this)(r, c) -= f * (*this)(pr, c);
      }
    }
  }

private:
  std::size_t rows_;
  std::size_t width_;
  std::vector<Rational> cells_;
};

}  // namespace

FeasibilityResult solve_feasibility(const LinearSystem& sys) {
  const std::size_t m = sys.rows;
  const std::size_t n = sys.cols;
  if (sys.a.size() != m * n || sys.b.size() != m) throw ArgumentError("malformed linear system");

  // Columns 0..n-1 are x, n..n+m-1 the artificials; rows with b < 0 are
  // negated so the artificial basis starts feasible.
  std::vector<int> sign(m, 1);
  Tableau t(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    if (sys.b[r] < 0) sign[r] = -1;
    for (std::size_t c = 0; c < n; ++c) t(r, c) = sign[r] * sys.at(r, c);
    t(r, n + r) = 1;
    t(r, t.rhs()) = sign[r] * sys.b[r];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

  auto cost = [n](std::size_t col) { return col >= n ? Rational(1) : Rational(0); };

  FeasibilityResult result;
  while (true) {
    // Bland: the lowest-index column with negative reduced cost enters.
    std::size_t entering = n + m;
    for (std::size_t c = 0; c < n + m && entering == n + m; ++c) {
      Rational reduced = cost(c);
      for (std::size_t r = 0; r < m; ++r) {
        if (t(r, c) != 0) reduced -= cost(basis[r]) * t(r, c);
      }
      if (reduced < 0) entering = c;
    }
    if (entering == n + m) break;

    std::size_t leaving = m;
    Rational best_ratio;
    for (std::size_t r = 0; r < m; ++r) {
      if (t(r, entering) <= 0) continue;
      const Rational ratio = t(r, t.rhs()) / t(r, entering);
      if (leaving == m || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    // The phase-one objective is bounded below by zero, so some row always
    // limits the step.
    if (leaving == m) throw Error("phase-one simplex found an unbounded direction");
    t.pivot(leaving, entering);
    basis[leaving] = entering;
    ++result.pivots;
  }

  Rational objective = 0;
  for (std::size_t r = 0; r < m; ++r) objective += cost(basis[r]) * t(r, t.rhs());

  if (objective == 0) {
    result.feasible = true;
    result.solution.assign(n, Rational(0));
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < n) result.solution[basis[r]] = t(r, t.rhs());
    }
    return result;
  }

  // Dual prices y = c_B^T B^{-1}, read from the artificial columns. The
  // negated prices, with the row signs undone, certify infeasibility.
  result.farkas.assign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    Rational y = 0;
    for (std::size_t r = 0; r < m; ++r) y += cost(basis[r]) * t(r, n + i);
    result.farkas[i] = -y * sign[i];
  }
  return result;
}

bool is_solution(const LinearSystem& sys, const std::vector<Rational>& x) {
  if (x.size() != sys.cols) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (std::size_t r = 0; r < sys.rows; ++r) {
    Rational lhs = 0;
    for (std::size_t c = 0; c < sys.cols; ++c) {
      if (sys.at(r, c) != 0) lhs += sys.at(r, c) * x[c];
    }
    if (lhs != sys.b[r]) return false;
  }
  return true;
}

bool is_farkas_certificate(const LinearSystem& sys, const std::vector<Rational>& y) {
  if (y.size() != sys.rows) return false;
  for (std::size_t c = 0; c < sys.cols; ++c) {
    Rational v = 0;
    for (std::size_t r = 0; r < sys.rows; ++r) {
      if (sys.at(r, c) != 0) v += y[r] * sys.at(r, c);
    }
    if (v < 0) return false;
  }
  Rational yb = 0;
  for (std::size_t r = 0; r < sys.rows; ++r) yb += y[r] * sys.b[r];
  return yb < 0;
}

}  // namespace vk
