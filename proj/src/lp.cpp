#include "plsurj/lp.hpp"

#include <optional>

#include "plsurj/error.hpp"

namespace plsurj {

namespace {

struct Tableau {
  Matrix rows;  // each row: coefficients followed by the right-hand side
  std::vector<std::size_t> basis;
  std::size_t cols = 0;  // number of variables

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = Rational(1) / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = c;
  }

  // Maximizes obj over the current basis; columns >= allowed never enter.
  LpStatus optimize(const std::vector<Rational>& obj, std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < allowed && !entering; ++j) {
        Rational reduced = obj[j];
        for (std::size_t i = 0; i < rows.size(); ++i)
          if (!rows[i][j].is_zero()) reduced -= obj[basis[i]] * rows[i][j];
        if (reduced.sign() > 0) entering = j;
      }
      if (!entering) return LpStatus::Optimal;
      const std::size_t c = *entering;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][c].sign() <= 0) continue;
        const Rational ratio = rows[i][cols] / rows[i][c];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return LpStatus::Unbounded;
      pivot(*leave, c);
    }
  }

  Rational objective(const std::vector<Rational>& obj) const {
    Rational v;
    for (std::size_t i = 0; i < rows.size(); ++i) v += obj[basis[i]] * rows[i][cols];
    return v;
  }
};

}  // namespace

LpResult lp_maximize(const Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw Error(ErrorCode::DimensionMismatch, "lp right-hand side");
  Tableau t;
  t.cols = n + m;
  t.rows.assign(m, std::vector<Rational>(n + m + 1));
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "lp constraint row");
    const bool flip = b[i].sign() < 0;
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = flip ? -a[i][j] : a[i][j];
    t.rows[i][n + i] = 1;
    t.rows[i][n + m] = flip ? -b[i] : b[i];
    t.basis[i] = n + i;
  }

  std::vector<Rational> phase1(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  t.optimize(phase1, n + m);
  LpResult result;
  if (t.objective(phase1).sign() < 0) return result;

  // Drive remaining artificial variables out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < n) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j)
      if (!t.rows[i][j].is_zero()) col = j;
    if (col) {
      t.pivot(i, *col);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  std::vector<Rational> phase2(n + m);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (t.optimize(phase2, n) == LpStatus::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.value = t.objective(phase2);
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) result.x[t.basis[i]] = t.rows[i][t.cols];
  return result;
}

namespace {

// Rows: sum_i lambda_i q_i - sum_j mu_j m_j = 0, sum lambda = 1, sum mu = 1.
// With `strict`, lambda_i = t + s_i and the variables are (t, s, mu).
LpResult hull_lp(std::span<const Point> q, std::span<const Point> m, bool strict,
                 std::optional<std::size_t> weight = std::nullopt) {
  if (q.empty() || m.empty()) throw Error(ErrorCode::InvalidInput, "empty point set");
  const std::size_t n = q[0].dim();
  const std::size_t off = strict ? 1 : 0;
  const std::size_t vars = off + q.size() + m.size();
  Matrix a(n + 2, std::vector<Rational>(vars));
  std::vector<Rational> b(n + 2);
  for (std::size_t i = 0; i < q.size(); ++i) {
    require_same_dim(q[0], q[i]);
    for (std::size_t k = 0; k < n; ++k) {
      a[k][off + i] = q[i][k];
      if (strict) a[k][0] += q[i][k];
    }
    a[n][off + i] = 1;
  }
  if (strict) a[n][0] = static_cast<long long>(q.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    require_same_dim(q[0], m[j]);
    for (std::size_t k = 0; k < n; ++k) a[k][off + q.size() + j] = -m[j][k];
    a[n + 1][off + q.size() + j] = 1;
  }
  b[n] = 1;
  b[n + 1] = 1;
  std::vector<Rational> c(vars);
  if (strict) c[0] = 1;
  if (weight) c[*weight] = 1;
  return lp_maximize(a, b, c);
}

}  // namespace

bool relint_hull_meets_hull(std::span<const Point> q, std::span<const Point> m) {
  const auto r = hull_lp(q, m, true);
  return r.status == LpStatus::Optimal && r.value.sign() > 0;
}

bool hulls_meet(std::span<const Point> q, std::span<const Point> m) {
  return hull_lp(q, m, false).status != LpStatus::Infeasible;
}

std::optional<Rational> max_weight_meeting(std::span<const Point> q, std::size_t index, std::span<const Point> m) {
  if (index >= q.size()) throw Error(ErrorCode::InvalidInput, "weight index out of range");
  auto r = hull_lp(q, m, false, index);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.value;
}

}  // namespace plsurj
