#include "ferrysched/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "ferrysched/errors.hpp"

namespace ferrysched {

namespace {

template <class S>
struct Tol {
  static S zero() { return S(0); }          // treat |v| <= zero() as zero
  static S feas() { return S(0); }          // bound violation threshold
};

template <>
struct Tol<double> {
  static double zero() { return 1e-11; }
  static double feas() { return 1e-9; }
};

template <class S>
bool pos(const S& v) { return v > Tol<S>::zero(); }
template <class S>
bool neg(const S& v) { return v < -Tol<S>::zero(); }

template <class S>
S magnitude(const S& v) { return v < 0 ? S(-v) : v; }

}  // namespace

template <class S>
S scalar_from_rational(const Rational& r) { return S(r); }
template <>
double scalar_from_rational<double>(const Rational& r) { return to_double(r); }

template <class S>
LpData<S> make_lp_data(const IpModel& model) {
  LpData<S> d;
  d.n = static_cast<int>(model.vars.size());
  d.m = static_cast<int>(model.rows.size());
  d.cols.resize(d.n);
  d.cost.reserve(d.n);
  for (const Variable& v : model.vars) d.cost.push_back(scalar_from_rational<S>(v.cost));
  d.rhs.reserve(d.m);
  for (int i = 0; i < d.m; ++i) {
    const LinearConstraint& row = model.rows[i];
    d.rhs.push_back(scalar_from_rational<S>(row.rhs));
    for (const auto& [var, coef] : row.terms)
      d.cols[var].emplace_back(i, scalar_from_rational<S>(coef));
  }
  return d;
}

template <class S>
LpBounds<S> make_root_bounds(const IpModel& model) {
  int n = static_cast<int>(model.vars.size());
  int m = static_cast<int>(model.rows.size());
  LpBounds<S> b;
  b.has_lo.assign(n + m, 1);
  b.has_up.assign(n + m, 0);
  b.lo.assign(n + m, S(0));
  b.up.assign(n + m, S(0));
  for (int j = 0; j < n; ++j) {
    if (model.vars[j].kind == VarKind::BINARY) {
      b.has_up[j] = 1;
      b.up[j] = S(1);
    }
  }
  for (int i = 0; i < m; ++i) {
    switch (model.rows[i].sense) {
      case RowSense::LE: break;                                    // slack in [0, inf)
      case RowSense::EQ: b.has_up[n + i] = 1; break;               // slack fixed at 0
      case RowSense::GE: b.has_lo[n + i] = 0; b.has_up[n + i] = 1; break;  // slack in (-inf, 0]
    }
  }
  return b;
}

template <class S>
SimplexEngine<S>::SimplexEngine(const LpData<S>& data)
    : data_(data), m_(data.m), n_(data.n), big_(data.n + data.m) {
  reset_to_slack_basis();
}

template <class S>
void SimplexEngine<S>::reset_to_slack_basis() {
  basic_.resize(m_);
  status_.assign(big_, 1);  // everything at lower; GE slacks fixed up in solve()
  for (int i = 0; i < m_; ++i) {
    basic_[i] = n_ + i;
    status_[n_ + i] = 0;
  }
  binv_.assign(static_cast<std::size_t>(m_) * m_, S(0));
  for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = S(1);
}

template <class S>
typename SimplexEngine<S>::State SimplexEngine<S>::save() const {
  return {basic_, status_, binv_};
}

template <class S>
void SimplexEngine<S>::load(const State& s) {
  basic_ = s.basic;
  status_ = s.status;
  binv_ = s.binv;
}

template <class S>
template <class F>
void SimplexEngine<S>::for_column(int j, F&& f) const {
  if (j < n_) {
    for (const auto& [row, coef] : data_.cols[j]) f(row, coef);
  } else {
    f(j - n_, S(1));
  }
}

template <class S>
S SimplexEngine<S>::nonbasic_value(int j) const {
  if (status_[j] == 1) return b_->has_lo[j] ? b_->lo[j] : S(0);
  return b_->has_up[j] ? b_->up[j] : S(0);
}

template <class S>
void SimplexEngine<S>::compute_duals() {
  std::vector<S> y(m_, S(0));
  for (int i = 0; i < m_; ++i) {
    int col = basic_[i];
    S c = col < n_ ? data_.cost[col] : S(0);
    if (c == S(0)) continue;
    const S* row = binv_.data() + static_cast<std::size_t>(i) * m_;
    for (int k = 0; k < m_; ++k)
      if (row[k] != S(0)) y[k] += c * row[k];
  }
  d_.assign(big_, S(0));
  for (int j = 0; j < big_; ++j) {
    if (status_[j] == 0) continue;
    S dj = j < n_ ? data_.cost[j] : S(0);
    for_column(j, [&](int row, const S& coef) { dj -= y[row] * coef; });
    d_[j] = dj;
  }
}

template <class S>
void SimplexEngine<S>::compute_basics() {
  std::vector<S> t = data_.rhs;
  for (int j = 0; j < big_; ++j) {
    if (status_[j] == 0) continue;
    S v = nonbasic_value(j);
    if (v == S(0)) continue;
    for_column(j, [&](int row, const S& coef) { t[row] -= coef * v; });
  }
  xb_.assign(m_, S(0));
  for (int i = 0; i < m_; ++i) {
    const S* row = binv_.data() + static_cast<std::size_t>(i) * m_;
    S acc(0);
    for (int k = 0; k < m_; ++k)
      if (t[k] != S(0)) acc += row[k] * t[k];
    xb_[i] = acc;
  }
}

// place nonbasic columns on the bound matching the sign of their reduced cost
template <class S>
bool SimplexEngine<S>::flip_to_dual_feasible() {
  for (int j = 0; j < big_; ++j) {
    if (status_[j] == 0) continue;
    if (status_[j] == 1 && !b_->has_lo[j]) status_[j] = 2;
    if (status_[j] == 2 && !b_->has_up[j]) status_[j] = 1;
    if (status_[j] == 1 && neg(d_[j])) {
      if (!b_->has_up[j]) return false;
      status_[j] = 2;
    } else if (status_[j] == 2 && pos(d_[j])) {
      if (!b_->has_lo[j]) return false;
      status_[j] = 1;
    }
  }
  return true;
}

template <class S>
LpStatus SimplexEngine<S>::solve(const LpBounds<S>& bounds, long long iter_limit) {
  b_ = &bounds;
  compute_duals();
  if (!flip_to_dual_feasible())
    throw NumericalError("start basis is dual infeasible; costs must be nonnegative");
  compute_basics();

  int stall = 0;
  bool bland = false;
  std::vector<S> alpha(big_);
  std::vector<S> w(m_);

  for (long long iter = 0; iter < iter_limit; ++iter) {
    // leaving row: most violated basic bound (smallest column index in bland mode)
    int r = -1;
    bool below = false;
    S worst(0);
    for (int i = 0; i < m_; ++i) {
      int col = basic_[i];
      if (b_->has_lo[col] && xb_[i] < b_->lo[col] - Tol<S>::feas()) {
        S v = b_->lo[col] - xb_[i];
        if (r < 0 || (bland ? col < basic_[r] : (v > worst || (v == worst && col < basic_[r])))) {
          r = i; below = true; worst = v;
        }
      } else if (b_->has_up[col] && xb_[i] > b_->up[col] + Tol<S>::feas()) {
        S v = xb_[i] - b_->up[col];
        if (r < 0 || (bland ? col < basic_[r] : (v > worst || (v == worst && col < basic_[r])))) {
          r = i; below = false; worst = v;
        }
      }
    }
    if (r < 0) {
      pivots_ += iter;
      return LpStatus::OPTIMAL;
    }

    const S* rho = binv_.data() + static_cast<std::size_t>(r) * m_;
    for (int j = 0; j < big_; ++j) {
      if (status_[j] == 0) { alpha[j] = S(0); continue; }
      S a(0);
      for_column(j, [&](int row, const S& coef) {
        if (rho[row] != S(0)) a += rho[row] * coef;
      });
      alpha[j] = a;
    }

    // entering column: tightest dual ratio among columns able to move x_Br
    // toward its violated bound; ties prefer a larger pivot, then lower index
    int e = -1;
    S best_num(0), best_den(1);  // |d_e| / |alpha_e| as a cross-multiplied fraction
    for (int j = 0; j < big_; ++j) {
      if (status_[j] == 0) continue;
      const S& a = alpha[j];
      bool ok = below ? ((status_[j] == 1 && neg(a)) || (status_[j] == 2 && pos(a)))
                      : ((status_[j] == 1 && pos(a)) || (status_[j] == 2 && neg(a)));
      if (!ok) continue;
      S num = magnitude(d_[j]), den = magnitude(a);
      if (e < 0) { e = j; best_num = num; best_den = den; continue; }
      S lhs = num * best_den, rhs = best_num * den;
      bool better;
      if (bland) {
        better = lhs < rhs;  // strictly smaller ratio only; index order is the tiebreak
      } else {
        better = lhs < rhs || (lhs == rhs && den > best_den);
      }
      if (better) { e = j; best_num = num; best_den = den; }
    }
    if (e < 0) {
      pivots_ += iter;
      return LpStatus::INFEASIBLE;
    }

    S theta = alpha[e] == S(0) ? S(0) : S(d_[e] / alpha[e]);
    if (magnitude(theta) <= Tol<S>::zero()) {
      if (!bland && ++stall > 64) bland = true;
    } else {
      stall = 0;
      bland = false;
    }

    S target = below ? b_->lo[basic_[r]] : b_->up[basic_[r]];
    S delta = (xb_[r] - target) / alpha[e];

    for (int i = 0; i < m_; ++i) {
      const S* row = binv_.data() + static_cast<std::size_t>(i) * m_;
      S acc(0);
      for_column(e, [&](int rr, const S& coef) {
        if (row[rr] != S(0)) acc += row[rr] * coef;
      });
      w[i] = acc;
    }

    S enter_value = nonbasic_value(e) + delta;
    for (int i = 0; i < m_; ++i)
      if (i != r && w[i] != S(0)) xb_[i] -= delta * w[i];
    xb_[r] = enter_value;

    // eta update of the inverse: pivot on w[r]
    S piv = w[r];
    S* prow = binv_.data() + static_cast<std::size_t>(r) * m_;
    for (int k = 0; k < m_; ++k)
      if (prow[k] != S(0)) prow[k] = prow[k] / piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || w[i] == S(0)) continue;
      S* irow = binv_.data() + static_cast<std::size_t>(i) * m_;
      const S& f = w[i];
      for (int k = 0; k < m_; ++k)
        if (prow[k] != S(0)) irow[k] -= f * prow[k];
    }

    int leave = basic_[r];
    status_[leave] = below ? 1 : 2;
    status_[e] = 0;
    basic_[r] = e;
    if (theta != S(0)) {
      for (int j = 0; j < big_; ++j) {
        if (status_[j] == 0 || alpha[j] == S(0)) continue;
        d_[j] -= theta * alpha[j];
      }
    }
    d_[leave] = S(0) - theta;
    d_[e] = S(0);
  }
  pivots_ += iter_limit;
  return LpStatus::ITER_LIMIT;
}

template <class S>
S SimplexEngine<S>::objective() const {
  S obj(0);
  for (int i = 0; i < m_; ++i) {
    int col = basic_[i];
    if (col < n_ && data_.cost[col] != S(0)) obj += data_.cost[col] * xb_[i];
  }
  for (int j = 0; j < n_; ++j) {
    if (status_[j] == 0 || data_.cost[j] == S(0)) continue;
    S v = nonbasic_value(j);
    if (v != S(0)) obj += data_.cost[j] * v;
  }
  return obj;
}

template <class S>
std::vector<S> SimplexEngine<S>::values() const {
  std::vector<S> v(big_);
  for (int j = 0; j < big_; ++j)
    if (status_[j] != 0) v[j] = nonbasic_value(j);
  for (int i = 0; i < m_; ++i) v[basic_[i]] = xb_[i];
  return v;
}

template class SimplexEngine<Rational>;
template class SimplexEngine<double>;
template LpData<Rational> make_lp_data<Rational>(const IpModel&);
template LpData<double> make_lp_data<double>(const IpModel&);
template LpBounds<Rational> make_root_bounds<Rational>(const IpModel&);
template LpBounds<double> make_root_bounds<double>(const IpModel&);
template Rational scalar_from_rational<Rational>(const Rational&);

}  // namespace ferrysched
