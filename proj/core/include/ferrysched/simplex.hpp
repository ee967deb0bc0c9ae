#ifndef FERRYSCHED_SIMPLEX_HPP
#define FERRYSCHED_SIMPLEX_HPP

#include <cstdint>
#include <vector>

#include "ferrysched/ip_model.hpp"
#include "ferrysched/rational.hpp"

namespace ferrysched {

enum class LpStatus { OPTIMAL, INFEASIBLE, UNBOUNDED, ITER_LIMIT };

// Equality-form LP data: structural columns plus one slack per row, so column
// ids run 0..n-1 (structural) then n..n+m-1 (slack of row j-n).  The matrix
// and costs are fixed; only bounds vary between solves.
template <class S>
struct LpData {
  int n = 0;  // structural columns
  int m = 0;  // rows
  std::vector<std::vector<std::pair<int, S>>> cols;  // structural, (row, coef)
  std::vector<S> cost;                               // structural, slacks cost 0
  std::vector<S> rhs;
};

template <class S>
struct LpBounds {
  std::vector<std::uint8_t> has_lo, has_up;
  std::vector<S> lo, up;

  int size() const { return static_cast<int>(has_lo.size()); }
};

template <class S>
S scalar_from_rational(const Rational& r);

template <class S>
LpData<S> make_lp_data(const IpModel& model);

// structural bounds from variable kinds, slack bounds from row senses
template <class S>
LpBounds<S> make_root_bounds(const IpModel& model);

// Bounded-variable dual simplex over an explicitly maintained dense basis
// inverse.  The slack basis is dual feasible whenever costs are nonnegative
// (after flipping nonbasic columns onto their finite bounds), which holds for
// every model this library builds, so the same engine performs the initial
// solve and every warm-started re-solve after a bound change.  Pricing is
// steepest-violation with a deterministic tie order; after a run of
// degenerate steps the engine switches to smallest-index selection until it
// makes progress again, which guarantees termination.
template <class S>
class SimplexEngine {
 public:
  struct State {
    std::vector<int> basic;
    std::vector<std::uint8_t> status;  // 0 basic, 1 at lower, 2 at upper
    std::vector<S> binv;
  };

  explicit SimplexEngine(const LpData<S>& data);

  void reset_to_slack_basis();
  State save() const;
  void load(const State& s);

  // bounds must outlive the call; iter_limit caps pivots for this call
  LpStatus solve(const LpBounds<S>& bounds, long long iter_limit = 1000000);

  S objective() const;
  // value per column (structural then slack), valid after OPTIMAL
  std::vector<S> values() const;
  long long pivots() const { return pivots_; }

 private:
  const LpData<S>& data_;
  int m_, n_, big_;
  std::vector<int> basic_;
  std::vector<std::uint8_t> status_;
  std::vector<S> binv_;  // m*m row-major
  std::vector<S> xb_, d_;
  const LpBounds<S>* b_ = nullptr;
  long long pivots_ = 0;

  S nonbasic_value(int j) const;
  void compute_duals();
  void compute_basics();
  bool flip_to_dual_feasible();
  template <class F>
  void for_column(int j, F&& f) const;
};

extern template class SimplexEngine<Rational>;
extern template class SimplexEngine<double>;
extern template LpData<Rational> make_lp_data<Rational>(const IpModel&);
extern template LpData<double> make_lp_data<double>(const IpModel&);
extern template LpBounds<Rational> make_root_bounds<Rational>(const IpModel&);
extern template LpBounds<double> make_root_bounds<double>(const IpModel&);

}  // namespace ferrysched

#endif
