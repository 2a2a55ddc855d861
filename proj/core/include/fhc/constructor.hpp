#ifndef FHC_CONSTRUCTOR_HPP
#define FHC_CONSTRUCTOR_HPP

#include <functional>
#include <vector>

#include "fhc/complex_geometry.hpp"
#include "fhc/expfun.hpp"

namespace fhc {

// Strictly increasing finite list of positive reals.
class DiscreteSet {
 public:
  DiscreteSet() = default;
  // Throws InputError unless strictly increasing and positive.
  explicit DiscreteSet(std::vector<double> elements);

  const std::vector<double>& elements() const noexcept { return elements_; }
  bool empty() const noexcept { return elements_.empty(); }
  // #{x in set : x <= r}
  std::size_t count_up_to(double r) const noexcept;

 private:
  std::vector<double> elements_;
};

// min over a geometric grid of r' in [r/4, r] of #{x <= r'} / r'.
double lower_density(const DiscreteSet& s, double r, int grid_points = 64);

struct Assignment {
  long slot = 0;
  int target = 0;  // 1-based index into the target list
};

struct Schedule {
  std::vector<Assignment> assignments;  // slots strictly increasing

  DiscreteSet slots_of(int target) const;
  long last_slot() const noexcept { return assignments.empty() ? 0 : assignments.back().slot; }
};

// Throws InputError on non-increasing slots or non-positive slots/targets.
void validate(const Schedule& s);

// Slot m * gap (m = 1 .. horizon / gap) goes to target p = v_2(m) + 1 when
// p <= num_targets; target p then has density 2^{-p} / gap.
Schedule dyadic_schedule(int num_targets, long horizon, long gap = 8);

// Every integer slot 1 .. horizon carries `target`.
Schedule full_schedule(long horizon, int target = 1);

// Nondecreasing majorant q >= 1 on [0, inf).
struct GrowthSpec {
  enum class Kind { Power, Log, Tabulated };
  Kind kind = Kind::Power;
  double exponent = 2.0;        // Power: q(r) = 1 + r^exponent
  std::vector<double> r_table;  // Tabulated: piecewise linear, constant past the ends
  std::vector<double> q_table;

  static GrowthSpec power(double c);
  static GrowthSpec log();  // q(r) = log(e + r)
  static GrowthSpec tabulated(std::vector<double> r, std::vector<double> q);

  double operator()(double r) const;
};

// k_l = least integer > k_{l-1} with q((1 - delta) k) >= l^c, while k_l <= horizon.
// Placement l carries target v_2(l) + 1 capped at num_targets.
Schedule sparse_schedule(const GrowthSpec& q, double c, double delta, long horizon,
                         int num_targets = 1);

// q(r) >= l^c on [(1 - delta) k_l, (1 + delta) k_l] for every placement l.
bool satisfies_interval_condition(const Schedule& s, const GrowthSpec& q, double c, double delta);

struct UniversalCandidate {
  FunctionExpr expr;
  Schedule schedule;
  std::vector<FunctionExpr> targets;
  ConvexCompact K = ConvexCompact::point(0.0);
  double q_exponent = 2.0;
};

// expr = sum over assignments (n, p) of targets[p - 1](z - n). Throws
// MembershipError naming the first target outside Exp(K).
UniversalCandidate build_candidate(const std::vector<FunctionExpr>& targets, const Schedule& schedule,
                                   const ConvexCompact& K);

// Points of the closed disk |z| <= radius used by the recurrence test:
// the center and rings at radius, 2/3 radius, 1/3 radius with 120, 60, 19 points.
std::vector<ComplexPoint> disk_grid(double radius);

struct RecurrenceRow {
  long slot = 0;
  bool pass = false;
  double sup_error = 0.0;
};

struct RecurrenceReport {
  int target_index = 0;
  std::vector<RecurrenceRow> rows;  // every integer slot 1 .. horizon
  double density = 0.0;             // lower density of the passing slots
  double scheduled_density = 0.0;   // lower density of the slots assigned to the target
  double scheduled_pass_fraction = 0.0;
};

// Tests sup_{|z| <= radius} |expr(z + n) - target(z)| < epsilon for n = 1 .. horizon
// (horizon 0: the last scheduled slot). One report per target index 1 .. targets.size().
std::vector<RecurrenceReport> recurrence_scan(const UniversalCandidate& c, double radius,
                                              double epsilon, long horizon = 0);

double recurrence_density(const UniversalCandidate& c, int target_index, double radius,
                          double epsilon, long horizon = 0);

struct GrowthReport {
  double ratio = 0.0;             // sup over the grid of |expr(x)| / q(|x|)
  double argmax = 0.0;
  // sum over placements of sup_x |term(x)| / q(|x|); bounds ratio from above
  double placement_series = 0.0;
  std::vector<double> placement_terms;
  std::size_t grid_points = 0;
};

// Real grid of step 0.05 on [-x_max, x_max], densified to step 0.005 within
// 0.25 of each scheduled slot.
GrowthReport growth_check(const UniversalCandidate& c, double x_max, const GrowthSpec& q);

// f_{alpha} at alpha = i d j / (2m): stage m = 2, 3, ... sweeps j = 1 .. m-1
// coprime to m and emits +alpha then -alpha; after each stage m >= 3 one
// combination (1/2) f_{newest} - (1/4) f_{first of previous stage} follows.
// The first entry is f_{i d / 4}.
std::vector<FunctionExpr> enumerate_targets(double d, int count);

}  // namespace fhc

#endif  // FHC_CONSTRUCTOR_HPP
