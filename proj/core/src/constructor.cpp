#include "fhc/constructor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "fhc/error.hpp"
#include "fhc/expk_space.hpp"

namespace fhc {

DiscreteSet::DiscreteSet(std::vector<double> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!(elements_[i] > 0.0) || !std::isfinite(elements_[i]))
      throw InputError("DiscreteSet: elements must be positive and finite");
    if (i > 0 && !(elements_[i] > elements_[i - 1]))
      throw InputError("DiscreteSet: elements must be strictly increasing");
  }
}

std::size_t DiscreteSet::count_up_to(double r) const noexcept {
  return static_cast<std::size_t>(std::upper_bound(elements_.begin(), elements_.end(), r) -
                                  elements_.begin());
}

double lower_density(const DiscreteSet& s, double r, int grid_points) {
  if (!(r > 0.0)) throw InputError("lower_density: r must be positive");
  if (grid_points < 2) throw InputError("lower_density: need at least two grid points");
  if (s.empty()) return 0.0;
  double best = HUGE_VAL;
  for (int j = 0; j < grid_points; ++j) {
    const double rp = 0.25 * r * std::pow(4.0, static_cast<double>(j) / (grid_points - 1));
    best = std::min(best, static_cast<double>(s.count_up_to(rp)) / rp);
  }
  return best;
}

DiscreteSet Schedule::slots_of(int target) const {
  std::vector<double> v;
  for (const auto& a : assignments)
    if (a.target == target) v.push_back(static_cast<double>(a.slot));
  return DiscreteSet(std::move(v));
}

void validate(const Schedule& s) {
  for (std::size_t i = 0; i < s.assignments.size(); ++i) {
    const auto& a = s.assignments[i];
    if (a.slot <= 0 || a.target <= 0) throw InputError("schedule: slots and targets must be positive");
    if (i > 0 && a.slot <= s.assignments[i - 1].slot)
      throw InputError("schedule: slots must be strictly increasing");
  }
}

Schedule dyadic_schedule(int num_targets, long horizon, long gap) {
  if (num_targets < 1 || gap < 1) throw InputError("dyadic_schedule: num_targets and gap must be positive");
  if (num_targets > 62) throw InputError("dyadic_schedule: at most 62 targets");
  if (horizon < 4L * num_targets * gap)
    throw InputError("dyadic_schedule: horizon must be at least 4 * num_targets * gap");
  Schedule s;
  for (long m = 1; m * gap <= horizon; ++m) {
    const int p = std::countr_zero(static_cast<unsigned long>(m)) + 1;
    if (p <= num_targets) s.assignments.push_back({m * gap, p});
  }
  return s;
}

Schedule full_schedule(long horizon, int target) {
  if (horizon < 1 || target < 1) throw InputError("full_schedule: horizon and target must be positive");
  Schedule s;
  for (long n = 1; n <= horizon; ++n) s.assignments.push_back({n, target});
  return s;
}

GrowthSpec GrowthSpec::power(double c) {
  if (!(c >= 0.0)) throw InputError("GrowthSpec: exponent must be nonnegative");
  GrowthSpec q;
  q.kind = Kind::Power;
  q.exponent = c;
  return q;
}

GrowthSpec GrowthSpec::log() {
  GrowthSpec q;
  q.kind = Kind::Log;
  return q;
}

GrowthSpec GrowthSpec::tabulated(std::vector<double> r, std::vector<double> q) {
  if (r.empty() || r.size() != q.size()) throw InputError("GrowthSpec: table sizes differ or are empty");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(q[i] >= 1.0)) throw InputError("GrowthSpec: q must be at least 1");
    if (i > 0 && (!(r[i] > r[i - 1]) || q[i] < q[i - 1]))
      throw InputError("GrowthSpec: table must be increasing in r and nondecreasing in q");
  }
  GrowthSpec g;
  g.kind = Kind::Tabulated;
  g.r_table = std::move(r);
  g.q_table = std::move(q);
  return g;
}

double GrowthSpec::operator()(double r) const {
  switch (kind) {
    case Kind::Power:
      return 1.0 + std::pow(r, exponent);
    case Kind::Log:
      return std::log(std::exp(1.0) + r);
    case Kind::Tabulated: {
      if (r <= r_table.front()) return q_table.front();
      if (r >= r_table.back()) return q_table.back();
      const auto it = std::upper_bound(r_table.begin(), r_table.end(), r);
      const std::size_t i = static_cast<std::size_t>(it - r_table.begin());
      const double t = (r - r_table[i - 1]) / (r_table[i] - r_table[i - 1]);
      return q_table[i - 1] + t * (q_table[i] - q_table[i - 1]);
    }
  }
  return 1.0;
}

Schedule sparse_schedule(const GrowthSpec& q, double c, double delta, long horizon, int num_targets) {
  if (!(c > 1.0)) throw InputError("sparse_schedule: c must exceed 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("sparse_schedule: delta must lie in (0, 1)");
  if (num_targets < 1) throw InputError("sparse_schedule: num_targets must be positive");
  Schedule s;
  long k = 0;
  for (long l = 1;; ++l) {
    const double need = std::pow(static_cast<double>(l), c);
    ++k;
    while (k <= horizon && q((1.0 - delta) * k) < need) ++k;
    if (k > horizon) break;
    const int p = std::min(num_targets, std::countr_zero(static_cast<unsigned long>(l)) + 1);
    s.assignments.push_back({k, p});
  }
  return s;
}

bool satisfies_interval_condition(const Schedule& s, const GrowthSpec& q, double c, double delta) {
  for (std::size_t l = 0; l < s.assignments.size(); ++l) {
    const double need = std::pow(static_cast<double>(l + 1), c);
    const double k = static_cast<double>(s.assignments[l].slot);
    // Nondecreasing q: the left end is the binding point; both ends are checked.
    if (q((1.0 - delta) * k) < need || q((1.0 + delta) * k) < need) return false;
  }
  return true;
}

UniversalCandidate build_candidate(const std::vector<FunctionExpr>& targets, const Schedule& schedule,
                                   const ConvexCompact& K) {
  validate(schedule);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!membership(targets[i], K).member)
      throw MembershipError("build_candidate: target " + std::to_string(i + 1) + " is not in Exp(K)", i + 1);
  }
  UniversalCandidate c;
  c.schedule = schedule;
  c.targets = targets;
  c.K = K;
  for (const auto& a : schedule.assignments) {
    if (static_cast<std::size_t>(a.target) > targets.size())
      throw InputError("build_candidate: schedule refers to target " + std::to_string(a.target));
    c.expr += translate(targets[static_cast<std::size_t>(a.target - 1)], -static_cast<double>(a.slot));
  }
  return c;
}

std::vector<ComplexPoint> disk_grid(double radius) {
  std::vector<ComplexPoint> pts{{0.0, 0.0}};
  const std::pair<double, int> rings[3] = {{1.0, 120}, {2.0 / 3.0, 60}, {1.0 / 3.0, 19}};
  for (const auto& [frac, n] : rings)
    for (int j = 0; j < n; ++j) pts.push_back(std::polar(radius * frac, 2.0 * kPi * j / n));
  return pts;
}

std::vector<RecurrenceReport> recurrence_scan(const UniversalCandidate& c, double radius, double epsilon,
                                              long horizon) {
  if (!(radius > 0.0 && radius <= 1.0)) throw InputError("recurrence: radius must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw InputError("recurrence: epsilon must be positive");
  if (horizon <= 0) horizon = c.schedule.last_slot();
  const auto grid = disk_grid(radius);
  std::vector<std::vector<ComplexPoint>> target_vals;
  for (const auto& t : c.targets) {
    std::vector<ComplexPoint> v;
    for (const auto& z : grid) v.push_back(evaluate(t, z));
    target_vals.push_back(std::move(v));
  }
  std::vector<RecurrenceReport> reps(c.targets.size());
  for (std::size_t i = 0; i < reps.size(); ++i) reps[i].target_index = static_cast<int>(i + 1);
  // Slots are processed in chunks so the shared exponential tables stay small.
  constexpr long kChunk = 512;
  std::vector<ComplexPoint> pts;
  for (long n0 = 1; n0 <= horizon; n0 += kChunk) {
    const long n1 = std::min(horizon, n0 + kChunk - 1);
    pts.clear();
    for (long n = n0; n <= n1; ++n)
      for (const auto& z : grid) pts.push_back(z + static_cast<double>(n));
    const auto vals = evaluate_many(c.expr, pts);
    for (long n = n0; n <= n1; ++n) {
      const std::size_t base = static_cast<std::size_t>(n - n0) * grid.size();
      for (std::size_t i = 0; i < reps.size(); ++i) {
        double sup = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g)
          sup = std::max(sup, std::abs(vals[base + g] - target_vals[i][g]));
        reps[i].rows.push_back({n, sup < epsilon, sup});
      }
    }
  }
  for (auto& rep : reps) {
    std::vector<double> passing;
    for (const auto& r : rep.rows)
      if (r.pass) passing.push_back(static_cast<double>(r.slot));
    const double r = static_cast<double>(horizon);
    rep.density = lower_density(DiscreteSet(std::move(passing)), r);
    const auto scheduled = c.schedule.slots_of(rep.target_index);
    rep.scheduled_density = lower_density(scheduled, r);
    std::size_t hit = 0, total = 0;
    for (double s : scheduled.elements()) {
      if (s > r) break;
      ++total;
      if (rep.rows[static_cast<std::size_t>(s) - 1].pass) ++hit;
    }
    rep.scheduled_pass_fraction = total ? static_cast<double>(hit) / total : 0.0;
  }
  return reps;
}

double recurrence_density(const UniversalCandidate& c, int target_index, double radius, double epsilon,
                          long horizon) {
  if (target_index < 1 || static_cast<std::size_t>(target_index) > c.targets.size())
    throw InputError("recurrence_density: target index out of range");
  UniversalCandidate one = c;
  one.targets = {c.targets[static_cast<std::size_t>(target_index - 1)]};
  if (horizon <= 0) horizon = c.schedule.last_slot();
  const auto reps = recurrence_scan(one, radius, epsilon, horizon);
  return reps.front().density;
}

namespace {

bool purely_oscillating(const FunctionExpr& f) {
  for (const auto& a : expand_atoms(f))
    if (std::abs(a.freq.real()) > 0.0) return false;
  return true;
}

void add_grid(std::vector<double>& xs, double a, double b, double step) {
  const long n0 = static_cast<long>(std::ceil(a / step));
  const long n1 = static_cast<long>(std::floor(b / step));
  for (long j = n0; j <= n1; ++j) xs.push_back(static_cast<double>(j) * step);
}

}  // namespace

GrowthReport growth_check(const UniversalCandidate& c, double x_max, const GrowthSpec& q) {
  if (!(x_max > 0.0)) throw InputError("growth_check: x_max must be positive");
  GrowthReport rep;
  std::vector<double> xs;
  add_grid(xs, -x_max, x_max, 0.05);
  for (const auto& a : c.schedule.assignments) {
    const double s = static_cast<double>(a.slot);
    if (s - 0.25 > x_max) break;
    for (int j = -50; j <= 50; ++j) {
      const double x = s + 0.005 * j;
      if (std::abs(x) <= x_max) xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  rep.grid_points = xs.size();
  const auto vals = evaluate_many(c.expr, std::vector<ComplexPoint>(xs.begin(), xs.end()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = std::abs(vals[i]) / q(std::abs(xs[i]));
    if (v > rep.ratio) {
      rep.ratio = v;
      rep.argmax = xs[i];
    }
  }

  // Each placement's own weighted sup; oscillating terms decay like 1/(x - slot)^2,
  // so a window of half-width 64 plus the tail bound 4 sum|coef| / 64^2 suffices.
  constexpr double kWindow = 64.0;
  for (const auto& a : c.schedule.assignments) {
    const auto& target = c.targets.at(static_cast<std::size_t>(a.target - 1));
    const double s = static_cast<double>(a.slot);
    const auto term = translate(target, -s);
    double sup = 0.0;
    const bool local = purely_oscillating(term) && target.exppoly.empty();
    const double lo = local ? std::max(-x_max, s - kWindow) : -x_max;
    const double hi = local ? std::min(x_max, s + kWindow) : x_max;
    std::vector<double> tx;
    add_grid(tx, lo, hi, 0.05);
    for (int j = -50; j <= 50; ++j) tx.push_back(s + 0.005 * j);
    std::erase_if(tx, [&](double x) { return std::abs(x) > x_max; });
    const auto tv = evaluate_many(term, std::vector<ComplexPoint>(tx.begin(), tx.end()));
    for (std::size_t i = 0; i < tx.size(); ++i) sup = std::max(sup, std::abs(tv[i]) / q(std::abs(tx[i])));
    if (local) {
      double coef = 0.0;
      for (const auto& wb : term.blocks) coef += std::abs(wb.coef);
      sup = std::max(sup, 4.0 * coef / (kWindow * kWindow));
    }
    rep.placement_terms.push_back(sup);
    rep.placement_series += sup;
  }
  return rep;
}

std::vector<FunctionExpr> enumerate_targets(double d, int count) {
  if (!(d > 0.0)) throw InputError("enumerate_targets: d must be positive");
  if (count < 0) throw InputError("enumerate_targets: count must be nonnegative");
  std::vector<FunctionExpr> out;
  const ComplexPoint unit{0.0, d};
  ComplexPoint prev_first{};
  for (int m = 2; static_cast<int>(out.size()) < count; ++m) {
    ComplexPoint stage_first{}, newest{};
    bool first = true;
    for (int j = 1; j < m && static_cast<int>(out.size()) < count; ++j) {
      if (std::gcd(j, m) != 1) continue;
      const ComplexPoint alpha = unit * (static_cast<double>(j) / (2.0 * m));
      for (const ComplexPoint a : {alpha, -alpha}) {
        if (static_cast<int>(out.size()) >= count) break;
        out.push_back(FunctionExpr::block(a));
        newest = a;
      }
      if (first) {
        stage_first = alpha;
        first = false;
      }
    }
    if (m >= 3 && static_cast<int>(out.size()) < count)
      out.push_back(FunctionExpr::block(newest, 0.5) + FunctionExpr::block(prev_first, -0.25));
    prev_first = stage_first;
  }
  return out;
}

}  // namespace fhc
