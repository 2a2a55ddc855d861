#include "commands.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <filesystem>
#include <memory>
#include <sstream>

#include "fhc/borel.hpp"
#include "fhc/carleman.hpp"
#include "fhc/error.hpp"
#include "fhc/expk_space.hpp"
#include "fhc/io.hpp"

namespace fhclab {

using namespace fhc;

namespace {

const auto kPositive = CLI::PositiveNumber;
const auto kHorizon = CLI::Range(64L, LONG_MAX, "horizon >= 64");

std::string fmt(double v) { return csv_number(v); }

json zeros_json(const ZeroList& zl) {
  json a = json::array();
  for (const auto& z : zl.zeros) a.push_back({{"at", complex_json(z.location)}, {"multiplicity", z.multiplicity}});
  return a;
}

// --- indicator -----------------------------------------------------------

Command indicator(CLI::App& app) {
  struct Opts {
    std::string spec;
    std::vector<double> thetas;
    int angles = 64;
    double r_min = 1.0, r_max = 200.0;
    int windows = 24;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("indicator", "Indicator estimates against the support function of the frequency hull");
  sub->add_option("--spec", o->spec, "Function JSON (inline or file)");
  sub->add_option("--thetas", o->thetas, "Angles; default: --angles equispaced in [-pi, pi)");
  sub->add_option("--angles", o->angles, "Number of equispaced angles")->check(kPositive);
  sub->add_option("--r-min", o->r_min, "Smallest envelope radius")->check(kPositive);
  sub->add_option("--r-max", o->r_max, "Largest envelope radius")->check(kPositive);
  sub->add_option("--windows", o->windows, "Geometric windows")->check(CLI::Range(4, 1000));
  return {sub, [o] {
            const auto f = parse_function(o->spec);
            const auto hull = frequency_hull(f);
            auto thetas = o->thetas;
            if (thetas.empty())
              for (int k = 0; k < o->angles; ++k) thetas.push_back(-kPi + 2.0 * kPi * k / o->angles);
            Result r;
            r.columns = {"theta", "estimate", "hull", "stable"};
            int unstable = 0;
            for (double th : thetas) {
              IndicatorSample s;
              try {
                s = indicator_estimate(f, th, o->r_min, o->r_max, o->windows);
              } catch (const RangeError& e) {
                throw RangeError("indicator at theta = " + fmt(th) + ": " + e.what());
              }
              unstable += !s.stable;
              r.rows.push_back({th, s.value, hull.indicator(th), s.stable});
            }
            r.extra["hull"] = convex_json(hull);
            r.extra["unstable"] = unstable;
            r.summary = "unstable angles: " + std::to_string(unstable);
            return r;
          }};
}

// --- norm / membership ---------------------------------------------------

void add_grid_options(CLI::App* sub, SamplingSpec& g) {
  sub->add_option("--radii", g.radii, "Radial grid size")->check(kPositive);
  sub->add_option("--grid-angles", g.angles, "Angular grid size")->check(kPositive);
  sub->add_option("--real-axis-extent", g.real_axis_extent, "Half-length of the densified real segment")
      ->check(kPositive);
}

Command norm(CLI::App& app) {
  struct Opts {
    std::string spec, K;
    int n = 1;
    double r_max = 60.0;
    SamplingSpec grid;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("norm", "Weighted sup norm ||f||_{K,n}");
  sub->add_option("--spec", o->spec, "Function JSON");
  sub->add_option("--K", o->K, "Convex set JSON: {\"vertices\": [...]} or a vertex array");
  sub->add_option("--n", o->n, "Weight index n")->check(kPositive);
  sub->add_option("--r-max", o->r_max, "Sampling radius (>= 10)")->check(CLI::Range(10.0, 1e6));
  add_grid_options(sub, o->grid);
  return {sub, [o] {
            const auto est = norm_estimate(parse_function(o->spec), {parse_convex(o->K), o->n}, o->r_max, o->grid);
            Result r;
            r.columns = {"value", "argmax_re", "argmax_im", "bounded", "min_gap", "witness_theta", "tail_bound",
                         "tail_certified"};
            r.rows.push_back({est.value, est.argmax.real(), est.argmax.imag(), est.bounded, est.min_gap,
                              est.witness_theta, est.tail_bound, est.tail_certified});
            return r;
          }};
}

Command membership_cmd(CLI::App& app) {
  struct Opts {
    std::string spec, K;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("membership", "Is the frequency hull inside K? Exit 1 when not");
  sub->add_option("--spec", o->spec, "Function JSON");
  sub->add_option("--K", o->K, "Convex set JSON");
  return {sub, [o] {
            const auto m = membership(parse_function(o->spec), parse_convex(o->K));
            Result r;
            r.columns = {"member", "witness_theta"};
            r.rows.push_back({m.member, m.witness_theta});
            r.extra["hull"] = convex_json(m.hull);
            r.exit_code = m.member ? 0 : 1;
            return r;
          }};
}

// --- series-check / density-fit -------------------------------------------

Command series_check(CLI::App& app) {
  struct Opts {
    std::string spec, K;
    int n = 1, k_max = 200;
    double r_max = 250.0, tail_fraction = 0.5;
    double min_decay = 1.8, cauchy_tol = 1e-3;
    SeriesOptions series;
  };
  auto o = std::make_shared<Opts>();
  o->series.grid.real_axis_extent = 250.0;
  auto* sub = app.add_subcommand("series-check", "Norms of T_1^k f and their partial sums");
  sub->add_option("--spec", o->spec, "Function JSON");
  sub->add_option("--K", o->K, "Convex set JSON");
  sub->add_option("--n", o->n, "Weight index n")->check(kPositive);
  sub->add_option("--k-max", o->k_max, "Largest translate (>= 20)")->check(CLI::Range(20, 100000));
  sub->add_option("--r-max", o->r_max, "Sampling radius")->check(CLI::Range(10.0, 1e6));
  sub->add_option("--tail-fraction", o->tail_fraction, "Fit on the last fraction of k")->check(CLI::Range(0.05, 1.0));
  sub->add_option("--min-decay", o->min_decay, "Required decay exponent")->check(kPositive);
  sub->add_option("--cauchy-tol", o->cauchy_tol, "Allowed partial-sum spread on the tail")->check(kPositive);
  add_grid_options(sub, o->series.grid);
  return {sub, [o] {
            auto opts = o->series;
            opts.r_max = o->r_max;
            opts.tail_fraction = o->tail_fraction;
            const auto rep =
                criterion_series_check(parse_function(o->spec), {parse_convex(o->K), o->n}, o->k_max, opts);
            Result r;
            r.columns = {"k", "a_k", "partial_sum"};
            for (std::size_t k = 0; k < rep.a.size(); ++k)
              r.rows.push_back({static_cast<long long>(k + 1), rep.a[k], rep.partial_sums[k]});
            const bool pass = rep.bounded && rep.decay_exponent >= o->min_decay && rep.cauchy_spread <= o->cauchy_tol;
            r.extra = {{"bounded", rep.bounded},
                       {"decay_exponent", rep.decay_exponent},
                       {"decay_exponent_raw", rep.decay_exponent_raw},
                       {"exp_rate", rep.exp_rate},
                       {"converges", rep.converges},
                       {"cauchy_spread", rep.cauchy_spread},
                       {"cauchy_from", rep.cauchy_from},
                       {"pass", pass}};
            r.summary = "decay_exponent=" + fmt(rep.decay_exponent) + " raw=" + fmt(rep.decay_exponent_raw) +
                        " cauchy_spread=" + fmt(rep.cauchy_spread) + " over k>=" + std::to_string(rep.cauchy_from) +
                        (pass ? " PASS" : " FAIL");
            r.exit_code = pass ? 0 : 1;
            return r;
          }};
}

Command density_fit_cmd(CLI::App& app) {
  struct Opts {
    std::string target, K;
    std::vector<std::string> alphas;
    int n = 1;
    double r_max = 20.0;
    SamplingSpec grid;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("density-fit", "Least-squares fit of a target by building blocks f_alpha");
  sub->add_option("--target", o->target, "Target function JSON");
  sub->add_option("--alphas", o->alphas, "Frequencies: numbers or re,im");
  sub->add_option("--K", o->K, "Convex set JSON");
  sub->add_option("--n", o->n, "Weight index n")->check(kPositive);
  sub->add_option("--r-max", o->r_max, "Sampling radius")->check(kPositive);
  add_grid_options(sub, o->grid);
  return {sub, [o] {
            std::vector<ComplexPoint> alphas;
            if (o->alphas.empty()) throw InputError("missing frequencies (--alphas)");
            for (const auto& a : o->alphas) alphas.push_back(parse_complex(a));
            const auto fit =
                density_fit(parse_function(o->target), alphas, {parse_convex(o->K), o->n}, o->r_max, o->grid);
            Result r;
            r.columns = {"alpha_re", "alpha_im", "coef_re", "coef_im"};
            for (std::size_t j = 0; j < alphas.size(); ++j)
              r.rows.push_back({alphas[j].real(), alphas[j].imag(), fit.coefficients[j].real(),
                                fit.coefficients[j].imag()});
            r.extra = {{"residual_l2", fit.residual_l2},
                       {"residual_max", fit.residual_max},
                       {"condition", fit.condition},
                       {"well_conditioned", fit.well_conditioned}};
            r.summary = "residual_l2=" + fmt(fit.residual_l2) + " residual_max=" + fmt(fit.residual_max) +
                        " condition=" + fmt(fit.condition) + (fit.well_conditioned ? "" : " (ill-conditioned)");
            return r;
          }};
}

// --- borel -----------------------------------------------------------------

Command borel(CLI::App& app) {
  struct Opts {
    std::string spec;
    std::vector<std::string> points;
    int terms = 60;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("borel", "Closed-form Borel transform against its truncated series");
  sub->add_option("--spec", o->spec, "Function JSON (unshifted blocks only)");
  sub->add_option("--points", o->points, "Evaluation points (re,im); default 16 points on |z| = 2 type");
  sub->add_option("--terms", o->terms, "Series terms")->check(kPositive);
  return {sub, [o] {
            const auto f = parse_function(o->spec);
            const auto closed = borel_closed_form(f);
            std::vector<ComplexPoint> zs;
            for (const auto& p : o->points) zs.push_back(parse_complex(p));
            if (zs.empty()) {
              const double rad = 2.0 * std::max(exponential_type(f), 1.0);
              for (int k = 0; k < 16; ++k) zs.push_back(std::polar(rad, 2.0 * kPi * (k + 0.5) / 16));
            }
            Result r;
            r.columns = {"z_re", "z_im", "closed_re", "closed_im", "series_re", "series_im", "difference",
                         "outside_radius"};
            double worst = 0.0;
            for (const auto& z : zs) {
              const auto c = closed(z);
              const auto s = borel_series(f, z, o->terms);
              const double d = std::abs(c - s.value);
              if (!s.outside_radius) worst = std::max(worst, d);
              r.rows.push_back({z.real(), z.imag(), c.real(), c.imag(), s.value.real(), s.value.imag(), d,
                                s.outside_radius});
            }
            const auto sh = singular_hull(closed);
            const auto fh = frequency_hull(f);
            const bool same = same_vertices(sh, fh);
            r.extra = {{"singular_hull", convex_json(sh)},
                       {"frequency_hull", convex_json(fh)},
                       {"hulls_equal", same},
                       {"max_difference", worst}};
            r.summary = "max difference inside the convergence region=" + fmt(worst) +
                        " singular_hull==frequency_hull: " + (same ? "yes" : "no");
            return r;
          }};
}

// --- construct / recurrence / growth --------------------------------------

struct RecurrenceOpts {
  double radius = 0.5, epsilon = 0.5;
};

void add_recurrence_options(CLI::App* sub, RecurrenceOpts& o) {
  sub->add_option("--radius", o.radius, "Disk radius of the recurrence test")->check(kPositive);
  sub->add_option("--epsilon", o.epsilon, "Sup-distance tolerance")->check(kPositive);
}

std::vector<std::vector<json>> recurrence_rows(const std::vector<RecurrenceReport>& reps, double fraction,
                                               bool& all_pass) {
  std::vector<std::vector<json>> rows;
  all_pass = true;
  for (const auto& rep : reps) {
    const double need = fraction * rep.scheduled_density;
    const bool pass = rep.density >= need;
    all_pass = all_pass && pass;
    rows.push_back({rep.target_index, rep.density, rep.scheduled_density, rep.scheduled_pass_fraction, need, pass});
  }
  return rows;
}

const std::vector<std::string> kRecurrenceColumns = {"target", "density", "scheduled_density",
                                                     "scheduled_pass_fraction", "required", "pass"};

std::vector<std::vector<json>> placement_rows(const UniversalCandidate& c, const GrowthReport& g) {
  std::vector<std::vector<json>> rows;
  for (std::size_t l = 0; l < g.placement_terms.size() && l < c.schedule.assignments.size(); ++l) {
    const auto& a = c.schedule.assignments[l];
    rows.push_back({static_cast<long long>(l + 1), a.slot, a.target, g.placement_terms[l]});
  }
  return rows;
}

const std::vector<std::string> kGrowthColumns = {"placement", "slot", "target", "term"};

Command construct(CLI::App& app) {
  struct Opts {
    double d = 1.0;
    int targets = 3;
    long gap = 8, horizon = 4096;
    std::string schedule = "dyadic", K, q = "power:2", out_dir = ".";
    double c = 1.5, delta = 0.1;
    RecurrenceOpts rec;
    double x_max = 2000.0, max_ratio = 10.0, density_fraction = 0.5;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("construct", "Build a candidate from enumerated targets and check it");
  sub->add_option("--d", o->d, "Target frequencies i d j / (2m)")->check(kPositive);
  sub->add_option("--targets", o->targets, "Number of targets")->check(CLI::NonNegativeNumber);
  sub->add_option("--gap", o->gap, "Dyadic schedule spacing")->check(kPositive);
  sub->add_option("--horizon", o->horizon, "Last slot")->check(kHorizon);
  sub->add_option("--schedule", o->schedule, "dyadic, sparse or full")
      ->check(CLI::IsMember({"dyadic", "sparse", "full"}));
  sub->add_option("--K", o->K, "Convex set JSON; default [-i d, i d]");
  sub->add_option("--q", o->q, "Growth majorant: log or power:c");
  sub->add_option("--c", o->c, "Sparse schedule exponent")->check(kPositive);
  sub->add_option("--delta", o->delta, "Sparse schedule interval half-width")->check(CLI::Range(1e-6, 0.999));
  add_recurrence_options(sub, o->rec);
  sub->add_option("--x-max", o->x_max, "Growth grid half-length")->check(kPositive);
  sub->add_option("--max-ratio", o->max_ratio, "Largest allowed growth ratio")->check(kPositive);
  sub->add_option("--density-fraction", o->density_fraction, "Required share of the scheduled density")
      ->check(kPositive);
  sub->add_option("--out-dir", o->out_dir, "Directory for candidate.json, recurrence.csv, growth.csv");
  return {sub, [o] {
            const auto K = o->K.empty() ? ConvexCompact::segment({0.0, -o->d}, {0.0, o->d}) : parse_convex(o->K);
            Result r;
            r.columns = {"check", "value", "threshold", "pass"};
            if (density_bound(K, 0.0) == 0.0) {
              r.rows.push_back({"density_bound", 0.0, 0.0, false});
              r.summary = "aborted: K has no vertical extent, so density_bound(K, 0) = 0 and no frequently "
                          "universal function lies in Exp(K)";
              r.extra["aborted"] = true;
              r.exit_code = 1;
              return r;
            }
            const auto q = parse_growth(o->q);
            const auto targets = enumerate_targets(o->d, o->targets);
            Schedule s;
            if (!targets.empty()) {
              if (o->schedule == "dyadic") s = dyadic_schedule(o->targets, o->horizon, o->gap);
              else if (o->schedule == "sparse") s = sparse_schedule(q, o->c, o->delta, o->horizon, o->targets);
              else s = full_schedule(o->horizon);
            }
            auto cand = build_candidate(targets, s, K);
            if (q.kind == GrowthSpec::Kind::Power) cand.q_exponent = q.exponent;

            const auto reps = recurrence_scan(cand, o->rec.radius, o->rec.epsilon, o->horizon);
            bool rec_pass = true;
            const auto rec_rows = recurrence_rows(reps, o->density_fraction, rec_pass);
            const auto g = growth_check(cand, o->x_max, q);
            const bool growth_pass = g.ratio <= o->max_ratio;

            std::filesystem::create_directories(o->out_dir);
            const std::filesystem::path dir(o->out_dir);
            write_file((dir / "candidate.json").string(), to_json(cand) + "\n");
            std::ostringstream rec_csv, growth_csv;
            write_csv(rec_csv, kRecurrenceColumns, rec_rows);
            write_csv(growth_csv, kGrowthColumns, placement_rows(cand, g));
            write_file((dir / "recurrence.csv").string(), rec_csv.str());
            write_file((dir / "growth.csv").string(), growth_csv.str());

            for (const auto& row : rec_rows)
              r.rows.push_back({"recurrence_target_" + row[0].dump(), row[1], row[4], row[5]});
            r.rows.push_back({"growth_ratio", g.ratio, o->max_ratio, growth_pass});
            r.extra = {{"terms", cand.expr.term_count()},
                       {"placements", cand.schedule.assignments.size()},
                       {"placement_series", g.placement_series},
                       {"growth_argmax", g.argmax}};
            r.summary = std::to_string(targets.size()) + " targets, " +
                        std::to_string(cand.schedule.assignments.size()) + " placements, growth ratio " +
                        fmt(g.ratio) + (rec_pass && growth_pass ? "; all checks pass" : "; checks failed");
            r.exit_code = rec_pass && growth_pass ? 0 : 1;
            return r;
          }};
}

Command recurrence(CLI::App& app) {
  struct Opts {
    std::string candidate;
    RecurrenceOpts rec;
    long horizon = 0;
    double density_fraction = 0.5;
    bool detail = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("recurrence", "Return-time densities of a candidate near each target");
  sub->add_option("--candidate", o->candidate, "Candidate JSON");
  add_recurrence_options(sub, o->rec);
  sub->add_option("--horizon", o->horizon, "Last slot scanned; default the last scheduled slot")->check(kHorizon);
  sub->add_option("--density-fraction", o->density_fraction, "Required share of the scheduled density")
      ->check(kPositive);
  sub->add_flag("--detail", o->detail, "One row per (target, slot) instead of per target");
  return {sub, [o] {
            const auto cand = parse_candidate(o->candidate);
            const auto reps = recurrence_scan(cand, o->rec.radius, o->rec.epsilon, o->horizon);
            Result r;
            bool pass = true;
            auto rows = recurrence_rows(reps, o->density_fraction, pass);
            if (o->detail) {
              r.columns = {"target", "slot", "pass", "sup_error"};
              for (const auto& rep : reps)
                for (const auto& row : rep.rows) r.rows.push_back({rep.target_index, row.slot, row.pass, row.sup_error});
              for (const auto& row : rows)
                r.extra["targets"].push_back({{"target", row[0]}, {"density", row[1]}, {"required", row[4]}});
            } else {
              r.columns = kRecurrenceColumns;
              r.rows = std::move(rows);
            }
            r.summary = pass ? "every target reaches the required density" : "some target misses the required density";
            r.exit_code = pass ? 0 : 1;
            return r;
          }};
}

Command growth(CLI::App& app) {
  struct Opts {
    std::string candidate, q = "power:2";
    double x_max = 2000.0, max_ratio = 10.0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("growth", "sup |f(x)| / q(|x|) on the real axis");
  sub->add_option("--candidate", o->candidate, "Candidate JSON");
  sub->add_option("--q", o->q, "Growth majorant: log or power:c");
  sub->add_option("--x-max", o->x_max, "Grid half-length")->check(kPositive);
  sub->add_option("--max-ratio", o->max_ratio, "Largest allowed ratio")->check(kPositive);
  return {sub, [o] {
            const auto cand = parse_candidate(o->candidate);
            const auto g = growth_check(cand, o->x_max, parse_growth(o->q));
            Result r;
            r.columns = kGrowthColumns;
            r.rows = placement_rows(cand, g);
            const bool pass = g.ratio <= o->max_ratio;
            r.extra = {{"ratio", g.ratio},
                       {"argmax", g.argmax},
                       {"placement_series", g.placement_series},
                       {"grid_points", g.grid_points},
                       {"pass", pass}};
            r.summary = "ratio=" + fmt(g.ratio) + " at x=" + fmt(g.argmax) +
                        " placement_series=" + fmt(g.placement_series) + (pass ? " PASS" : " FAIL");
            r.exit_code = pass ? 0 : 1;
            return r;
          }};
}

// --- zeros / carleman / obstruct -------------------------------------------

Command zeros(CLI::App& app) {
  struct Opts {
    std::string spec;
    std::vector<double> box;
    double resolution = 1e-6;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("zeros", "Zeros in a rectangle by the argument principle");
  sub->add_option("--spec", o->spec, "Function JSON");
  sub->add_option("--box", o->box, "x0 x1 y0 y1")->expected(4);
  sub->add_option("--resolution", o->resolution, "Smallest subdivision size")->check(kPositive);
  return {sub, [o] {
            if (o->box.size() != 4) throw InputError("--box needs x0 x1 y0 y1");
            const Box b{o->box[0], o->box[1], o->box[2], o->box[3]};
            if (!(b.x1 > b.x0 && b.y1 > b.y0)) throw InputError("--box needs x0 < x1 and y0 < y1");
            const auto zl = locate_zeros(parse_function(o->spec), b, o->resolution);
            Result r;
            r.columns = {"re", "im", "multiplicity"};
            for (const auto& z : zl.zeros) r.rows.push_back({z.location.real(), z.location.imag(), z.multiplicity});
            r.summary = std::to_string(zl.total()) + " zeros with multiplicity";
            return r;
          }};
}

Command carleman(CLI::App& app) {
  struct Opts {
    std::string spec;
    std::vector<double> radii{10, 20, 40, 80, 160};
    double t_min = 1e-3, x_min = 1e-3;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("carleman", "Carleman formula residuals over a list of radii");
  sub->add_option("--spec", o->spec, "Function JSON");
  sub->add_option("--radii", o->radii, "Radii R")->check(kPositive);
  sub->add_option("--t-min", o->t_min, "Lower cut of the imaginary-axis integral")->check(kPositive);
  sub->add_option("--x-min", o->x_min, "Left edge of the zero search box")->check(kPositive);
  return {sub, [o] {
            const auto f = parse_function(o->spec);
            const auto cs = carleman_series(f, o->radii, o->t_min, o->x_min);
            Result r;
            r.columns = {"R", "LHS", "RHS", "residual", "R_used"};
            for (const auto& row : cs.rows) r.rows.push_back({row.R, row.lhs, row.rhs, row.residual, row.R_used});
            const bool origin_zero = std::abs(evaluate(f, 0.0)) == 0.0;
            r.extra = {{"range", cs.range}, {"slope", cs.slope}, {"zeros", cs.zeros.total()}, {"origin_zero", origin_zero}};
            r.summary = "residual range=" + fmt(cs.range) + " trend slope=" + fmt(cs.slope) + " per log R";
            if (origin_zero) r.summary += " (f(0) = 0: residual carries a constant from the axis cut)";
            return r;
          }};
}

Command obstruct(CLI::App& app) {
  struct Opts {
    std::string spec;
    long horizon = 64;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("obstruct", "Zero density near universal slots against the diagram bound");
  sub->add_option("--spec", o->spec, "Function JSON");
  sub->add_option("--horizon", o->horizon, "Slots scanned")->check(kHorizon);
  return {sub, [o] {
            const auto rep = obstruction_check(parse_function(o->spec), o->horizon);
            Result r;
            r.columns = {"measured_density", "bound", "gamma", "verdict", "passing_slots", "zeros"};
            r.rows.push_back({rep.measured_density, rep.bound, rep.gamma, to_string(rep.verdict),
                              rep.passing_slots.size(), rep.zeros.total()});
            r.extra = {{"measured_density", rep.measured_density},
                       {"bound", rep.bound},
                       {"gamma", rep.gamma},
                       {"verdict", to_string(rep.verdict)},
                       {"slots", rep.passing_slots},
                       {"zero_list", zeros_json(rep.zeros)}};
            r.summary = "verdict " + to_string(rep.verdict);
            return r;
          }};
}

std::string normalize_key(std::string k) {
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

std::string config_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  // [re, im] becomes "re,im" so list options do not split it.
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return v[0].dump() + "," + v[1].dump();
  return v.dump();
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
  return {indicator(app),   norm(app),       membership_cmd(app), series_check(app),
          density_fit_cmd(app), borel(app),  construct(app),      recurrence(app),
          growth(app),      zeros(app),      carleman(app),       obstruct(app)};
}

void apply_config(CLI::App& sub, const json& config) {
  if (!config.is_object()) throw InputError("config must be a JSON object");
  const json& section = config.contains(sub.get_name()) ? config.at(sub.get_name()) : config;
  if (!section.is_object()) throw InputError("config section \"" + sub.get_name() + "\" must be an object");
  for (const auto& [key, value] : section.items()) {
    auto* opt = sub.get_option_no_throw("--" + normalize_key(key));
    if (opt == nullptr) {
      // Sections for other subcommands may sit beside a flat config.
      if (value.is_object() && &section == &config) continue;
      throw InputError("unknown config key \"" + key + "\" for " + sub.get_name());
    }
    if (opt->count() > 0) continue;
    // Whole JSON documents (function specs, convex sets) stay single values.
    const bool multi = value.is_array() && opt->get_items_expected_max() > 1;
    if (multi) {
      for (const auto& v : value) opt->add_result(config_text(v));
    } else {
      opt->add_result(config_text(value));
    }
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw InputError("config key \"" + key + "\": " + e.what());
    }
  }
}

}  // namespace fhclab
