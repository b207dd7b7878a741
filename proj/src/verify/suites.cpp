#include "quatvisc/verify/suites.hpp"

#include "quatvisc/cubic_form.hpp"
#include "quatvisc/hessian_map.hpp"
#include "quatvisc/jacobi.hpp"
#include "quatvisc/parallel.hpp"
#include "quatvisc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace quatvisc::verify {

namespace {

const double kRootDim = std::sqrt(static_cast<double>(kDim));
constexpr double kThirdDerivativeBound = 32.0;
constexpr double kEulerTolerance = 1e-10;
constexpr double kSupportTolerance = 1e-9;

Check make_check(std::string name, double threshold, std::string relation = "<=") {
  Check c;
  c.name = std::move(name);
  c.threshold = threshold;
  c.relation = std::move(relation);
  return c;
}

template <typename T, typename Fn>
std::vector<T> collect(std::size_t count, Fn&& fn, std::size_t block = 64) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t k) { out[k] = fn(k); }, block);
  return out;
}

Witness at(const char* stream, std::uint64_t index) { return Witness{stream, index, std::nullopt}; }

// Twelve roots of the characteristic polynomial, factor by factor, descending.
std::vector<double> characteristic_roots(double m, double n) {
  std::vector<double> roots;
  for (double q : {2.0 * m, -2.0 * m, 2.0 * n, 2.0 * n}) {
    const auto r = depressed_cubic_real_roots(-3.0, q);
    roots.insert(roots.end(), r.begin(), r.end());
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace

std::array<Vec4, 24> hurwitz_units() {
  std::array<Vec4, 24> out;
  int k = 0;
  for (int axis = 0; axis < 4; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Vec4 v = Vec4::Zero();
      v(axis) = sign;
      out[k++] = v;
    }
  }
  for (int mask = 0; mask < 16; ++mask) {
    Vec4 v;
    for (int i = 0; i < 4; ++i) v(i) = (mask >> i) & 1 ? -0.5 : 0.5;
    out[k++] = v;
  }
  return out;
}

SpectralSweep spectral_sweep(std::size_t directions, std::uint64_t seed, double tolerance, double slack,
                             std::size_t table_rows) {
  const auto units = hurwitz_units();
  constexpr std::size_t kTriples = 24 * 24 * 24;
  constexpr std::size_t kZeroStratum = 24 * 24;
  const std::size_t total = directions + kTriples + kZeroStratum;

  struct Sample {
    double root_error = 0.0;
    double cosine_error = 0.0;
    double bound_violation = 0.0;
    double m = 0.0;
    double n = 0.0;
    Vec12 values;
  };
  const auto samples = collect<Sample>(total, [&](std::size_t k) {
    Vec12 d;
    if (k < directions) {
      SampleRng rng(seed, "direction", k);
      d = rng.sphere<kDim>(std::numbers::sqrt3);
    } else if (const std::size_t j = k - directions; j < kTriples) {
      d = join(units[j / 576], units[(j / 24) % 24], units[j % 24]);
    } else {
      const std::size_t i = j - kTriples;
      d = join(Vec4::Zero(), units[i / 24], std::numbers::sqrt2 * units[i % 24]);
    }
    const Direction dir = Direction::from_sqrt3(d);
    Sample s;
    s.m = dir.m();
    s.n = dir.n();
    s.values = jacobi_eigenvalues<kDim>(matrix_2Qd(dir));
    const auto roots = characteristic_roots(s.m, s.n);
    if (roots.size() != 12) {
      s.root_error = std::numeric_limits<double>::quiet_NaN();
    } else {
      for (int i = 0; i < 12; ++i) s.root_error = std::max(s.root_error, std::abs(s.values(i) - roots[i]));
    }
    const auto cosine = spectrum_closed_form(dir);
    for (int i = 0; i < 12; ++i) s.cosine_error = std::max(s.cosine_error, std::abs(s.values(i) - cosine[i]));
    const Vec12& l = s.values;
    s.bound_violation = std::max({l(0) - 2.0, 1.0 - l(3), l(8) + 1.0, -2.0 - l(11), std::numbers::sqrt3 - l(0),
                                  l(11) + std::numbers::sqrt3});
    return s;
  });

  SpectralSweep out;
  out.char_poly = make_check("characteristic_roots", tolerance);
  out.cosine = make_check("cosine_spectrum", tolerance);
  out.bounds = make_check("eigenvalue_bounds", slack);
  for (std::size_t k = 0; k < total; ++k) {
    const Witness w = k < directions ? at("direction", k) : at("strata", k - directions);
    track_max(out.char_poly, samples[k].root_error, w);
    track_max(out.cosine, samples[k].cosine_error, w);
    track_max(out.bounds, samples[k].bound_violation, w);
  }
  out.char_poly.details = {{"random_directions", directions}, {"strata_directions", kTriples + kZeroStratum}};
  settle(out.char_poly);
  settle(out.cosine);
  settle(out.bounds);

  for (std::size_t k = 0; k < std::min(table_rows, directions); ++k) {
    Json row = {{"index", k}, {"m", samples[k].m}, {"n", samples[k].n}};
    Json values = Json::array();
    for (int i = 0; i < 12; ++i) values.push_back(samples[k].values(i));
    row["eigenvalues"] = values;
    out.eigen_table.push_back(row);
  }
  return out;
}

DeltaSweep delta_sweep(std::size_t samples, std::uint64_t seed) {
  const auto values = collect<double>(samples, [&](std::size_t k) {
    SampleRng rng(seed, "delta", k);
    const Direction dir = Direction::from_sqrt3(rng.sphere<kDim>(std::numbers::sqrt3));
    const Vec12 l = jacobi_eigenvalues<kDim>(matrix_2Qd(dir));
    const PerpExtremes perp = lambda_perp(dir);
    return std::max(perp.plus / l(2), perp.minus / l(9));
  });
  DeltaSweep out;
  out.check = make_check("delta_below_three_halves", 1.5, "<");
  for (std::size_t k = 0; k < samples; ++k) track_max(out.check, values[k], at("delta", k));
  settle(out.check);
  out.delta_hat = out.check.worst;
  char text[32];
  std::snprintf(text, sizeof text, "%.4f", out.delta_hat);
  out.check.details = {{"delta_hat", text}};
  return out;
}

Check cubic_roots_sweep(std::size_t grid) {
  Check c = make_check("cubic_root_bounds", 0.0);
  for (std::size_t k = 0; k < grid; ++k) {
    const double m = std::clamp(-1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(grid - 1), -1.0, 1.0);
    track_max(c, cubic_roots_check(m).all() ? 0.0 : 1.0, at("m_grid", k));
  }
  c.details = {{"worst_is", "1 when any bound fails"}};
  settle(c);
  return c;
}

Check cor4_sweep(std::size_t pairs, std::uint64_t seed, double slack) {
  const auto values = collect<double>(pairs, [&](std::size_t k) {
    SampleRng rng(seed, "cor4", k);
    const Vec12 u = rng.sphere<kDim>(std::numbers::sqrt3);
    const Vec12 v = rng.sphere<kDim>(std::numbers::sqrt3);
    const Cor4Result r = cor4_evaluate(u, v, slack);
    return std::max(r.difference - r.upper_bound, r.lower_bound - r.difference);
  });
  Check c = make_check("cubic_difference_bounds", slack);
  for (std::size_t k = 0; k < pairs; ++k) track_max(c, values[k], at("cor4", k));
  settle(c);
  return c;
}

FdSweep fd_sweep(std::size_t points, std::uint64_t seed, double tolerance) {
  constexpr double kGradStep = 1e-5;
  constexpr double kHessStep = 1e-4;
  struct Errors {
    double gradient = 0.0;
    double hessian = 0.0;
  };
  const auto errors = collect<Errors>(points, [&](std::size_t k) {
    SampleRng rng(seed, "fd", k);
    const Vec12 x = rng.sphere<kDim>(rng.uniform(0.5, 2.0));
    const Vec12 g = grad_w(x);
    const Mat12 h = hess_w(x);
    Vec12 g_fd;
    Mat12 h_fd;
    const Mat12 id = Mat12::Identity();
    for (int i = 0; i < kDim; ++i) {
      const Vec12 ei = id.col(i);
      g_fd(i) = (eval_w(x + kGradStep * ei) - eval_w(x - kGradStep * ei)) / (2.0 * kGradStep);
      for (int j = i; j < kDim; ++j) {
        const Vec12 ej = id.col(j);
        const double hh = kHessStep;
        h_fd(i, j) = (eval_w(x + hh * ei + hh * ej) - eval_w(x + hh * ei - hh * ej) - eval_w(x - hh * ei + hh * ej) +
                      eval_w(x - hh * ei - hh * ej)) /
                     (4.0 * hh * hh);
        h_fd(j, i) = h_fd(i, j);
      }
    }
    Errors e;
    e.gradient = (g_fd - g).cwiseAbs().maxCoeff() / std::max(1.0, g.cwiseAbs().maxCoeff());
    e.hessian = (h_fd - h).cwiseAbs().maxCoeff() / std::max(1.0, h.cwiseAbs().maxCoeff());
    return e;
  });
  FdSweep out;
  out.gradient = make_check("fd_gradient", tolerance, "<");
  out.hessian = make_check("fd_hessian", tolerance, "<");
  for (std::size_t k = 0; k < points; ++k) {
    track_max(out.gradient, errors[k].gradient, at("fd", k));
    track_max(out.hessian, errors[k].hessian, at("fd", k));
  }
  settle(out.gradient);
  settle(out.hessian);
  return out;
}

double ratio_bound() { return 1536.0 * std::numbers::sqrt3; }

namespace {

double pair_ratio(const Vec12& a, const Vec12& b) {
  const Vec12 mu = pair_spectrum(a, b);
  if (!(mu(0) > 0.0 && mu(kDim - 1) < 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return -mu(0) / mu(kDim - 1);
}

}  // namespace

PairSweep pair_sweep(std::size_t pairs, std::uint64_t seed, double slack) {
  struct Sample {
    double shortfall = 0.0;
    double ratio = 0.0;
    double euler = 0.0;
  };
  const auto samples = collect<Sample>(pairs, [&](std::size_t k) {
    SampleRng rng(seed, "pair", k);
    const Vec12 a = rng.sphere<kDim>();
    const Vec12 b = k % 50 == 49 ? Vec12(-a) : rng.sphere<kDim>();
    Sample s;
    const Prop2Witness w = prop2_witness(a, b);
    s.shortfall = std::max(w.separation - w.gain_e, w.gain_f + w.separation);
    s.ratio = pair_ratio(a, b);
    s.euler = (hess_w(a) * a - grad_w(a)).norm();
    return s;
  });

  PairSweep out;
  out.witnesses = make_check("separation_witnesses", slack);
  out.ratio = make_check("pair_ratio_bound", ratio_bound());
  out.euler = make_check("euler_identity", kEulerTolerance);
  out.ratio_min = std::numeric_limits<double>::infinity();
  out.ratio_max = 0.0;

  constexpr int kBins = 64;
  constexpr double kLo = -1.0;
  constexpr double kHi = 1.0;
  std::vector<std::size_t> counts(kBins + 2, 0);
  for (std::size_t k = 0; k < pairs; ++k) {
    const Sample& s = samples[k];
    track_max(out.witnesses, s.shortfall, at("pair", k));
    track_max(out.ratio, std::isnan(s.ratio) ? s.ratio : std::max(s.ratio, 1.0 / s.ratio), at("pair", k));
    track_max(out.euler, s.euler, at("pair", k));
    if (!std::isnan(s.ratio)) {
      out.ratio_min = std::min(out.ratio_min, s.ratio);
      out.ratio_max = std::max(out.ratio_max, s.ratio);
      const double t = std::log10(s.ratio);
      const int bin = t < kLo ? 0 : t >= kHi ? kBins + 1 : 1 + static_cast<int>((t - kLo) / (kHi - kLo) * kBins);
      ++counts[std::min(bin, kBins + 1)];
    }
  }
  settle(out.witnesses);
  settle(out.ratio);
  settle(out.euler);
  out.ratio.details = {{"ratio_min", out.ratio_min}, {"ratio_max", out.ratio_max}};

  const double width = (kHi - kLo) / kBins;
  out.histogram.push_back({{"log10_lo", "-inf"}, {"log10_hi", kLo}, {"count", counts[0]}});
  for (int b = 0; b < kBins; ++b) {
    out.histogram.push_back({{"log10_lo", kLo + b * width}, {"log10_hi", kLo + (b + 1) * width}, {"count", counts[b + 1]}});
  }
  out.histogram.push_back({{"log10_lo", kHi}, {"log10_hi", "inf"}, {"count", counts[kBins + 1]}});
  return out;
}

Check third_derivative_sweep(std::size_t samples, std::uint64_t seed) {
  const auto values = collect<double>(samples, [&](std::size_t k) {
    SampleRng rng(seed, "third_derivative", k);
    const Vec12 x = rng.sphere<kDim>();
    const Vec12 e = rng.sphere<kDim>();
    const Vec12 f = rng.sphere<kDim>();
    const Vec12 g = rng.sphere<kDim>();
    return std::abs(third_derivative(x, e, f, g));
  });
  Check c = make_check("third_derivative_bound", kThirdDerivativeBound + 1e-3);
  for (std::size_t k = 0; k < samples; ++k) track_max(c, values[k], at("third_derivative", k));
  settle(c);
  return c;
}

double empirical_M(std::size_t pairs, std::uint64_t seed) {
  const auto values = collect<double>(pairs, [&](std::size_t k) {
    SampleRng rng(seed, "m_hat", k);
    const Vec12 a = rng.sphere<kDim>();
    const Vec12 b = rng.sphere<kDim>();
    const double r = pair_ratio(a, b);
    return std::max(r, 1.0 / r);
  });
  double m = 1.0;
  for (double v : values) {
    if (std::isnan(v)) throw std::runtime_error("empirical_M: pair difference is not indefinite");
    m = std::max(m, v);
  }
  return m;
}

double lambda_for(LambdaPolicy policy, double m_hat) {
  return (kDim - 1) * (policy == LambdaPolicy::paper ? ratio_bound() : m_hat);
}

SupportSweep support_sweep(std::size_t samples, std::uint64_t seed, const ConeParams& cone) {
  constexpr double kStep = 1e-6;
  struct Sample {
    double homogeneity = 0.0;
    double subadditivity = 0.0;
    double gradient = 0.0;
    double bounds = 0.0;
  };
  const auto values = collect<Sample>(
      samples,
      [&](std::size_t k) {
        SampleRng rng(seed, "support", k);
        const Coords77 z1 = rng.sphere<kTracelessDim>();
        const Coords77 z2 = rng.sphere<kTracelessDim>(rng.uniform(0.1, 2.0));
        const double t = rng.uniform(0.1, 10.0);
        const double x1 = support_x(z1, cone);
        Sample s;
        s.homogeneity = std::abs(support_x(Coords77(t * z1), cone) - t * x1);
        s.subadditivity = support_x(Coords77(z1 + z2), cone) - x1 - support_x(z2, cone);
        Coords77 grad;
        for (int i = 0; i < kTracelessDim; ++i) {
          Coords77 plus = z1;
          Coords77 minus = z1;
          plus(i) += kStep;
          minus(i) -= kStep;
          grad(i) = (support_x(plus, cone) - support_x(minus, cone)) / (2.0 * kStep);
        }
        s.gradient = grad.norm();
        const double f = z1.norm();
        s.bounds = std::max(support_x_lower_bound(f, cone) - x1, x1 - support_x_upper_bound(f));
        return s;
      },
      8);

  SupportSweep out;
  out.zero = make_check("support_at_zero", 0.0);
  track_max(out.zero, std::abs(support_x(Coords77(Coords77::Zero()), cone)), at("support_zero", 0));
  out.homogeneity = make_check("support_homogeneity", kSupportTolerance);
  out.subadditivity = make_check("support_subadditivity", kSupportTolerance);
  out.gradient = make_check("support_gradient", kRootDim, "<");
  out.bounds = make_check("support_frobenius_bounds", kSupportTolerance);
  for (std::size_t k = 0; k < samples; ++k) {
    track_max(out.homogeneity, values[k].homogeneity, at("support", k));
    track_max(out.subadditivity, values[k].subadditivity, at("support", k));
    track_max(out.gradient, values[k].gradient, at("support", k));
    track_max(out.bounds, values[k].bounds, at("support", k));
  }
  for (Check* c : {&out.zero, &out.homogeneity, &out.subadditivity, &out.gradient, &out.bounds}) settle(*c);
  return out;
}

Check graph_check(const SigmaSample& sigma, const ConeParams& cone, double tolerance) {
  const GraphReport g = check_graph(sigma, cone);
  Check c = make_check("graph_invariant", tolerance);
  c.samples = g.ordered_pairs;
  c.worst = g.worst_excess;
  c.witness = at("sigma", g.worst_i);
  c.details = {{"paired_with", g.worst_j},
               {"lambda", cone.lambda()},
               {"worst_exact", g.exact_pairs > 0 ? Json(g.worst_exact) : Json()},
               {"exact_unordered_pairs", g.exact_pairs},
               {"worst_is", "upper bound; pairs settled by the Frobenius bound on x count at the bound"}};
  settle(c);
  return c;
}

Check cone_condition_check(const SigmaSample& sigma, std::size_t count, const ConeParams& cone,
                           const std::string& name) {
  std::vector<SymMat12> set;
  set.reserve(count);
  for (std::size_t k = 0; k < count; ++k) set.push_back(SymMat12::from_coords(sigma.points[k].z, sigma.points[k].s));
  const ConeConditionReport r = cone_condition(set, cone);
  Check c = make_check(name, 0.0);
  c.samples = r.pairs_checked;
  c.worst = static_cast<double>(r.violations.size());
  c.details = {{"lambda", cone.lambda()}, {"points", count}};
  if (!r.violations.empty()) {
    c.witness = at("sigma", r.violations.front().first);
    c.details["paired_with"] = r.violations.front().second;
  }
  settle(c);
  return c;
}

ZeroLevelSweep zero_level_sweep(const SigmaSample& sigma, const ConeParams& cone, std::size_t heldout,
                                std::uint64_t heldout_seed) {
  const std::size_t n = sigma.count();
  const std::array<std::size_t, 4> counts{n / 8, n / 4, n / 2, n};
  std::vector<Vec12> points(heldout);
  for (std::size_t k = 0; k < heldout; ++k) {
    SampleRng rng(heldout_seed, "heldout", k);
    points[k] = rng.sphere<kDim>();
  }
  ZeroLevelSweep out;
  out.curve = zero_level_curve(sigma, cone, points, counts);
  out.within_gap = make_check("zero_level_within_gap", 1.0);
  out.monotone = make_check("zero_level_monotone", 0.0);
  for (std::size_t i = 0; i < out.curve.size(); ++i) {
    const ZeroLevelPoint& p = out.curve[i];
    Witness w{"sigma_prefix", p.count, std::nullopt};
    track_max(out.within_gap, p.max_abs_F / (5.0 * p.gap_bound), w);
    if (i > 0) track_max(out.monotone, p.max_abs_F - out.curve[i - 1].max_abs_F, w);
  }
  out.within_gap.details = {{"heldout", heldout}, {"heldout_seed", heldout_seed}, {"worst_is", "max|F| / (5 gap)"}};
  settle(out.within_gap);
  settle(out.monotone);
  return out;
}

namespace {

void set_single(Check& c, double worst, std::size_t samples, const std::optional<std::size_t>& failure,
                const char* stream) {
  c.worst = worst;
  c.samples = samples;
  if (failure) c.witness = at(stream, *failure);
  settle(c);
}

}  // namespace

EllipticitySweep ellipticity_sweep(const OperatorF& op, std::size_t trials, std::uint64_t seed) {
  EllipticitySweep out;
  out.report = ellipticity_probe(op, trials, seed);
  const EllipticityReport& r = out.report;
  out.monotone = make_check("psd_monotonicity", -1e-9, ">=");
  set_single(out.monotone, r.worst_monotone_drop, trials, r.first_failure, "ellipticity");
  out.level_set = make_check("level_set_cone", 0.0);
  set_single(out.level_set, static_cast<double>(r.level_set_violations), trials, r.first_failure, "ellipticity");
  out.positive_slope = make_check("rank_one_slope_positive", 0.0, ">");
  set_single(out.positive_slope, r.min_slope, trials, r.first_failure, "ellipticity");
  out.lambda_hat = make_check("ellipticity_constant", r.lambda_paper_chain);
  set_single(out.lambda_hat, r.lambda_hat, trials, std::nullopt, "ellipticity");
  out.lambda_hat.details = {{"min_slope", r.min_slope}, {"max_slope", r.max_slope}, {"identity_slope", r.identity_slope}};
  return out;
}

ViscositySweep viscosity_sweep(const OperatorF& op, std::size_t trials, std::uint64_t seed, double tolerance,
                               std::size_t verify_samples) {
  ViscositySweep out;
  out.report = viscosity_probe(op, trials, seed, tolerance, verify_samples);
  const ViscosityReport& r = out.report;
  std::optional<Witness> witness;
  if (r.first_failure) witness = at(*r.first_failure % 2 == 0 ? "minorant" : "majorant", *r.first_failure / 2);
  out.minorants = make_check("minorants_nonpositive", tolerance);
  out.minorants.worst = r.max_F_minorant;
  out.minorants.samples = r.minorants;
  out.majorants = make_check("majorants_nonnegative", -tolerance, ">=");
  out.majorants.worst = r.min_F_majorant;
  out.majorants.samples = r.majorants;
  out.margins = make_check("touching_margin", 0.0, ">");
  out.margins.worst = r.min_sampled_margin;
  out.margins.samples = r.minorants + r.majorants;
  out.margins.details = {{"verify_samples", verify_samples}};
  for (Check* c : {&out.minorants, &out.majorants, &out.margins}) {
    settle(*c);
    if (!c->pass) c->witness = witness;
  }
  return out;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance;
  j["lambda_policy"] = to_string(c.lambda_policy);
  j["out"] = c.out.generic_string();
  j["directions"] = c.directions;
  j["delta_samples"] = c.delta_samples;
  j["cor4_pairs"] = c.cor4_pairs;
  j["lemma_grid"] = c.lemma_grid;
  j["bound_slack"] = c.bound_slack;
  j["pairs"] = c.pairs;
  j["fd_points"] = c.fd_points;
  j["third_samples"] = c.third_samples;
  j["fd_tolerance"] = c.fd_tolerance;
  j["m_hat_pairs"] = c.m_hat_pairs;
  j["sigma_count"] = c.sigma_count;
  j["cone_count"] = c.cone_count;
  j["heldout"] = c.heldout;
  j["heldout_seed"] = c.effective_heldout_seed();
  j["support_samples"] = c.support_samples;
  j["ellipticity_trials"] = c.ellipticity_trials;
  j["ellipticity_sigma"] = c.ellipticity_sigma;
  j["graph_tolerance"] = c.graph_tolerance;
  j["viscosity_trials"] = c.viscosity_trials;
  j["verify_samples"] = c.verify_samples;
  j["viscosity_tolerance"] = c.viscosity_tolerance;
  return j;
}

Report run_verify_spectral(const RunConfig& config) {
  Report r;
  r.suite = "verify-spectral";
  r.seed = config.seed;
  r.config = config_json(config);
  SpectralSweep s = spectral_sweep(config.directions, config.seed, config.tolerance, config.bound_slack);
  const DeltaSweep d = delta_sweep(config.delta_samples, config.seed);
  r.checks = {s.char_poly, s.cosine, s.bounds, d.check, cubic_roots_sweep(config.lemma_grid),
              cor4_sweep(config.cor4_pairs, config.seed, config.bound_slack)};
  r.constants["delta_hat"] = d.delta_hat;
  r.tables["eigenvalues"] = std::move(s.eigen_table);
  return r;
}

Report run_verify_hessian(const RunConfig& config) {
  Report r;
  r.suite = "verify-hessian";
  r.seed = config.seed;
  r.config = config_json(config);
  const FdSweep fd = fd_sweep(config.fd_points, config.seed, config.fd_tolerance);
  PairSweep pairs = pair_sweep(config.pairs, config.seed, config.bound_slack);
  const Check third = third_derivative_sweep(config.third_samples, config.seed);
  r.checks = {fd.gradient, fd.hessian, pairs.witnesses, pairs.ratio, pairs.euler, third};
  r.constants["M_hat"] = std::max(pairs.ratio_max, 1.0 / pairs.ratio_min);
  r.constants["ratio_min"] = pairs.ratio_min;
  r.constants["ratio_max"] = pairs.ratio_max;
  r.constants["M_bound"] = ratio_bound();
  r.constants["third_derivative_max"] = third.worst;
  r.tables["ratio_histogram"] = std::move(pairs.histogram);
  return r;
}

namespace {

bool cache_matches(const LoadedSigma& loaded, const RunConfig& config, double lambda) {
  return loaded.sigma.seed == config.seed && loaded.sigma.count() == config.sigma_count && loaded.lambda == lambda;
}

}  // namespace

Report run_build_operator(const RunConfig& config) {
  Report r;
  r.suite = "build-operator";
  r.seed = config.seed;
  r.config = config_json(config);

  const double m_hat = empirical_M(config.m_hat_pairs, config.seed);
  const double lambda_empirical = lambda_for(LambdaPolicy::empirical, m_hat);
  const double lambda_paper = lambda_for(LambdaPolicy::paper, m_hat);
  const ConeParams cone(config.lambda_policy == LambdaPolicy::paper ? lambda_paper : lambda_empirical);
  r.constants["M_hat"] = m_hat;
  r.constants["lambda"] = cone.lambda();
  r.constants["lambda_policy"] = to_string(config.lambda_policy);
  r.constants["lambda_paper"] = lambda_paper;
  r.constants["Lambda_paper_chain"] = 4.0 * lambda_paper * lambda_paper * kRootDim;
  r.constants["Lambda_operator_bound"] = 4.0 * cone.lambda2() * kRootDim;

  std::optional<SigmaSample> sigma;
  bool reused = false;
  if (!config.rebuild && std::filesystem::exists(config.cache_path())) {
    LoadedSigma loaded = load_sigma(config.cache_path());
    if (cache_matches(loaded, config, cone.lambda())) {
      sigma = std::move(loaded.sigma);
      reused = true;
    }
  }
  if (!sigma) sigma = sample_sigma(config.sigma_count, config.seed);
  r.constants["sigma_cache_reused"] = reused;

  const Check graph = graph_check(*sigma, cone, config.graph_tolerance);
  r.checks.push_back(graph);
  if (!graph.pass) return r;  // a broken graph invalidates everything downstream
  if (!reused) save_sigma(*sigma, cone, config.cache_path());

  const std::size_t cone_count = std::min(config.cone_count, sigma->count());
  r.checks.push_back(cone_condition_check(*sigma, cone_count, ConeParams(lambda_empirical), "cone_condition_empirical"));
  r.checks.push_back(cone_condition_check(*sigma, cone_count, ConeParams(lambda_paper), "cone_condition_paper"));

  const SupportSweep support = support_sweep(config.support_samples, config.seed, cone);
  for (const Check& c : {support.zero, support.homogeneity, support.subadditivity, support.gradient, support.bounds}) {
    r.checks.push_back(c);
  }

  const ZeroLevelSweep zero = zero_level_sweep(*sigma, cone, config.heldout, config.effective_heldout_seed());
  r.checks.push_back(zero.within_gap);
  r.checks.push_back(zero.monotone);
  Json curve = Json::array();
  for (const auto& p : zero.curve) {
    curve.push_back({{"count", p.count}, {"max_abs_F", p.max_abs_F}, {"gap_bound", p.gap_bound}});
  }
  r.constants["maxF_curve"] = curve;
  r.tables["maxF_curve"] = curve;

  const OperatorF op(sigma->prefix(std::min(config.ellipticity_sigma, sigma->count())), cone);
  const EllipticitySweep ell = ellipticity_sweep(op, config.ellipticity_trials, config.seed);
  for (const Check& c : {ell.monotone, ell.level_set, ell.positive_slope, ell.lambda_hat}) r.checks.push_back(c);
  r.constants["Lambda_hat"] = ell.report.lambda_hat;
  r.constants["identity_slope"] = ell.report.identity_slope;
  return r;
}

Report run_viscosity_test(const RunConfig& config) {
  Report r;
  r.suite = "viscosity-test";
  r.seed = config.seed;
  r.config = config_json(config);
  if (!std::filesystem::exists(config.cache_path())) {
    throw CacheError("no sigma cache at " + config.cache_path().string() + "; run build-operator first");
  }
  LoadedSigma loaded = load_sigma(config.cache_path());
  const ConeParams cone(loaded.lambda);
  r.constants["lambda"] = cone.lambda();
  r.constants["sigma_count"] = loaded.sigma.count();
  r.constants["sigma_seed"] = loaded.sigma.seed;
  const OperatorF op(std::move(loaded.sigma), cone);
  const ViscositySweep v = viscosity_sweep(op, config.viscosity_trials, config.seed, config.viscosity_tolerance,
                                           config.verify_samples);
  r.checks = {v.minorants, v.majorants, v.margins};
  r.constants["max_F_minorant"] = v.report.max_F_minorant;
  r.constants["min_F_majorant"] = v.report.min_F_majorant;
  return r;
}

std::filesystem::path suite_report_path(const std::filesystem::path& out, const std::string& suite) {
  return out / (suite + ".json");
}

namespace {

std::string csv_number(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char text[40];
    std::snprintf(text, sizeof text, "%.17g", v.get<double>());
    return text;
  }
  return v.dump();
}

void write_csv(const std::filesystem::path& path, const std::string& header, const std::vector<std::string>& rows) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << header << '\n';
    for (const auto& row : rows) out << row << '\n';
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Json run_report(const std::filesystem::path& out) {
  if (!std::filesystem::is_directory(out)) throw std::runtime_error("report: no such directory " + out.string());
  std::string missing;
  for (const char* suite : kSuites) {
    if (!std::filesystem::exists(suite_report_path(out, suite))) missing += std::string(missing.empty() ? "" : ", ") + suite;
  }
  if (!missing.empty()) throw std::runtime_error("report: missing suite reports in " + out.string() + ": " + missing);

  Json suites = Json::object();
  for (const char* suite : kSuites) {
    Json j = read_json(suite_report_path(out, suite));
    if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion) {
      throw std::runtime_error(std::string("report: unsupported schema in ") + suite + ".json");
    }
    suites[suite] = std::move(j);
  }
  const Json& spectral = suites["verify-spectral"];
  const Json& hessian = suites["verify-hessian"];
  const Json& op = suites["build-operator"];

  Json merged;
  merged["schema_version"] = kSchemaVersion;
  bool pass = true;
  for (const char* suite : kSuites) pass = pass && suites[suite]["pass"].get<bool>();
  merged["pass"] = pass;
  merged["delta_hat"] = spectral["constants"]["delta_hat"];
  merged["M_hat"] = hessian["constants"]["M_hat"];
  merged["Lambda_paper_chain"] = op["constants"].value("Lambda_paper_chain", Json());
  merged["Lambda_hat"] = op["constants"].value("Lambda_hat", Json());
  merged["maxF_curve"] = op["constants"].value("maxF_curve", Json::array());
  Json summary = Json::object();
  for (const char* suite : kSuites) {
    Json s;
    s["pass"] = suites[suite]["pass"];
    s["seed"] = suites[suite]["seed"];
    Json checks = Json::object();
    for (const auto& c : suites[suite]["checks"]) checks[c["name"].get<std::string>()] = c["pass"];
    s["checks"] = checks;
    s["constants"] = suites[suite]["constants"];
    summary[suite] = s;
  }
  merged["suites"] = summary;

  const std::filesystem::path tables = out / "tables";
  std::filesystem::create_directories(tables);

  std::vector<std::string> rows;
  for (const auto& row : spectral["tables"]["eigenvalues"]) {
    std::string line = csv_number(row["index"]) + "," + csv_number(row["m"]) + "," + csv_number(row["n"]);
    for (const auto& v : row["eigenvalues"]) line += "," + csv_number(v);
    rows.push_back(line);
  }
  std::string header = "index,m,n";
  for (int i = 1; i <= 12; ++i) header += ",lambda" + std::to_string(i);
  write_csv(tables / "eigenvalues.csv", header, rows);

  rows.clear();
  for (const auto& row : hessian["tables"]["ratio_histogram"]) {
    rows.push_back(csv_number(row["log10_lo"]) + "," + csv_number(row["log10_hi"]) + "," + csv_number(row["count"]));
  }
  write_csv(tables / "ratio_histogram.csv", "log10_ratio_lo,log10_ratio_hi,count", rows);

  rows.clear();
  for (const auto& row : merged["maxF_curve"]) {
    rows.push_back(csv_number(row["count"]) + "," + csv_number(row["max_abs_F"]) + "," + csv_number(row["gap_bound"]));
  }
  write_csv(tables / "maxF_curve.csv", "count,max_abs_F,gap_bound", rows);

  write_json(merged, out / "report.json");
  return merged;
}

}  // namespace quatvisc::verify
