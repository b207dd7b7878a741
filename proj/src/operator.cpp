#include "quatvisc/operator.hpp"

#include "quatvisc/hessian_map.hpp"
#include "quatvisc/jacobi.hpp"
#include "quatvisc/parallel.hpp"
#include "quatvisc/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

namespace quatvisc {

namespace {

const double kRootDim = std::sqrt(static_cast<double>(kDim));

constexpr int kCacheFormat = 1;
constexpr int kCacheColumns = kDim + kTracelessDim + 1;

// x of the negated matrix, from the descending spectrum of the original.
double support_x_negated(const Vec12& alpha, double frobenius, const ConeParams& cone) {
  const Vec12 neg = -alpha.reverse();
  return support_x_from_eigenvalues(neg, frobenius, cone);
}

}  // namespace

SigmaPoint sigma_point(const Vec12& a) {
  const SymMat12 h = H(a);
  return SigmaPoint{a, h.z(), h.s()};
}

SigmaSample SigmaSample::prefix(std::size_t n) const {
  if (n > points.size()) throw std::invalid_argument("SigmaSample::prefix: not enough points");
  SigmaSample out;
  out.seed = seed;
  out.points.assign(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

GraphViolation::GraphViolation(std::size_t i_, std::size_t j_, double excess_)
    : std::runtime_error("graph invariant violated between sigma points " + std::to_string(i_) + " and " +
                         std::to_string(j_) + " (excess " + std::to_string(excess_) + ")"),
      i(i_),
      j(j_),
      excess(excess_) {}

SigmaSample sample_sigma(std::size_t count, std::uint64_t seed) {
  if (count < 2) throw std::invalid_argument("sample_sigma: count must be >= 2");
  SigmaSample out;
  out.seed = seed;
  out.points.resize(count);
  parallel_for(count, [&](std::size_t k) {
    SampleRng rng(seed, "sigma", k);
    out.points[k] = sigma_point(rng.sphere<kDim>());
  });
  return out;
}

GraphReport check_graph(const SigmaSample& sigma, const ConeParams& cone) {
  const std::size_t n = sigma.count();
  std::vector<Mat12> traceless(n);
  for (std::size_t i = 0; i < n; ++i) traceless[i] = traceless_matrix(sigma.points[i].z);

  struct Row {
    double excess = -1e300;
    std::size_t i = 0;
    std::size_t j = 0;
    double exact = -1e300;
    std::size_t exact_pairs = 0;
  };
  std::vector<Row> rows(n);
  parallel_for(
      n,
      [&](std::size_t i) {
        Row& row = rows[i];
        for (std::size_t j = i + 1; j < n; ++j) {
          const double ds = sigma.points[i].s - sigma.points[j].s;
          const double f = (sigma.points[i].z - sigma.points[j].z).norm();
          double e_ij;
          double e_ji;
          const double lb = support_x_lower_bound(f, cone);
          if (std::abs(ds) <= lb) {
            // Both directions are settled by the lower bound on x.
            e_ij = e_ji = std::abs(ds) - lb;
          } else {
            const Vec12 alpha = jacobi_eigenvalues<kDim>(traceless[i] - traceless[j]);
            e_ij = ds - support_x_from_eigenvalues(alpha, f, cone);
            e_ji = -ds - support_x_negated(alpha, f, cone);
            row.exact = std::max({row.exact, e_ij, e_ji});
            ++row.exact_pairs;
          }
          if (e_ij > row.excess) row = {e_ij, i, j, row.exact, row.exact_pairs};
          if (e_ji > row.excess) row = {e_ji, j, i, row.exact, row.exact_pairs};
        }
      },
      4);

  GraphReport report;
  report.ordered_pairs = n * (n - 1);
  report.worst_excess = -1e300;
  report.worst_exact = -1e300;
  for (const auto& row : rows) {
    if (row.excess > report.worst_excess) {
      report.worst_excess = row.excess;
      report.worst_i = row.i;
      report.worst_j = row.j;
    }
    report.worst_exact = std::max(report.worst_exact, row.exact);
    report.exact_pairs += row.exact_pairs;
  }
  return report;
}

SigmaSample build_sigma(std::size_t count, std::uint64_t seed, const ConeParams& cone, double tol) {
  SigmaSample sigma = sample_sigma(count, seed);
  const GraphReport report = check_graph(sigma, cone);
  if (report.worst_excess > tol) throw GraphViolation(report.worst_i, report.worst_j, report.worst_excess);
  return sigma;
}

void save_sigma(const SigmaSample& sigma, const ConeParams& cone, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CacheError("save_sigma: cannot open " + tmp.string());
    out.precision(17);
    out << "# quatvisc sigma cache\n";
    out << "# format=" << kCacheFormat << "\n";
    out << "# seed=" << sigma.seed << "\n";
    out << "# count=" << sigma.count() << "\n";
    out << "# lambda=" << cone.lambda() << "\n";
    out << "# basis_hash=" << basis_version_hash() << "\n";
    for (const auto& p : sigma.points) {
      for (int k = 0; k < kDim; ++k) out << p.a(k) << ',';
      for (int k = 0; k < kTracelessDim; ++k) out << p.z(k) << ',';
      out << p.s << '\n';
    }
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw CacheError("save_sigma: write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

namespace {

template <typename T>
T parse_number(std::string_view text, const std::string& what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw CacheError("load_sigma: bad " + what + " '" + std::string(text) + "'");
  return value;
}

}  // namespace

LoadedSigma load_sigma(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CacheError("load_sigma: cannot open " + path.string());

  LoadedSigma out;
  int format = -1;
  bool have_seed = false;
  bool have_lambda = false;
  std::uint64_t hash = 0;
  std::size_t count = 0;
  bool have_count = false;

  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string_view value(line.data() + eq + 1, line.size() - eq - 1);
      if (key == "format") format = parse_number<int>(value, "format");
      else if (key == "seed") { out.sigma.seed = parse_number<std::uint64_t>(value, "seed"); have_seed = true; }
      else if (key == "count") { count = parse_number<std::size_t>(value, "count"); have_count = true; }
      else if (key == "lambda") { out.lambda = parse_number<double>(value, "lambda"); have_lambda = true; }
      else if (key == "basis_hash") hash = parse_number<std::uint64_t>(value, "basis hash");
      continue;
    }
    if (format != kCacheFormat) throw CacheError("load_sigma: unsupported or missing format");
    if (!have_seed || !have_count || !have_lambda) throw CacheError("load_sigma: incomplete header");
    if (hash != basis_version_hash()) throw CacheError("load_sigma: basis layout mismatch");

    std::vector<double> fields;
    fields.reserve(kCacheColumns);
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      fields.push_back(parse_number<double>(std::string_view(line).substr(start, comma - start), "value"));
      start = comma + 1;
    }
    if (fields.size() != static_cast<std::size_t>(kCacheColumns)) {
      throw CacheError("load_sigma: row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                       " columns");
    }
    SigmaPoint p;
    for (int k = 0; k < kDim; ++k) p.a(k) = fields[k];
    for (int k = 0; k < kTracelessDim; ++k) p.z(k) = fields[kDim + k];
    p.s = fields[kCacheColumns - 1];
    out.sigma.points.push_back(p);
    ++row;
  }
  if (format != kCacheFormat) throw CacheError("load_sigma: unsupported or missing format");
  if (!have_count || out.sigma.count() != count) throw CacheError("load_sigma: truncated file");
  if (count < 2) throw CacheError("load_sigma: fewer than two points");
  try {
    ConeParams check(out.lambda);
  } catch (const std::invalid_argument&) {
    throw CacheError("load_sigma: invalid lambda");
  }

  // Every stored row must reproduce from its source point.
  for (std::size_t k = 0; k < count; ++k) {
    const SigmaPoint& p = out.sigma.points[k];
    if (std::abs(p.a.norm() - 1.0) > 1e-12) throw CacheError("load_sigma: row " + std::to_string(k) + " is off the sphere");
    const SigmaPoint fresh = sigma_point(p.a);
    const double err = std::max((fresh.z - p.z).cwiseAbs().maxCoeff(), std::abs(fresh.s - p.s));
    if (err > 1e-12) throw CacheError("load_sigma: row " + std::to_string(k) + " does not match H(a)");
  }
  return out;
}

OperatorF::OperatorF(SigmaSample sigma, ConeParams cone) : sigma_(std::move(sigma)), cone_(cone) {
  if (sigma_.points.empty()) throw std::invalid_argument("OperatorF: empty sigma sample");
  const std::size_t n = sigma_.count();
  traceless_.resize(n);
  top_vectors_.resize(n);
  top_values_.resize(n);
  parallel_for(n, [&](std::size_t w) {
    traceless_[w] = traceless_matrix(sigma_.points[w].z);
    const auto eig = jacobi_eigen<kDim>(traceless_[w]);
    top_vectors_[w] = eig.vectors.leftCols<kPruneRank>();
    top_values_[w] = eig.values.head<kPruneRank>();
  });
}

double OperatorF::g_tilde(const Coords77& z) const { return g_tilde_traceless(traceless_matrix(z), z); }

double OperatorF::g_tilde_traceless(const Mat12& traceless, const Coords77& z) const {
  const std::size_t n = sigma_.count();
  const auto query = jacobi_eigen<kDim>(traceless);
  const Eigen::Matrix<double, kDim, kPruneRank> bottom = query.vectors.rightCols<kPruneRank>().rowwise().reverse();
  const Eigen::Matrix<double, kPruneRank, 1> bottom_values = query.values.tail<kPruneRank>().reverse();

  // Lower bound for s_w + x(z - z_w): the Frobenius bound, and projection bounds
  // onto the lowest eigenvectors of the query and the highest of the stored point,
  // where the difference is most negative.
  std::vector<std::pair<double, std::size_t>> order(n);
  std::vector<double> dist(n);
  for (std::size_t w = 0; w < n; ++w) {
    dist[w] = (z - sigma_.points[w].z).norm();
    double bound = support_x_lower_bound(dist[w], cone_);
    const Mat12& tw = traceless_[w];
    double sum_query = 0.0;
    double sum_stored = 0.0;
    for (int r = 0; r < kPruneRank; ++r) {
      const auto u = bottom.col(r);
      sum_query += bottom_values(r) - u.dot(tw * u);
      const auto v = top_vectors_[w].col(r);
      sum_stored += v.dot(traceless * v) - top_values_[w](r);
      bound = std::max({bound, support_x_projection_bound(sum_query, r + 1, cone_),
                        support_x_projection_bound(sum_stored, r + 1, cone_)});
    }
    order[w] = {sigma_.points[w].s + bound, w};
  }
  std::sort(order.begin(), order.end());
  // Once the bound reaches the best exact value, no later point can win.
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [bound, w] : order) {
    if (bound >= best) break;
    const double value = sigma_.points[w].s +
                         support_x_from_eigenvalues(jacobi_eigenvalues<kDim>(traceless - traceless_[w]), dist[w], cone_);
    best = std::min(best, value);
  }
  return best;
}

double OperatorF::eval(const SymMat12& mat) const {
  const Coords77 z = mat.z();
  Mat12 traceless = mat.matrix();
  traceless.diagonal().array() -= mat.trace() / kDim;
  return mat.s() - g_tilde_traceless(traceless, z);
}

namespace {

// A test matrix near Sigma: H(a) plus a random symmetric perturbation.
SymMat12 random_near_sigma(SampleRng& rng) {
  const Vec12 a = rng.sphere<kDim>();
  Mat12 noise = rng.symmetric<kDim>();
  noise *= rng.uniform(0.0, 1.0) / noise.norm();
  return H(a) + SymMat12(noise);
}

// Random positive semidefinite matrix of rank 1..12 and Frobenius norm in [1e-3, 1].
SymMat12 random_psd(SampleRng& rng) {
  const int rank = rng.uniform_int(1, kDim);
  Eigen::Matrix<double, kDim, Eigen::Dynamic> g(kDim, rank);
  for (int c = 0; c < rank; ++c) g.col(c) = rng.gaussian<kDim>();
  Mat12 e = g * g.transpose();
  e *= std::pow(10.0, rng.uniform(-3.0, 0.0)) / e.norm();
  return SymMat12(e);
}

}  // namespace

EllipticityReport ellipticity_probe(const OperatorF& op, std::size_t trials, std::uint64_t seed) {
  constexpr double kSlopeStep = 1e-4;
  constexpr double kMonotoneTol = 1e-9;
  const ConeParams wide(2.0 * op.cone().lambda());

  struct Trial {
    double drop = 0.0;
    double slope = 0.0;
    double identity_slope = 0.0;
    bool level_ok = true;
  };
  std::vector<Trial> results(trials);
  parallel_for(
      trials,
      [&](std::size_t k) {
        SampleRng rng(seed, "ellipticity", k);
        const SymMat12 a = random_near_sigma(rng);
        const SymMat12 e = random_psd(rng);
        const double fa = op.eval(a);
        Trial& t = results[k];
        t.drop = op.eval(a + e) - fa;

        const Vec12 xi = rng.sphere<kDim>();
        const SymMat12 rank_one(kSlopeStep * xi * xi.transpose());
        t.slope = (op.eval(a + rank_one) - fa) / kSlopeStep;
        t.identity_slope = (op.eval(a + kSlopeStep * SymMat12::identity()) - fa) / kSlopeStep;

        // Move a second matrix onto the level set of a; the difference must lie in L_{2 lambda}.
        const SymMat12 b = random_near_sigma(rng);
        const SymMat12 b_level = b + ((fa - op.eval(b)) / kRootDim) * SymMat12::identity();
        const SymMat12 diff = a - b_level;
        t.level_ok = diff.norm() < 1e-9 || in_L(diff, wide);
      },
      8);

  EllipticityReport report;
  report.trials = trials;
  report.lambda_paper_chain = 4.0 * op.cone().lambda2() * kRootDim;
  report.min_slope = std::numeric_limits<double>::infinity();
  report.max_slope = -std::numeric_limits<double>::infinity();
  report.identity_slope = 0.0;
  report.worst_monotone_drop = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < trials; ++k) {
    const Trial& t = results[k];
    report.min_slope = std::min(report.min_slope, t.slope);
    report.max_slope = std::max(report.max_slope, t.slope);
    report.identity_slope += t.identity_slope / static_cast<double>(trials);
    report.worst_monotone_drop = std::min(report.worst_monotone_drop, t.drop);
    const bool bad_monotone = t.drop < -kMonotoneTol;
    if (bad_monotone) ++report.monotone_violations;
    if (!t.level_ok) ++report.level_set_violations;
    if ((bad_monotone || !t.level_ok || t.slope <= 0.0) && !report.first_failure) report.first_failure = k;
  }
  report.lambda_hat = std::max(report.max_slope, report.min_slope > 0.0 ? 1.0 / report.min_slope
                                                                         : std::numeric_limits<double>::infinity());
  return report;
}

namespace {

// psi(a) = sign (a^T B a - 2 w(a)) on the unit sphere.
double psi(const Mat12& b, double sign, const Vec12& a) { return sign * (a.dot(b * a) - 2.0 * eval_w(a)); }

Vec12 psi_sphere_gradient(const Mat12& b, double sign, const Vec12& a) {
  const Vec12 g = sign * (2.0 * (b * a) - 2.0 * grad_w(a));
  return g - g.dot(a) * a;
}

// Projected gradient ascent with a step size that grows on success and halves on failure.
Vec12 ascend(const Mat12& b, double sign, Vec12 a) {
  double value = psi(b, sign, a);
  double step = 0.05;
  for (int it = 0; it < 4000 && step > 1e-14; ++it) {
    const Vec12 g = psi_sphere_gradient(b, sign, a);
    if (g.norm() < 1e-13) break;
    const Vec12 trial = (a + step * g).normalized();
    const double v = psi(b, sign, trial);
    if (v > value) {
      a = trial;
      value = v;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return a;
}

}  // namespace

TouchingQuadratic touching_quadratic(const Mat12& b, bool minorant, std::uint64_t seed, std::size_t index,
                                     double margin, std::size_t verify_samples) {
  const double sign = minorant ? 1.0 : -1.0;
  constexpr std::size_t kSeeds = 256;
  constexpr std::size_t kStarts = 4;

  SampleRng rng(seed, minorant ? "minorant_search" : "majorant_search", index);
  std::vector<std::pair<double, Vec12>> starts;
  starts.reserve(kSeeds);
  for (std::size_t k = 0; k < kSeeds; ++k) {
    const Vec12 a = rng.sphere<kDim>();
    starts.emplace_back(psi(b, sign, a), a);
  }
  std::partial_sort(starts.begin(), starts.begin() + kStarts, starts.end(),
                    [](const auto& l, const auto& r) { return l.first > r.first; });

  Vec12 best_point = starts[0].second;
  double best = -std::numeric_limits<double>::infinity();
  auto refine = [&](const Vec12& start) {
    const Vec12 a = ascend(b, sign, start);
    const double v = psi(b, sign, a);
    if (v > best) {
      best = v;
      best_point = a;
    }
  };
  for (std::size_t k = 0; k < kStarts; ++k) refine(starts[k].second);

  // Verify on a fresh sample. A sample beating the current supremum seeds another ascent.
  SampleRng verify_rng(seed, minorant ? "minorant_verify" : "majorant_verify", index);
  std::vector<Vec12> checks(verify_samples);
  for (auto& a : checks) a = verify_rng.sphere<kDim>();
  for (int round = 0; round < 8; ++round) {
    double sample_best = -std::numeric_limits<double>::infinity();
    const Vec12* arg = nullptr;
    for (const auto& a : checks) {
      const double v = psi(b, sign, a);
      if (v > sample_best) {
        sample_best = v;
        arg = &a;
      }
    }
    if (sample_best <= best) break;
    refine(*arg);
    best = std::max(best, sample_best);
  }

  // p(x) = x^T (B - sign t I) x / 2 with t = sup psi + 2 margin, so sign (w - p) >= margin on the sphere.
  const double t = best + 2.0 * margin;
  Mat12 m = b;
  m.diagonal().array() -= sign * t;

  TouchingQuadratic out;
  out.hessian = SymMat12(m);
  out.contact = best_point;
  out.sampled_margin = std::numeric_limits<double>::infinity();
  for (const auto& a : checks) {
    out.sampled_margin = std::min(out.sampled_margin, sign * (eval_w(a) - 0.5 * a.dot(m * a)));
  }
  return out;
}

namespace {

// Sampled min over the sphere of sign (w - p) for p = x^T B x / 2.
double sampled_gap(const Mat12& b, double sign, std::uint64_t seed, std::size_t index, std::size_t samples) {
  SampleRng rng(seed, "fixed_quadratic_verify", index);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const Vec12 a = rng.sphere<kDim>();
    gap = std::min(gap, sign * (eval_w(a) - 0.5 * a.dot(b * a)));
  }
  return gap;
}

}  // namespace

ViscosityReport viscosity_probe(const OperatorF& op, std::size_t trials, std::uint64_t seed, double tolerance,
                                std::size_t verify_samples) {
  constexpr double kMargin = 1e-6;
  // Curvature added away from the anchor; dominates the cubic remainder of w on the sphere.
  constexpr double kAnchorCurvature = 8.0;
  constexpr double kScalarCurvature = 10.0;
  const std::size_t n_sigma = op.sigma().count();

  struct Trial {
    bool minorant = true;
    double f = 0.0;
    double margin = 0.0;
  };
  // Each trial produces one minorant and one majorant.
  std::vector<Trial> results(2 * trials);
  parallel_for(
      2 * trials,
      [&](std::size_t k) {
        const bool minorant = k % 2 == 0;
        const std::size_t i = k / 2;
        const double sign = minorant ? 1.0 : -1.0;
        SampleRng rng(seed, minorant ? "minorant" : "majorant", i);
        Trial& t = results[k];
        t.minorant = minorant;
        const int kind = static_cast<int>(i % 4);
        if (kind == 3) {
          // p = -c |x|^2 below w, p = +c |x|^2 above it.
          const Mat12 b = -sign * kScalarCurvature * Mat12::Identity();
          t.margin = sampled_gap(b, sign, seed, k, verify_samples);
          t.f = op.eval(SymMat12(b));
          return;
        }
        Mat12 b;
        if (kind == 1 && minorant) {
          // Taylor quadratic of w at an arbitrary sphere point, shifted down.
          b = hess_w(rng.sphere<kDim>());
        } else if (kind == 2 && minorant) {
          // Arbitrary quadratic, pushed below w.
          b = rng.symmetric<kDim>();
          b *= rng.uniform(0.5, 8.0) / b.norm();
        } else {
          // Taylor quadratic of w at a Sigma point, bent away from it on the
          // orthogonal complement so the contact stays at the anchor.
          const Vec12 anchor = op.sigma().points[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n_sigma) - 1))].a;
          b = hess_w(anchor) - sign * kAnchorCurvature * (Mat12::Identity() - anchor * anchor.transpose());
        }
        const TouchingQuadratic q = touching_quadratic(b, minorant, seed, k, kMargin, verify_samples);
        t.margin = q.sampled_margin;
        t.f = op.eval(q.hessian);
      },
      4);

  ViscosityReport report;
  report.tolerance = tolerance;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const Trial& t = results[k];
    report.min_sampled_margin = std::min(report.min_sampled_margin, t.margin);
    bool bad = t.margin <= 0.0;
    if (t.minorant) {
      ++report.minorants;
      report.max_F_minorant = std::max(report.max_F_minorant, t.f);
      bad = bad || t.f > tolerance;
    } else {
      ++report.majorants;
      report.min_F_majorant = std::min(report.min_F_majorant, t.f);
      bad = bad || t.f < -tolerance;
    }
    if (bad) {
      ++report.violations;
      if (!report.first_failure) report.first_failure = k;
    }
  }
  return report;
}

std::vector<ZeroLevelPoint> zero_level_curve(const SigmaSample& full, const ConeParams& cone,
                                             std::span<const Vec12> heldout, std::span<const std::size_t> counts) {
  std::vector<SigmaPoint> targets(heldout.size());
  for (std::size_t h = 0; h < heldout.size(); ++h) targets[h] = sigma_point(heldout[h]);

  std::vector<ZeroLevelPoint> curve;
  for (std::size_t count : counts) {
    const OperatorF op(full.prefix(count), cone);
    std::vector<double> abs_f(targets.size());
    std::vector<double> gap(targets.size());
    parallel_for(
        targets.size(),
        [&](std::size_t h) {
          const SigmaPoint& t = targets[h];
          abs_f[h] = std::abs(t.s - op.g_tilde(t.z));
          std::size_t nn = 0;
          double nn_dist = std::numeric_limits<double>::infinity();
          for (std::size_t w = 0; w < count; ++w) {
            const auto& p = full.points[w];
            const double d = (t.z - p.z).squaredNorm() + (t.s - p.s) * (t.s - p.s);
            if (d < nn_dist) {
              nn_dist = d;
              nn = w;
            }
          }
          const Coords77 dz = t.z - full.points[nn].z;
          const Vec12 alpha = jacobi_eigenvalues<kDim>(traceless_matrix(dz));
          const double f = dz.norm();
          gap[h] = support_x_from_eigenvalues(alpha, f, cone) + support_x_negated(alpha, f, cone);
        },
        8);
    ZeroLevelPoint point;
    point.count = count;
    for (std::size_t h = 0; h < targets.size(); ++h) {
      point.max_abs_F = std::max(point.max_abs_F, abs_f[h]);
      point.gap_bound = std::max(point.gap_bound, gap[h]);
    }
    curve.push_back(point);
  }
  return curve;
}

}  // namespace quatvisc
