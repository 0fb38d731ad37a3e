#include "wavelab/ineq_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavelab/parallel.hpp"

namespace wavelab::ineq {
namespace {

bool within(double lhs, double rhs, double slack) { return lhs <= rhs + slack * (1.0 + std::abs(rhs)); }

double draw_value(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < 0.5) return -2.0 + 4.0 * unit(rng);
  const double magnitude = std::pow(10.0, -3.0 + 6.0 * unit(rng));
  return unit(rng) < 0.5 ? -magnitude : magnitude;
}

double draw_param(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.05, 0.95)(rng);
}

double draw_exponent(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double simpson_samples(const std::vector<double>& f, double dx) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) throw Error(ErrorKind::InvalidArgument, "Simpson needs an odd sample count >= 3");
  double sum = f.front() + f.back();
  for (std::size_t i = 1; i + 1 < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f[i];
  return sum * dx / 3.0;
}

// lhs and rhs (without C) of the constant-carrying inequalities.
std::pair<double, double> sides(Lemma lemma, double a, double b, double s, const PExponent& p) {
  const double pp = p.p();
  switch (lemma) {
    case Lemma::A3: {
      const double d = a - b;
      // |d|^(p-2) d^2 keeps p = 2 free of pow rounding.
      return {d == 0.0 ? 0.0 : std::pow(std::abs(d), pp - 2.0) * (d * d), std::pow(s, pp - 2.0) * d * (f_pow(a, p) - f_pow(b, p))};
    }
    case Lemma::A7: {
      const double d = a - b;
      return {G_mod(d, p), std::pow(s, pp - 2.0) * d * (g_mod(a, p) - g_mod(b, p))};
    }
    case Lemma::A5_mixed:
      return {std::abs(a * b), G_mod(a, p) / std::pow(s, pp) + s * s * H_conj(b, p)};
    case Lemma::A5_dual:
      return {std::abs(a * b), std::pow(s, pp) * G_mod(a, p) + H_conj(b, p) / std::pow(s, p.q())};
    case Lemma::A5_g: {
      const double gb = std::abs(g_mod(b, p));
      return {std::abs(a) * gb, G_mod(a, p) / std::pow(s, pp) + s * s * gb};
    }
  }
  return {0.0, 0.0};
}

std::vector<double> log_grid(double lo_exp, double hi_exp, int per_decade) {
  std::vector<double> out;
  const int n = static_cast<int>(std::lround((hi_exp - lo_exp) * per_decade));
  for (int i = 0; i <= n; ++i) out.push_back(std::pow(10.0, lo_exp + static_cast<double>(i) / per_decade));
  return out;
}

}  // namespace

bool check_young(double A, double B, double eta, const PExponent& p) {
  if (p.is_one() || !(eta > 0.0)) throw Error(ErrorKind::InvalidArgument, "Young needs p > 1 and eta > 0");
  const double rhs = std::pow(eta, p.p()) * std::pow(std::abs(A), p.p()) / p.p() +
                     std::pow(std::abs(B), p.q()) / (p.q() * std::pow(eta, p.q()));
  return within(std::abs(A * B), rhs, kSlack);
}

bool check_fenchel(double a, double b, const ConvexPair& pair) {
  const double rhs = pair.antiderivative(std::abs(a)) + pair.conjugate(std::abs(b));
  return within(std::abs(a * b), rhs, kSlack);
}

bool check_power_inequality(double a, double b, const PExponent& p) {
  const double pp = p.p();
  const double rhs = std::pow(2.0, pp - 1.0) * (std::pow(std::abs(a), pp) + std::pow(std::abs(b), pp));
  return within(std::pow(std::abs(a + b), pp), rhs, kSlack);
}

std::string lemma_name(Lemma lemma) {
  switch (lemma) {
    case Lemma::A3: return "A3";
    case Lemma::A5_mixed: return "A5_mixed";
    case Lemma::A5_dual: return "A5_dual";
    case Lemma::A5_g: return "A5_g";
    case Lemma::A7: return "A7";
  }
  return "?";
}

bool admissible(Lemma lemma, double a, double b, double s) {
  if (!(s > 0.0 && s < 1.0)) return false;
  if (lemma == Lemma::A3 || lemma == Lemma::A7) {
    return a != b && std::abs(a - b) >= s * std::max(std::abs(a), std::abs(b));
  }
  return true;
}

double required_constant(Lemma lemma, double a, double b, double s, const PExponent& p) {
  const auto [lhs, rhs] = sides(lemma, a, b, s, p);
  if (lhs == 0.0) return 0.0;
  if (!(rhs > 0.0)) return std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

bool check_lemma(Lemma lemma, double a, double b, double s, const PExponent& p, double C) {
  const auto [lhs, rhs] = sides(lemma, a, b, s, p);
  return within(lhs, C * rhs, kLooseSlack);
}

SearchGrid default_search_grid() {
  SearchGrid grid;
  for (double m : log_grid(-3.0, 3.0, 12)) {
    grid.values.push_back(m);
    grid.values.push_back(-m);
  }
  for (int i = 0; i <= 80; ++i) grid.values.push_back(-2.0 + 0.05 * i);
  grid.values.push_back(0.0);
  std::sort(grid.values.begin(), grid.values.end());
  grid.values.erase(std::unique(grid.values.begin(), grid.values.end()), grid.values.end());
  for (int k = 1; k <= 19; ++k) grid.params.push_back(0.05 * k);
  grid.description = "log +-[1e-3,1e3] x12/decade + linear [-2,2] step 0.05; s = 0.05k, k=1..19";
  return grid;
}

ConstantSearchResult min_constant(Lemma lemma, const PExponent& p, const SearchGrid& grid) {
  if (p.is_one()) throw Error(ErrorKind::InvalidArgument, "constant search needs p > 1");
  struct Partial {
    double best = -1.0;
    std::array<double, 3> arg{};
    std::size_t count = 0;
  };
  const unsigned workers = default_worker_count();
  std::vector<Partial> partial(workers);
  parallel_chunks(grid.values.size(), workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    Partial& mine = partial[w];
    for (std::size_t i = begin; i < end; ++i) {
      const double a = grid.values[i];
      for (double b : grid.values) {
        for (double s : grid.params) {
          if (!admissible(lemma, a, b, s)) continue;
          ++mine.count;
          const double c = required_constant(lemma, a, b, s, p);
          if (c > mine.best) {
            mine.best = c;
            mine.arg = {a, b, s};
          }
        }
      }
    }
  });

  ConstantSearchResult result;
  result.p = p.p();
  result.lemma = lemma;
  result.grid = grid.description;
  result.C_min = -1.0;
  for (const auto& part : partial) {
    result.admissible_points += part.count;
    if (part.best > result.C_min) {
      result.C_min = part.best;
      result.argmax = part.arg;
    }
  }
  if (result.admissible_points == 0) {
    throw Error(ErrorKind::InvalidGrid, "no admissible point for " + lemma_name(lemma));
  }
  return result;
}

ConstantSearchResult min_constant_lemmaA1(const PExponent& p, const SearchGrid& grid) {
  return min_constant(Lemma::A3, p, grid);
}

ConstantSearchResult min_constant_lemmaA7(const PExponent& p, const SearchGrid& grid) {
  return min_constant(Lemma::A7, p, grid);
}

bool check_lemma_A7(double a, double b, double mu, const PExponent& p, double C) {
  return check_lemma(Lemma::A7, a, b, mu, p, C);
}

LemmaA5Record check_lemma_A5(double a, double x, double eta, const PExponent& p,
                             const std::array<double, 3>& C) {
  return {check_lemma(Lemma::A5_mixed, a, x, eta, p, C[0]),
          check_lemma(Lemma::A5_dual, a, x, eta, p, C[1]),
          check_lemma(Lemma::A5_g, a, x, eta, p, C[2])};
}

std::size_t grid_violations(Lemma lemma, const PExponent& p, const SearchGrid& grid, double C) {
  std::size_t violations = 0;
  for (double a : grid.values) {
    for (double b : grid.values) {
      for (double s : grid.params) {
        if (admissible(lemma, a, b, s) && !check_lemma(lemma, a, b, s, p, C)) ++violations;
      }
    }
  }
  return violations;
}

bool LemmaA4Record::all_applicable_hold() const {
  for (const auto& clause : {identity, sandwich, conjugate_upper, small_H, small_xg, small_G, large_xg,
                             large_G, large_H}) {
    if (clause && !*clause) return false;
  }
  return true;
}

double fenchel_identity_residual(double x, const PExponent& p) {
  const double gx = g_mod(x, p);
  const double xg = x * gx;
  const double res = std::abs(xg - G_mod(x, p) - H_conj(gx, p));
  return xg == 0.0 ? res : res / std::abs(xg);
}

LemmaA4Record check_lemma_A4(double x, double M, const PExponent& p) {
  if (!(p.p() > 1.0 && p.p() < 2.0)) throw Error(ErrorKind::InvalidArgument, "Lemma A.4 needs p in (1,2)");
  if (!(M > 0.0)) throw Error(ErrorKind::InvalidArgument, "M must be > 0");
  const double pp = p.p();
  const double gx = g_mod(x, p);
  const double xg = x * gx;
  const double G = G_mod(x, p);
  const double H = H_conj(gx, p);
  const double ax = std::abs(x);
  const auto between = [](double lo, double v, double hi) {
    return within(lo, v, kLooseSlack) && within(v, hi, kLooseSlack);
  };

  LemmaA4Record r;
  r.identity = std::abs(xg - G - H) <= kLooseSlack * (1.0 + std::abs(xg));
  r.sandwich = between(0.5 * xg, G, xg);
  r.conjugate_upper = within(H, xg, kLooseSlack);
  if (ax <= M) {
    const double lo = (pp - 1.0) * std::pow(M + 1.0, pp - 2.0);
    r.small_H = between(lo * x * x / 2.0, H, (pp - 1.0) * x * x / 2.0);
    r.small_xg = between(lo * x * x, xg, (pp - 1.0) * x * x);
    r.small_G = between(lo * x * x / 2.0, G, (pp - 1.0) * x * x / 2.0);
  } else {
    const double k = std::pow(1.0 + 1.0 / M, pp - 1.0) - std::pow(1.0 / M, pp - 1.0);
    const double xp = std::pow(ax, pp);
    r.large_xg = between(k * xp, xg, xp);
    r.large_G = between(0.5 * k * xp, G, xp);
    if (std::pow(1.0 + 1.0 / M, pp) < pp) {
      r.large_H = between((1.0 - std::pow(1.0 + 1.0 / M, pp) / pp) * xp, H,
                          std::pow(1.0 + 1.0 / M, pp - 1.0) * xp);
    }
  }
  return r;
}

SampledFunction sample_function(const RealFn& v, const RealFn& dv, std::size_t n_points) {
  if (n_points % 2 == 0) ++n_points;
  SampledFunction s;
  s.value.resize(n_points);
  s.derivative.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n_points - 1);
    s.value[i] = v(x);
    s.derivative[i] = dv(x);
  }
  return s;
}

double poincare_G_ratio(const SampledFunction& z, const PExponent& p) {
  std::vector<double> gz(z.value.size()), gdz(z.value.size());
  for (std::size_t i = 0; i < gz.size(); ++i) {
    gz[i] = G_mod(z.value[i], p);
    gdz[i] = G_mod(z.derivative[i], p);
  }
  const double num = simpson_samples(gz, z.dx());
  const double den = simpson_samples(gdz, z.dx());
  if (num == 0.0) return 0.0;
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

bool check_poincare_G(const SampledFunction& z, const PExponent& p, double C) {
  if (z.value.empty() || std::abs(z.value.front()) > 1e-12) {
    throw Error(ErrorKind::InvalidData, "Poincare-G needs z(0) = 0");
  }
  std::vector<double> gz(z.value.size()), gdz(z.value.size());
  for (std::size_t i = 0; i < gz.size(); ++i) {
    gz[i] = G_mod(z.value[i], p);
    gdz[i] = G_mod(z.derivative[i], p);
  }
  return within(simpson_samples(gz, z.dx()), C * simpson_samples(gdz, z.dx()), 1e-8);
}

bool check_poincare_p(const SampledFunction& v, const PExponent& p) {
  if (v.value.empty() || std::abs(v.value.front()) > 1e-12 || std::abs(v.value.back()) > 1e-12) {
    throw Error(ErrorKind::InvalidData, "Poincare needs v(0) = v(1) = 0");
  }
  std::vector<double> pv(v.value.size()), pdv(v.value.size());
  for (std::size_t i = 0; i < pv.size(); ++i) {
    pv[i] = std::pow(std::abs(v.value[i]), p.p());
    pdv[i] = std::pow(std::abs(v.derivative[i]), p.p());
  }
  const double lhs = simpson_samples(pv, v.dx());
  const double rhs = simpson_samples(pdv, v.dx()) / (p.p() * std::pow(2.0, p.p()));
  return lhs <= rhs + 1e-8;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  Polynomial d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) d.coeffs.push_back(static_cast<double>(k) * coeffs[k]);
  if (d.coeffs.empty()) d.coeffs.push_back(0.0);
  return d;
}

namespace {

Polynomial times_x(const Polynomial& q) {
  Polynomial r;
  r.coeffs.assign(q.coeffs.size() + 1, 0.0);
  for (std::size_t k = 0; k < q.coeffs.size(); ++k) r.coeffs[k + 1] = q.coeffs[k];
  return r;
}

Polynomial random_core(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  const int degree = std::uniform_int_distribution<int>(0, 5)(rng);
  Polynomial q;
  for (int k = 0; k <= degree; ++k) q.coeffs.push_back(normal(rng));
  return q;
}

}  // namespace

Polynomial random_endpoint_vanishing(std::mt19937_64& rng) {
  const Polynomial xq = times_x(random_core(rng, 1.0));
  // multiply by (1 - x)
  Polynomial r;
  r.coeffs.assign(xq.coeffs.size() + 1, 0.0);
  for (std::size_t k = 0; k < xq.coeffs.size(); ++k) {
    r.coeffs[k] += xq.coeffs[k];
    r.coeffs[k + 1] -= xq.coeffs[k];
  }
  return r;
}

Polynomial random_origin_vanishing(std::mt19937_64& rng, double scale) {
  return times_x(random_core(rng, scale));
}

namespace {

SampledFunction sample_polynomial(const Polynomial& poly, std::size_t n_points = 1025) {
  const Polynomial d = poly.derivative();
  return sample_function([&poly](double x) { return poly(x); }, [&d](double x) { return d(x); }, n_points);
}

double random_scale(std::mt19937_64& rng) {
  return std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
}

}  // namespace

ConstantSearchResult min_constant_poincare_G(const PExponent& p, std::size_t samples, std::uint64_t seed) {
  auto rng = worker_rng(seed, 0);
  ConstantSearchResult result;
  result.p = p.p();
  result.grid = "random origin-vanishing polynomials, degree <= 6, scale 10^U(-2,2)";
  for (std::size_t i = 0; i < samples; ++i) {
    const auto poly = random_origin_vanishing(rng, random_scale(rng));
    const double ratio = poincare_G_ratio(sample_polynomial(poly), p);
    if (std::isfinite(ratio) && ratio > result.C_min) result.C_min = ratio;
    ++result.admissible_points;
  }
  return result;
}

namespace {

// Runs `trial(rng) -> ratio` on n samples split across workers and counts
// ratios above one.
template <class Trial>
AuditResult run_audit(std::string name, double p, std::size_t n, std::uint64_t seed, Trial trial) {
  const unsigned workers = default_worker_count();
  std::vector<std::size_t> viol(workers, 0);
  std::vector<double> worst(workers, 0.0);
  parallel_chunks(n, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    auto rng = worker_rng(seed, w);
    for (std::size_t i = begin; i < end; ++i) {
      const auto [violated, ratio] = trial(rng);
      if (violated) ++viol[w];
      if (std::isfinite(ratio)) worst[w] = std::max(worst[w], ratio);
    }
  });
  AuditResult result;
  result.name = std::move(name);
  result.p = p;
  result.samples = n;
  for (unsigned w = 0; w < workers; ++w) {
    result.violations += viol[w];
    result.max_ratio = std::max(result.max_ratio, worst[w]);
  }
  return result;
}

double safe_ratio(double lhs, double rhs) { return lhs == 0.0 ? 0.0 : (rhs > 0.0 ? lhs / rhs : INFINITY); }

}  // namespace

AuditResult audit_young(std::size_t samples, std::uint64_t seed) {
  return run_audit("young", 0.0, samples, seed, [](std::mt19937_64& rng) {
    const PExponent p(draw_exponent(rng, 1.01, 10.0));
    const double A = draw_value(rng), B = draw_value(rng);
    const double eta = std::pow(10.0, std::uniform_real_distribution<double>(-1.0, 1.0)(rng));
    const double rhs = std::pow(eta, p.p()) * std::pow(std::abs(A), p.p()) / p.p() +
                       std::pow(std::abs(B), p.q()) / (p.q() * std::pow(eta, p.q()));
    return std::pair{!check_young(A, B, eta, p), safe_ratio(std::abs(A * B), rhs)};
  });
}

AuditResult audit_power_inequality(std::size_t samples, std::uint64_t seed) {
  return run_audit("power", 0.0, samples, seed, [](std::mt19937_64& rng) {
    const PExponent p(draw_exponent(rng, 1.0, 10.0));
    const double a = draw_value(rng), b = draw_value(rng);
    const double rhs = std::pow(2.0, p.p() - 1.0) * (std::pow(std::abs(a), p.p()) + std::pow(std::abs(b), p.p()));
    return std::pair{!check_power_inequality(a, b, p), safe_ratio(std::pow(std::abs(a + b), p.p()), rhs)};
  });
}

AuditResult audit_fenchel(std::size_t samples, std::uint64_t seed, PairMode mode) {
  const std::string name = mode == PairMode::Power ? "fenchel_power" : "fenchel_modified";
  return run_audit(name, 0.0, samples, seed, [mode](std::mt19937_64& rng) {
    const double hi = mode == PairMode::Power ? 10.0 : 1.9;
    const ConvexPair pair(PExponent(draw_exponent(rng, 1.1, hi)), mode);
    const double a = draw_value(rng), b = draw_value(rng);
    const double rhs = pair.antiderivative(std::abs(a)) + pair.conjugate(std::abs(b));
    return std::pair{!check_fenchel(a, b, pair), safe_ratio(std::abs(a * b), rhs)};
  });
}

AuditResult search_and_audit(Lemma lemma, const PExponent& p, const SearchGrid& grid,
                             std::size_t samples, std::uint64_t seed, double factor) {
  const auto search = min_constant(lemma, p, grid);
  const double C = factor * search.C_min;
  auto result = run_audit(lemma_name(lemma), p.p(), samples, seed, [&](std::mt19937_64& rng) {
    double a = 0.0, b = 0.0, s = 0.5;
    do {
      a = draw_value(rng);
      b = draw_value(rng);
      s = draw_param(rng);
    } while (!admissible(lemma, a, b, s));
    const auto [lhs, rhs] = sides(lemma, a, b, s, p);
    return std::pair{!check_lemma(lemma, a, b, s, p, C), safe_ratio(lhs, C * rhs)};
  });
  result.C_min = search.C_min;
  result.C_used = C;
  return result;
}

AuditResult search_and_audit_poincare_G(const PExponent& p, std::size_t samples, std::uint64_t seed,
                                        double factor) {
  const auto search = min_constant_poincare_G(p, 4 * samples, seed);
  const double C = factor * search.C_min;
  auto result = run_audit("poincare_G", p.p(), samples, seed + 1, [&](std::mt19937_64& rng) {
    const auto z = sample_polynomial(random_origin_vanishing(rng, random_scale(rng)));
    return std::pair{!check_poincare_G(z, p, C), poincare_G_ratio(z, p) / C};
  });
  result.C_min = search.C_min;
  result.C_used = C;
  return result;
}

AuditResult audit_poincare_p(const PExponent& p, std::size_t samples, std::uint64_t seed) {
  const double K = 1.0 / (p.p() * std::pow(2.0, p.p()));
  auto result = run_audit("poincare_p", p.p(), samples, seed, [&](std::mt19937_64& rng) {
    const auto poly = random_endpoint_vanishing(rng);
    const auto v = sample_polynomial(poly, 2049);
    std::vector<double> pv(v.value.size()), pdv(v.value.size());
    for (std::size_t i = 0; i < pv.size(); ++i) {
      pv[i] = std::pow(std::abs(v.value[i]), p.p());
      pdv[i] = std::pow(std::abs(v.derivative[i]), p.p());
    }
    const double ratio = safe_ratio(simpson_samples(pv, v.dx()), K * simpson_samples(pdv, v.dx()));
    return std::pair{!check_poincare_p(v, p), ratio};
  });
  result.C_used = K;
  return result;
}

AuditResult audit_identity(const PExponent& p, std::size_t samples, std::uint64_t seed, double tolerance) {
  auto result = run_audit("eqG", p.p(), samples, seed, [&](std::mt19937_64& rng) {
    const double x = std::uniform_real_distribution<double>(-100.0, 100.0)(rng);
    const double res = fenchel_identity_residual(x, p);
    return std::pair{!(res <= tolerance), res};
  });
  return result;
}

}  // namespace wavelab::ineq

namespace wavelab::ineq {

std::vector<AuditResult> inequality_suite(const SuiteOptions& options) {
  std::vector<AuditResult> out;
  std::uint64_t stream = 0;
  const auto next_seed = [&] { return options.seed + 1000003ULL * ++stream; };

  out.push_back(audit_young(options.samples, next_seed()));
  out.push_back(audit_power_inequality(options.samples, next_seed()));
  out.push_back(audit_fenchel(options.samples, next_seed(), PairMode::Power));
  out.push_back(audit_fenchel(options.samples, next_seed(), PairMode::Modified));

  const auto grid = default_search_grid();
  for (double pv : options.p_list) {
    const PExponent p(pv);
    if (pv > 1.0) out.push_back(search_and_audit(Lemma::A3, p, grid, options.samples, next_seed()));
    out.push_back(audit_poincare_p(p, options.poincare_samples, next_seed()));
    if (!(pv > 1.0 && pv <= 2.0)) continue;
    out.push_back(audit_identity(p, options.identity_samples, next_seed()));
    for (Lemma lemma : {Lemma::A5_mixed, Lemma::A5_dual, Lemma::A5_g, Lemma::A7}) {
      out.push_back(search_and_audit(lemma, p, grid, options.samples, next_seed()));
    }
    out.push_back(search_and_audit_poincare_G(p, options.poincare_samples, next_seed()));
  }
  return out;
}

}  // namespace wavelab::ineq
