#pragma once

// Falsification harness for the convexity inequalities behind the decay
// estimates: pointwise checkers, brute-force searches for the smallest
// admissible constant, and randomized audits.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wavelab/core_types.hpp"
#include "wavelab/energy.hpp"

namespace wavelab::ineq {

/// Additive slack used by the pointwise checkers, scaled by 1 + |rhs|.
inline constexpr double kSlack = 1e-12;
inline constexpr double kLooseSlack = 1e-10;

/// |AB| <= eta^p |A|^p / p + |B|^q / (q eta^q)
bool check_young(double A, double B, double eta, const PExponent& p);

/// |ab| <= F(|a|) + F*(|b|) for the pair's antiderivative F.
bool check_fenchel(double a, double b, const ConvexPair& pair);

/// |a+b|^p <= 2^(p-1) (|a|^p + |b|^p)
bool check_power_inequality(double a, double b, const PExponent& p);

/// Inequalities carrying an unspecified constant C, written as
/// lhs(a, b, s) <= C * rhs(a, b, s) where s is mu or eta.
enum class Lemma {
  A3,        // |a-b|^p <= C/mu^(2-p) (a-b)(f(a)-f(b))
  A5_mixed,  // |a x| <= C/eta^p G(a) + C eta^2 H(x)
  A5_dual,   // |a x| <= C eta^p G(a) + C/eta^q H(x)
  A5_g,      // |a g(x)| <= C/eta^p G(a) + C eta^2 |g(x)|
  A7,        // G(a-b) <= C/mu^(2-p) (a-b)(g(a)-g(b))
};

std::string lemma_name(Lemma lemma);

/// A.3 and A.7 require |a-b| >= mu max(|a|,|b|) and a != b; A.5 takes any a, x.
bool admissible(Lemma lemma, double a, double b, double s);

/// Smallest C making the inequality hold at this point (lhs / rhs).
/// Returns 0 when lhs is 0; +inf when rhs vanishes but lhs does not.
double required_constant(Lemma lemma, double a, double b, double s, const PExponent& p);

/// lhs <= C rhs within kLooseSlack.
bool check_lemma(Lemma lemma, double a, double b, double s, const PExponent& p, double C);

struct SearchGrid {
  std::vector<double> values;  // used for both a and b (or a and x)
  std::vector<double> params;  // mu or eta
  std::string description;
};

/// Log grid of +-[1e-3, 1e3] (12 points per decade), plus 81 points evenly
/// spaced on [-2, 2], plus 0; params {0.05 k : k = 1..19}.
SearchGrid default_search_grid();

struct ConstantSearchResult {
  double p = 0.0;
  Lemma lemma = Lemma::A3;
  double C_min = 0.0;
  std::array<double, 3> argmax{};  // (a, b, s) attaining C_min
  std::size_t admissible_points = 0;
  std::string grid;
};

/// Max of required_constant over admissible grid points.
/// Throws InvalidGrid when no grid point is admissible.
ConstantSearchResult min_constant(Lemma lemma, const PExponent& p, const SearchGrid& grid);

ConstantSearchResult min_constant_lemmaA1(const PExponent& p, const SearchGrid& grid);
ConstantSearchResult min_constant_lemmaA7(const PExponent& p, const SearchGrid& grid);
bool check_lemma_A7(double a, double b, double mu, const PExponent& p, double C);

struct LemmaA5Record {
  bool mixed = false;
  bool dual = false;
  bool with_g = false;
  bool all() const { return mixed && dual && with_g; }
};
LemmaA5Record check_lemma_A5(double a, double x, double eta, const PExponent& p,
                             const std::array<double, 3>& C);

/// Number of grid points violating the inequality with constant C.
std::size_t grid_violations(Lemma lemma, const PExponent& p, const SearchGrid& grid, double C);

/// Closed-form bounds on x g(x), G(x), H(g(x)). Each clause is nullopt when
/// its precondition fails.
struct LemmaA4Record {
  std::optional<bool> identity;        // x g = G + H(g)
  std::optional<bool> sandwich;        // x g / 2 <= G <= x g
  std::optional<bool> conjugate_upper; // H(g(x)) <= x g(x)
  std::optional<bool> small_H;         // |x| <= M
  std::optional<bool> small_xg;
  std::optional<bool> small_G;
  std::optional<bool> large_xg;        // |x| > M
  std::optional<bool> large_G;
  std::optional<bool> large_H;         // additionally (1+1/M)^p < p

  bool all_applicable_hold() const;
};
LemmaA4Record check_lemma_A4(double x, double M, const PExponent& p);

/// Relative residual |x g(x) - G(x) - H(g(x))| / max(|x g(x)|, tiny).
double fenchel_identity_residual(double x, const PExponent& p);

/// Uniformly sampled function on [0,1] with its derivative. Sizes must be
/// equal and odd (composite Simpson is used).
struct SampledFunction {
  std::vector<double> value;
  std::vector<double> derivative;

  double dx() const { return 1.0 / static_cast<double>(value.size() - 1); }
};

SampledFunction sample_function(const RealFn& v, const RealFn& dv, std::size_t n_points = 2001);

/// int G(z) <= C int G(z'). Throws InvalidData unless z(0) = 0.
bool check_poincare_G(const SampledFunction& z, const PExponent& p, double C);
/// int G(z) / int G(z') (0 when both vanish).
double poincare_G_ratio(const SampledFunction& z, const PExponent& p);

/// int |v|^p <= 1/(p 2^p) int |v'|^p + 1e-8. Throws InvalidData unless
/// v(0) = v(1) = 0.
bool check_poincare_p(const SampledFunction& v, const PExponent& p);

/// Dense polynomial used to build random test functions.
struct Polynomial {
  std::vector<double> coeffs;  // ascending powers
  double operator()(double x) const;
  Polynomial derivative() const;
};

/// x (1-x) times a random polynomial of degree <= 5 with N(0,1) coefficients.
Polynomial random_endpoint_vanishing(std::mt19937_64& rng);
/// x times a random polynomial of degree <= 5 with N(0, scale^2) coefficients.
Polynomial random_origin_vanishing(std::mt19937_64& rng, double scale);

/// Largest int G(z) / int G(z') over random origin-vanishing polynomials.
ConstantSearchResult min_constant_poincare_G(const PExponent& p, std::size_t samples,
                                             std::uint64_t seed);

struct AuditResult {
  std::string name;
  double p = 0.0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double C_min = 0.0;       // 0 when the inequality carries no constant
  double C_used = 0.0;
  double max_ratio = 0.0;   // max lhs / rhs seen (<= 1 means no violation)
};

AuditResult audit_young(std::size_t samples, std::uint64_t seed);
AuditResult audit_power_inequality(std::size_t samples, std::uint64_t seed);
AuditResult audit_fenchel(std::size_t samples, std::uint64_t seed, PairMode mode);

/// Search on the grid, then audit `samples` random admissible points drawn
/// inside the grid hull with C = factor * C_min.
AuditResult search_and_audit(Lemma lemma, const PExponent& p, const SearchGrid& grid,
                             std::size_t samples, std::uint64_t seed, double factor = 1.05);

/// Poincare G: search over random polynomials, then audit fresh ones.
AuditResult search_and_audit_poincare_G(const PExponent& p, std::size_t samples, std::uint64_t seed,
                                        double factor = 1.05);

/// Poincare with constant 1/(p 2^p) on random endpoint-vanishing polynomials.
AuditResult audit_poincare_p(const PExponent& p, std::size_t samples, std::uint64_t seed);

/// Max relative eqG residual over `samples` random x in [-100, 100].
AuditResult audit_identity(const PExponent& p, std::size_t samples, std::uint64_t seed,
                           double tolerance = 1e-11);

struct SuiteOptions {
  std::vector<double> p_list{1.5, 2.0, 3.0};
  std::size_t samples = 100000;           // Young, Fenchel, power, lemma audits
  std::size_t identity_samples = 10000;
  std::size_t poincare_samples = 1000;
  std::uint64_t seed = 0;
};

/// Every audit above: the exponent-free ones once, the lemma audits per p.
/// Lemmas built on G (A.5, A.7, Poincare G, eqG) run only for p in (1, 2].
std::vector<AuditResult> inequality_suite(const SuiteOptions& options);

}  // namespace wavelab::ineq
