#include "wavelab/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace wavelab {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& word, int line, const std::string& key) {
  double v = 0.0;
  const auto* end = word.data() + word.size();
  const auto [ptr, ec] = std::from_chars(word.data(), end, v);
  if (ec != std::errc() || ptr != end) parse_fail(line, "key '" + key + "' expects a number, got '" + word + "'");
  return v;
}

long long to_integer(const std::string& word, int line, const std::string& key) {
  long long v = 0;
  const auto* end = word.data() + word.size();
  const auto [ptr, ec] = std::from_chars(word.data(), end, v);
  if (ec != std::errc() || ptr != end) parse_fail(line, "key '" + key + "' expects an integer, got '" + word + "'");
  return v;
}

std::vector<double> to_doubles(const std::vector<std::string>& ws, int line, const std::string& key) {
  if (ws.empty()) parse_fail(line, "key '" + key + "' has no value");
  std::vector<double> out;
  for (const auto& w : ws) out.push_back(to_double(w, line, key));
  return out;
}

double single_double(const std::vector<std::string>& ws, int line, const std::string& key) {
  if (ws.size() != 1) parse_fail(line, "key '" + key + "' expects one value");
  return to_double(ws[0], line, key);
}

long long single_integer(const std::vector<std::string>& ws, int line, const std::string& key) {
  if (ws.size() != 1) parse_fail(line, "key '" + key + "' expects one value");
  return to_integer(ws[0], line, key);
}

std::string single_word(const std::vector<std::string>& ws, int line, const std::string& key) {
  if (ws.size() != 1) parse_fail(line, "key '" + key + "' expects one value");
  return ws[0];
}

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::Validation, "'" + key + "' " + what);
}

using Setter = std::function<void(RunConfig&, const std::vector<std::string>&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"run.command", [](RunConfig& c, const auto& v, int l) {
         try {
           c.subcommand = parse_subcommand(single_word(v, l, "command"));
         } catch (const Error& e) {
           parse_fail(l, e.what());
         }
       }},
      {"run.seed", [](RunConfig& c, const auto& v, int l) {
         const auto s = single_integer(v, l, "seed");
         if (s < 0) parse_fail(l, "key 'seed' must be nonnegative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"grid.n_cells", [](RunConfig& c, const auto& v, int l) {
         c.n_cells = static_cast<int>(single_integer(v, l, "n_cells"));
       }},
      {"time.t_end", [](RunConfig& c, const auto& v, int l) { c.t_end = single_double(v, l, "t_end"); }},
      {"time.record_stride", [](RunConfig& c, const auto& v, int l) {
         c.record_stride = static_cast<int>(single_integer(v, l, "record_stride"));
       }},
      {"damping.kind", [](RunConfig& c, const auto& v, int l) {
         const auto k = single_word(v, l, "kind");
         if (k == "constant") c.damping_kind = DampingKind::Constant;
         else if (k == "bump") c.damping_kind = DampingKind::Bump;
         else if (k == "indicator") c.damping_kind = DampingKind::Indicator;
         else if (k == "none") c.damping_kind = DampingKind::None;
         else parse_fail(l, "key 'kind' must be constant, bump, indicator or none");
       }},
      {"damping.a0", [](RunConfig& c, const auto& v, int l) { c.a0 = single_double(v, l, "a0"); }},
      {"damping.omega", [](RunConfig& c, const auto& v, int l) {
         const auto xs = to_doubles(v, l, "omega");
         if (xs.size() != 2) parse_fail(l, "key 'omega' expects two values");
         c.omega = {xs[0], xs[1]};
       }},
      {"damping.ramp", [](RunConfig& c, const auto& v, int l) { c.ramp = single_double(v, l, "ramp"); }},
      {"damping.alpha", [](RunConfig& c, const auto& v, int l) { c.alpha_list = to_doubles(v, l, "alpha"); }},
      {"initial.data", [](RunConfig& c, const auto& v, int l) { c.initial_data = single_word(v, l, "data"); }},
      {"initial.amplitude", [](RunConfig& c, const auto& v, int l) {
         c.amplitude = single_double(v, l, "amplitude");
       }},
      {"energy.p", [](RunConfig& c, const auto& v, int l) { c.p_list = to_doubles(v, l, "p"); }},
      {"energy.overbar", [](RunConfig& c, const auto& v, int l) {
         const auto w = single_word(v, l, "overbar");
         if (w == "signsafe") c.overbar = OverbarReading::SignSafe;
         else if (w == "literal") c.overbar = OverbarReading::Literal;
         else parse_fail(l, "key 'overbar' must be signsafe or literal");
       }},
      {"cutoffs.eps", [](RunConfig& c, const auto& v, int l) {
         const auto xs = to_doubles(v, l, "eps");
         if (xs.size() != 3) parse_fail(l, "key 'eps' expects three values");
         c.eps0 = xs[0];
         c.eps1 = xs[1];
         c.eps2 = xs[2];
       }},
      {"output.dir", [](RunConfig& c, const auto& v, int l) { c.output_dir = single_word(v, l, "dir"); }},
      {"tolerance.picard", [](RunConfig& c, const auto& v, int l) { c.picard_tol = single_double(v, l, "picard"); }},
      {"tolerance.bound", [](RunConfig& c, const auto& v, int l) { c.bound_tol = single_double(v, l, "bound"); }},
      {"tolerance.monotonicity", [](RunConfig& c, const auto& v, int l) {
         c.monotonicity_tol = single_double(v, l, "monotonicity");
       }},
      {"study.n_list", [](RunConfig& c, const auto& v, int l) {
         c.n_list.clear();
         for (const auto& w : v) c.n_list.push_back(static_cast<int>(to_integer(w, l, "n_list")));
         if (c.n_list.empty()) parse_fail(l, "key 'n_list' has no value");
       }},
      {"inequalities.samples", [](RunConfig& c, const auto& v, int l) {
         const auto s = single_integer(v, l, "samples");
         if (s < 0) parse_fail(l, "key 'samples' must be nonnegative");
         c.audit_samples = static_cast<std::size_t>(s);
       }},
      {"plot.input", [](RunConfig& c, const auto& v, int l) { c.plot_input = single_word(v, l, "input"); }},
      {"plot.output", [](RunConfig& c, const auto& v, int l) { c.plot_output = single_word(v, l, "output"); }},
  };
  return table;
}

}  // namespace

Subcommand parse_subcommand(const std::string& name) {
  if (name == "simulate") return Subcommand::Simulate;
  if (name == "decay") return Subcommand::Decay;
  if (name == "global-bound") return Subcommand::GlobalBound;
  if (name == "oracle-compare") return Subcommand::OracleCompare;
  if (name == "verify-inequalities") return Subcommand::VerifyInequalities;
  if (name == "plot") return Subcommand::Plot;
  throw Error(ErrorKind::InvalidArgument, "unknown subcommand '" + name + "'");
}

std::string to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::Simulate: return "simulate";
    case Subcommand::Decay: return "decay";
    case Subcommand::GlobalBound: return "global-bound";
    case Subcommand::OracleCompare: return "oracle-compare";
    case Subcommand::VerifyInequalities: return "verify-inequalities";
    case Subcommand::Plot: return "plot";
  }
  return "?";
}

damping::Spec RunConfig::damping_spec(double alpha) const {
  switch (damping_kind) {
    case DampingKind::Constant: return damping::Constant{alpha};
    case DampingKind::Bump: return damping::SmoothBump{a0, omega, ramp};
    case DampingKind::Indicator: return damping::IndicatorSmoothed{a0, omega};
    case DampingKind::None: return damping::None{};
  }
  return damping::Constant{alpha};
}

RunConfig parse_config(const std::string& text, std::optional<Subcommand> subcommand) {
  RunConfig config;
  std::istringstream in(text);
  std::string section;
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"run", "grid", "time", "damping", "initial", "energy", "cutoffs",
                                    "output", "tolerance", "study", "inequalities", "plot"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) parse_fail(line_no, "unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (section.empty()) parse_fail(line_no, "key '" + key + "' outside of a section");
    const auto it = setters().find(section + "." + key);
    if (it == setters().end()) parse_fail(line_no, "unknown key '" + key + "' in section [" + section + "]");
    it->second(config, words(line.substr(eq + 1)), line_no);
  }
  if (subcommand) config.subcommand = *subcommand;
  validate_config(config);
  return config;
}

void validate_config(const RunConfig& c) {
  if (c.n_cells < 2) invalid("n_cells", "must be >= 2");
  if (!(c.t_end > 0.0) || !std::isfinite(c.t_end)) invalid("t_end", "must be a positive number");
  if (c.record_stride < 1) invalid("record_stride", "must be >= 1");
  if (c.p_list.empty()) invalid("p", "needs at least one exponent");
  for (double p : c.p_list) {
    if (!(p >= 1.0) || !std::isfinite(p)) invalid("p", "exponents must be finite and >= 1");
  }
  if (c.alpha_list.empty()) invalid("alpha", "needs at least one value");
  for (double a : c.alpha_list) {
    if (!(a > 0.0) || !std::isfinite(a)) invalid("alpha", "must be finite and > 0");
  }
  if (c.damping_kind == DampingKind::Bump || c.damping_kind == DampingKind::Indicator) {
    if (!(c.a0 > 0.0)) invalid("a0", "must be > 0");
    if (!(c.omega.lo < c.omega.hi) || c.omega.lo < 0.0 || c.omega.hi > 1.0) {
      invalid("omega", "must be a non-empty sub-interval of [0,1]");
    }
    if (!(c.ramp > 0.0)) invalid("ramp", "must be > 0");
  }
  if (!(c.picard_tol > 0.0)) invalid("picard", "must be > 0");
  if (!(c.bound_tol >= 0.0)) invalid("bound", "must be >= 0");
  if (!(c.monotonicity_tol >= 0.0)) invalid("monotonicity", "must be >= 0");
  if (c.amplitude == 0.0 || !std::isfinite(c.amplitude)) invalid("amplitude", "must be finite and nonzero");
  try {
    (void)initial_data_from_tag(c.initial_data);
  } catch (const Error&) {
    invalid("data", "unknown initial-data tag '" + c.initial_data + "'");
  }
  try {
    (void)build_cutoffs(c.eps0, c.eps1, c.eps2, c.damping_kind == DampingKind::Bump || c.damping_kind == DampingKind::Indicator ? c.omega : Interval{0.0, 1.0});
  } catch (const Error& e) {
    invalid("eps", e.what());
  }

  switch (c.subcommand) {
    case Subcommand::GlobalBound:
      if (c.damping_kind != DampingKind::Constant) invalid("kind", "global-bound needs constant damping");
      for (double a : c.alpha_list) {
        if (!(a > 0.0 && a < 2.0)) {
          throw Error(ErrorKind::OutOfRegime, "'alpha' = " + std::to_string(a) + " is outside (0, 2)");
        }
      }
      break;
    case Subcommand::OracleCompare:
      if (c.n_list.size() < 3) invalid("n_list", "needs at least 3 resolutions");
      for (std::size_t i = 0; i < c.n_list.size(); ++i) {
        if (c.n_list[i] < 2) invalid("n_list", "entries must be >= 2");
        if (i > 0 && c.n_list[i] <= c.n_list[i - 1]) invalid("n_list", "must be ascending");
      }
      break;
    case Subcommand::Plot:
      if (c.plot_input.empty()) invalid("input", "plot needs [plot] input");
      break;
    default:
      if (c.alpha_list.size() != 1) invalid("alpha", "only global-bound accepts several values");
      break;
  }
}

}  // namespace wavelab
