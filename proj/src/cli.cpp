// Copyright 2026 The tqls Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "tqls/cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "tqls/emulator.hpp"
#include "tqls/errors.hpp"
#include "tqls/structured.hpp"

namespace tqls::cli {

const char* const kSymbolGrammar =
    "SYMBOL grammar:\n"
    "  const:a            f = a                               (a > 0)\n"
    "  cos:a,b            f = a + b cos(lambda)               (a > |b|)\n"
    "  kms:rho            t_k = rho^|k|                       (|rho| < 1)\n"
    "  pseries:p,t0       t_0 = t0, t_k = |k|^-p              (p > 1, t0 > 2 zeta(p))\n"
    "  band:t_-r,...,t_r  real symmetric coefficients, odd count, positive symbol\n";

const char* const kRhsGrammar =
    "RHS grammar:\n"
    "  basis:i            unit vector e_i (0-based)\n"
    "  random:seed        complex normal entries from splitmix64(seed), normalized\n"
    "  banded:L           2L+1 entries of 1/sqrt(2L+1) centred at floor(n/2)\n"
    "  file:path          one complex per line as \"re im\"; '#' starts a comment\n";

const char* const kNListGrammar =
    "N-LIST grammar:\n"
    "  a:b:dyadic         a, 2a, 4a, ... up to b\n"
    "  a:b:step           a, a+step, ... up to b\n"
    "  n1,n2,...          explicit ascending list\n";

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view s, const std::string& context) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, value);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw UsageError(context + ": not a number: '" + std::string(s) + "'");
  }
  return value;
}

long parse_long(std::string_view s, const std::string& context) {
  long value = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, value);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw UsageError(context + ": not an integer: '" + std::string(s) + "'");
  }
  return value;
}

std::uint64_t parse_u64(std::string_view s, const std::string& context) {
  std::uint64_t value = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, value);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw UsageError(context + ": not an unsigned integer: '" + std::string(s) + "'");
  }
  return value;
}

std::vector<double> parse_reals(std::string_view s, const std::string& context) {
  std::vector<double> out;
  for (auto part : split(s, ',')) out.push_back(parse_real(part, context));
  return out;
}

std::string number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string help_footer() {
  return std::string("\n") + kSymbolGrammar + "\n" + kRhsGrammar + "\n" + kNListGrammar;
}

struct Common {
  std::string symbol;
  long n = 0;
  std::string n_list;
  std::string rhs;
  std::string output;
  std::string out_path;
};

void add_output(CLI::App* sub, Common& c, const std::string& default_format,
                std::vector<std::string> formats) {
  c.output = default_format;
  sub->add_option("--output", c.output, "Report format")
      ->check(CLI::IsMember(std::move(formats)))
      ->capture_default_str();
  sub->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
}

std::vector<Eigen::Index> n_values(const Common& c) {
  if (!c.n_list.empty()) return parse_n_list(c.n_list);
  if (c.n > 0) return {c.n};
  throw UsageError("one of --n or --n-list is required");
}

using Json = nlohmann::ordered_json;

void emit_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

void run_solve(const Common& c, std::ostream& os) {
  const GeneratingFunction f = parse_symbol(c.symbol);
  const RhsSpec spec = parse_rhs(c.rhs);
  const ComplexVector b = make_rhs(spec, c.n);
  const CirculantMatrix circ = associated_circulant(f, c.n);
  const ComplexVector x = circulant_solve(circ, b);
  const double residual = (circulant_matvec(circ, x) - b).norm() / b.norm();
  if (c.output == "csv") {
    os << "i,re,im\n";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      os << i << ',' << number(x[i].real()) << ',' << number(x[i].imag()) << '\n';
    }
    return;
  }
  Json j;
  j["symbol"] = f.describe();
  j["n"] = c.n;
  j["rhs"] = spec.label();
  Json re = Json::array();
  Json im = Json::array();
  for (const auto& v : x) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j["x"] = std::move(re);
  j["x_imag"] = std::move(im);
  j["residual"] = residual;
  emit_json(os, j);
}

struct EmulateOptions {
  std::optional<double> m;
  int bits = 0;
  std::string amplification = "analytic";
  std::string mode = "symbol";
};

void run_emulate(const Common& c, const EmulateOptions& e, std::ostream& os) {
  if (!is_power_of_two(c.n)) throw UsageError("emulate: --n must be a power of two");
  const GeneratingFunction f = parse_symbol(c.symbol);
  const ComplexVector b = make_rhs(parse_rhs(c.rhs), c.n);
  EmulationConfig config;
  config.m = e.m;
  config.value_register_bits = e.bits;
  config.mode = e.mode == "wiener" ? EmulationMode::kWiener : EmulationMode::kSymbol;
  if (e.amplification != "analytic") {
    constexpr std::string_view prefix = "grover:";
    if (!e.amplification.starts_with(prefix)) {
      throw UsageError("--amplification must be 'analytic' or 'grover:k'");
    }
    const long k = parse_long(std::string_view(e.amplification).substr(prefix.size()),
                              "--amplification");
    if (k < 0) throw UsageError("--amplification: k must be >= 0");
    config.grover_iterations = static_cast<int>(k);
  }
  emit_json(os, to_json(run_pipeline(b, SymbolSource{f}, config)));
}

void run_converge(const Common& c, std::ostream& os) {
  const GeneratingFunction f = parse_symbol(c.symbol);
  const auto records = convergence_sweep(f, n_values(c), parse_rhs(c.rhs));
  if (c.output == "csv") {
    write_csv(os, records);
    return;
  }
  Json rows = Json::array();
  for (const auto& r : records) {
    Json j;
    j["n"] = r.n;
    if (r.error) {
      j["error"] = *r.error;
    } else {
      j["epsilon"] = r.epsilon;
      j["kappa"] = r.kappa;
      j["kappa_method"] = r.kappa_method;
      j["kappa_proxy"] = r.kappa_proxy;
      j["vec_err"] = r.vec_err;
      j["state_err"] = r.state_err;
      j["bound_vec"] = r.bound_vec;
      j["bound_state"] = r.bound_state;
      j["success_probability"] = r.success_probability;
    }
    j["rhs_kind"] = r.rhs_kind;
    j["seed"] = r.seed;
    rows.push_back(std::move(j));
  }
  emit_json(os, rows);
}

void run_decompose(const Common& c, std::ostream& os) {
  const GeneratingFunction f = parse_symbol(c.symbol);
  const auto ns = n_values(c);
  if (c.output == "csv") {
    os << "n,sampling_term,wrap_term,wrap_closed_form,total_rel,theorem_bound,effective_radius\n";
    for (const auto n : ns) {
      const auto d = decompose_frobenius_error(f, n);
      os << n << ',' << number(d.sampling_term) << ',' << number(d.wrap_term) << ','
         << number(d.wrap_closed_form) << ',' << number(d.total_rel) << ','
         << number(d.theorem_bound) << ',' << d.effective_radius << '\n';
    }
    return;
  }
  Json rows = Json::array();
  for (const auto n : ns) {
    const auto d = decompose_frobenius_error(f, n);
    Json j;
    j["n"] = n;
    j["sampling_term"] = d.sampling_term;
    j["wrap_term"] = d.wrap_term;
    j["wrap_closed_form"] = d.wrap_closed_form;
    j["total_rel"] = d.total_rel;
    j["theorem_bound"] = d.theorem_bound;
    j["effective_radius"] = d.effective_radius;
    rows.push_back(std::move(j));
  }
  emit_json(os, rows);
}

struct RatesOptions {
  std::string kind = "pseries";
  double p = 2.0;
  double t0 = 4.0;
  long half_width = 2;
  std::uint64_t seed = kDefaultSeed;
};

void run_rates(const Common& c, const RatesOptions& r, std::ostream& os) {
  RateFit fit;
  if (r.kind == "pseries") {
    const auto ns = c.n_list.empty() ? parse_n_list("64:1024:dyadic") : parse_n_list(c.n_list);
    fit = rate_check_pseries(r.p, r.t0, ns, r.seed);
  } else if (r.kind == "banded") {
    const auto ns = c.n_list.empty() ? parse_n_list("128:1024:dyadic") : parse_n_list(c.n_list);
    const GeneratingFunction f = parse_symbol(c.symbol.empty() ? "kms:0.5" : c.symbol);
    fit = rate_check_banded_rhs(f, r.half_width, ns);
  } else {
    if (c.symbol.empty()) throw UsageError("rates --kind symbol needs --symbol");
    const auto ns = c.n_list.empty() ? parse_n_list("64:1024:dyadic") : parse_n_list(c.n_list);
    fit = rate_check_symbol(parse_symbol(c.symbol), ns, r.seed);
  }
  emit_json(os, to_json(fit));
}

void run_eigens(const Common& c, std::ostream& os) {
  const GeneratingFunction f = parse_symbol(c.symbol);
  const auto ns = n_values(c);
  std::vector<double> gaps;
  for (const auto n : ns) {
    gaps.push_back(eigenvalue_matching(toeplitz_from_symbol(f, n), associated_circulant(f, n)));
  }
  if (c.output == "csv") {
    os << "n,max_gap,max_gap_times_n\n";
    for (std::size_t i = 0; i < ns.size(); ++i) {
      os << ns[i] << ',' << number(gaps[i]) << ',' << number(gaps[i] * static_cast<double>(ns[i]))
         << '\n';
    }
    return;
  }
  const RateFit fit = fit_rate(ns, gaps, RateModel::kInvN);
  emit_json(os, to_json(fit));
}

}  // namespace

GeneratingFunction parse_symbol(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("symbol '" + text + "': expected kind:args");
  const std::string kind = text.substr(0, colon);
  const std::string_view args = std::string_view(text).substr(colon + 1);
  const auto values = parse_reals(args, "symbol '" + text + "'");
  auto want = [&](std::size_t count) {
    if (values.size() != count) {
      throw UsageError("symbol '" + text + "': " + kind + " takes " + std::to_string(count) +
                       " argument(s)");
    }
  };
  if (kind == "const") {
    want(1);
    return GeneratingFunction::constant(values[0]);
  }
  if (kind == "cos") {
    want(2);
    return GeneratingFunction::shifted_cosine(values[0], values[1]);
  }
  if (kind == "kms") {
    want(1);
    return GeneratingFunction::kac_murdock_szego(values[0]);
  }
  if (kind == "pseries") {
    want(2);
    return GeneratingFunction::p_series(values[0], values[1]);
  }
  if (kind == "band") {
    if (values.size() % 2 == 0) throw UsageError("symbol '" + text + "': band needs an odd count");
    return GeneratingFunction::band(values);
  }
  throw UsageError("symbol '" + text + "': unknown kind '" + kind + "'");
}

RhsSpec parse_rhs(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("rhs '" + text + "': expected kind:arg");
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  RhsSpec spec;
  if (kind == "basis") {
    spec.kind = RhsKind::kBasis;
    spec.index = parse_long(arg, "rhs basis index");
  } else if (kind == "random") {
    spec.kind = RhsKind::kRandom;
    spec.seed = parse_u64(arg, "rhs seed");
  } else if (kind == "banded") {
    spec.kind = RhsKind::kBanded;
    spec.half_width = parse_long(arg, "rhs half width");
  } else if (kind == "file") {
    if (arg.empty()) throw UsageError("rhs file: empty path");
    spec.kind = RhsKind::kFile;
    spec.path = arg;
  } else {
    throw UsageError("rhs '" + text + "': unknown kind '" + kind + "'");
  }
  return spec;
}

std::vector<Eigen::Index> parse_n_list(const std::string& text) {
  std::vector<Eigen::Index> ns;
  const auto parts = split(text, ':');
  if (parts.size() == 3) {
    const long a = parse_long(parts[0], "n-list start");
    const long b = parse_long(parts[1], "n-list end");
    if (a < 1 || b < a) throw UsageError("n-list '" + text + "': need 1 <= a <= b");
    if (parts[2] == "dyadic") {
      for (long n = a; n <= b; n *= 2) ns.push_back(n);
    } else {
      const long step = parse_long(parts[2], "n-list step");
      if (step < 1) throw UsageError("n-list '" + text + "': step must be >= 1");
      for (long n = a; n <= b; n += step) ns.push_back(n);
    }
    return ns;
  }
  if (parts.size() != 1) throw UsageError("n-list '" + text + "': expected a:b:dyadic, a:b:step or a list");
  for (auto part : split(text, ',')) {
    const long n = parse_long(part, "n-list entry");
    if (n < 1) throw UsageError("n-list entries must be positive");
    if (!ns.empty() && n <= ns.back()) throw UsageError("n-list entries must be ascending");
    ns.push_back(n);
  }
  return ns;
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toeplitz systems through circulant substitution and an emulated quantum solver",
               "tqls"};
  app.require_subcommand(1, 1);
  app.footer(help_footer());

  Common cs, ce, cc, cd, cr, cg;
  EmulateOptions e;
  RatesOptions r;

  auto add_symbol = [](CLI::App* sub, Common& c, bool required) {
    auto* opt = sub->add_option("--symbol", c.symbol, "Generating function (SYMBOL grammar)");
    if (required) opt->required();
  };
  auto add_n = [](CLI::App* sub, Common& c, bool required) {
    auto* opt = sub->add_option("--n", c.n, "Matrix size")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };
  auto add_n_list = [](CLI::App* sub, Common& c, bool required) {
    auto* opt = sub->add_option("--n-list", c.n_list, "Sizes (N-LIST grammar)");
    if (required) opt->required();
  };
  auto add_rhs = [](CLI::App* sub, Common& c, const std::string& def) {
    c.rhs = def;
    sub->add_option("--rhs", c.rhs, "Right-hand side (RHS grammar)")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Solve C_n(f) x = b with the FFT circulant solver");
  add_symbol(solve, cs, true);
  add_n(solve, cs, true);
  add_rhs(solve, cs, "basis:0");
  add_output(solve, cs, "json", {"json", "csv"});

  auto* emulate = app.add_subcommand("emulate", "Run the statevector emulation of the circuit");
  add_symbol(emulate, ce, true);
  add_n(emulate, ce, true);
  add_rhs(emulate, ce, "random:7");
  add_output(emulate, ce, "json", {"json"});
  emulate->add_option("--m", e.m, "Rotation constant (default: f_min)");
  emulate->add_option("--bits", e.bits, "Value register bits, 0 = exact")
      ->check(CLI::Range(0, 52))
      ->capture_default_str();
  emulate->add_option("--amplification", e.amplification, "analytic | grover:k")
      ->capture_default_str();
  emulate->add_option("--mode", e.mode, "Oracle values: symbol samples or Wiener truncation")
      ->check(CLI::IsMember({"symbol", "wiener"}))
      ->capture_default_str();

  auto* converge = app.add_subcommand("converge", "Convergence sweep against the dense Toeplitz solve");
  add_symbol(converge, cc, true);
  add_n_list(converge, cc, true);
  add_rhs(converge, cc, "random:7");
  add_output(converge, cc, "csv", {"csv", "json"});

  auto* decompose = app.add_subcommand("decompose", "Sampling/wrap split of the Frobenius distance");
  add_symbol(decompose, cd, true);
  add_n(decompose, cd, false);
  add_n_list(decompose, cd, false);
  add_output(decompose, cd, "csv", {"csv", "json"});

  auto* rates = app.add_subcommand("rates", "Rate checks with boundedness verdicts");
  rates->add_option("--kind", r.kind, "pseries | banded | symbol")
      ->check(CLI::IsMember({"pseries", "banded", "symbol"}))
      ->capture_default_str();
  add_symbol(rates, cr, false);
  rates->add_option("--p", r.p, "p-series exponent")->capture_default_str();
  rates->add_option("--t0", r.t0, "p-series diagonal")->capture_default_str();
  rates->add_option("--L", r.half_width, "Banded rhs half width")->capture_default_str();
  rates->add_option("--seed", r.seed, "Random rhs seed")->capture_default_str();
  add_n_list(rates, cr, false);
  add_output(rates, cr, "json", {"json"});

  auto* eigens = app.add_subcommand("eigens", "Sorted eigenvalue gaps between T_n(f) and C_n(f)");
  add_symbol(eigens, cg, true);
  add_n(eigens, cg, false);
  add_n_list(eigens, cg, false);
  add_output(eigens, cg, "csv", {"csv", "json"});

  for (auto* sub : {solve, emulate, converge, decompose, rates, eigens}) sub->footer(help_footer());

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream report;
  const Common& c = solve->parsed()      ? cs
                    : emulate->parsed()  ? ce
                    : converge->parsed() ? cc
                    : decompose->parsed() ? cd
                    : rates->parsed()    ? cr
                                         : cg;
  try {
    if (solve->parsed()) {
      run_solve(c, report);
    } else if (emulate->parsed()) {
      run_emulate(c, e, report);
    } else if (converge->parsed()) {
      run_converge(c, report);
    } else if (decompose->parsed()) {
      run_decompose(c, report);
    } else if (rates->parsed()) {
      run_rates(c, r, report);
    } else {
      run_eigens(c, report);
    }
  } catch (const UsageError& ex) {
    err << "tqls: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const Error& ex) {
    err << Json{{"error", ex.code()}, {"detail", ex.what()}}.dump() << '\n';
    return kExitNumerical;
  } catch (const std::exception& ex) {
    err << Json{{"error", "internal"}, {"detail", ex.what()}}.dump() << '\n';
    return kExitNumerical;
  }

  if (c.out_path.empty()) {
    out << report.str();
    return kExitOk;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!(file << report.str()) || !file.flush()) {
    err << Json{{"error", "io"}, {"detail", "cannot write " + c.out_path}}.dump() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace tqls::cli
