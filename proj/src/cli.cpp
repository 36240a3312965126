#include "wreath/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "wreath/errors.hpp"
#include "wreath/exact.hpp"
#include "wreath/formulas.hpp"
#include "wreath/group_spec.hpp"
#include "wreath/numtheory.hpp"
#include "wreath/oracle.hpp"
#include "wreath/spectra.hpp"

namespace wreath::cli {

namespace {

using nlohmann::json;

struct Settings {
  bool json = false;
  bool csv = false;
  unsigned digits = 8;
  unsigned oracle_cap = oracle::kDefaultCapBits;
  std::uint64_t bit_budget = kDefaultBitBudget;
  unsigned workers = 1;

  oracle::Options oracle_options() const { return {oracle_cap, workers}; }
};

// What a command produced: the JSON payload's "result", plus the human text.
struct Outcome {
  std::string method;
  json inputs = json::object();
  json result = json::object();
  std::string text;
  std::string csv;
  int code = kOk;
};

std::string approx(const BigRational& x, const Settings& s) {
  return x.str() + " ≈ " + to_decimal(x, s.digits);
}

json rational_json(const BigRational& x, const Settings& s) {
  json j = x;
  j["decimal"] = to_decimal(x, s.digits);
  return j;
}

std::string csv_row(std::uint64_t n, const BigRational& x, const Settings& s) {
  return std::to_string(n) + "," + x.num().get_str() + "," + x.den().get_str() + "," + to_decimal(x, s.digits) + "\n";
}

constexpr const char* kCsvHeader = "n,value_num,value_den,decimal\n";

std::uint64_t require_p_group(const OrderSpectrum& spec, const std::string& label) {
  const std::uint64_t p = prime_of(spec);
  if (p == 0) {
    throw PreconditionError(label + " (order " + spec.group_size().get_str() + ") is not a nontrivial p-group");
  }
  return p;
}

// ---- commands -------------------------------------------------------------

Outcome cmd_avg(const std::string& text, const Settings& s) {
  const GroupSpec spec = parse_spec(text);
  const auto sr = spectrum_of(spec, s.oracle_options());
  const BigRational avg = average_order(sr.spectrum);
  Outcome o;
  o.method = sr.method;
  o.inputs = {{"group", to_string(spec)}};
  o.result = {{"average_order", rational_json(avg, s)}, {"group_size", sr.spectrum.group_size().get_str()}};
  o.text = approx(avg, s) + "\n";
  return o;
}

Outcome cmd_maxorder(const std::string& text, const Settings& s) {
  const GroupSpec spec = parse_spec(text);
  const auto sr = spectrum_of(spec, s.oracle_options());
  const std::uint64_t m = max_order(sr.spectrum);
  Outcome o;
  o.method = sr.method;
  o.inputs = {{"group", to_string(spec)}};
  o.result = {{"max_order", std::to_string(m)}};
  o.text = std::to_string(m) + "\n";
  return o;
}

Outcome cmd_spectrum(const std::string& text, const Settings& s) {
  const GroupSpec spec = parse_spec(text);
  const auto sr = spectrum_of(spec, s.oracle_options());
  Outcome o;
  o.method = sr.method;
  o.inputs = {{"group", to_string(spec)}};
  o.result = {{"spectrum", spectrum_to_json(sr.spectrum)}, {"group_size", sr.spectrum.group_size().get_str()}};
  for (const auto& [order, c] : sr.spectrum.counts()) o.text += std::to_string(order) + ": " + c.get_str() + "\n";
  return o;
}

Outcome cmd_wreath_avg(const std::string& a_text, const std::string& b_text, const std::string& method,
                       const Settings& s) {
  const GroupSpec a = parse_spec(a_text);
  const GroupSpec b = parse_spec(b_text);
  const std::vector<std::string> all = {"theorem1", "theorem2", "oracle", "orbit"};
  const std::vector<std::string> chosen = method == "all" ? all : std::vector<std::string>{method};

  auto evaluate = [&](const std::string& m) -> BigRational {
    if (m == "theorem1") {
      return theorem1_average(spectrum_of(a, s.oracle_options()).spectrum,
                              spectrum_of(b, s.oracle_options()).spectrum);
    }
    if (m == "theorem2") {
      const auto spec_a = spectrum_of(a, s.oracle_options()).spectrum;
      const auto p = require_p_group(spec_a, "A");
      return theorem2_average(profile_from_spectrum(spec_a, p), spectrum_of(b, s.oracle_options()).spectrum);
    }
    const FiniteGroup ga = materialize(a);
    const FiniteGroup gb = materialize(b);
    if (m == "oracle") return average_order(oracle::brute_force_spectrum(ga, gb, s.oracle_options()));
    return average_order(oracle::orbit_spectrum(ga, gb));
  };

  Outcome o;
  o.method = method;
  o.inputs = {{"a", to_string(a)}, {"b", to_string(b)}};
  json methods = json::object();
  std::optional<BigRational> reference;
  bool agree = true;
  for (const auto& m : chosen) {
    try {
      const BigRational v = evaluate(m);
      methods[m] = {{"value", rational_json(v, s)}};
      o.text += m + ": " + approx(v, s) + "\n";
      if (!reference) {
        reference = v;
      } else if (*reference != v) {
        agree = false;
      }
    } catch (const Error& e) {
      // a single method's failure is the command's failure; in "all" mode it
      // is reported and the remaining methods still have to agree
      if (chosen.size() == 1) throw;
      methods[m] = {{"skipped", e.what()}};
      o.text += m + ": skipped (" + std::string(e.what()) + ")\n";
    }
  }
  if (!reference) throw PreconditionError("no method could evaluate W(" + to_string(a) + "," + to_string(b) + ")");
  o.result = {{"methods", methods}, {"agree", agree}, {"value", rational_json(*reference, s)}};
  if (!agree) {
    o.code = kDisagreement;
    o.text += "methods disagree\n";
  } else if (chosen.size() > 1) {
    o.text += "all evaluated methods agree\n";
  }
  return o;
}

json distribution_json(const CumulativeOrderDistribution& dist, const Settings& s) {
  json r = json::array();
  for (const auto& v : dist.r) r.push_back(rational_json(v, s));
  return {{"p", dist.p},
          {"a", dist.a},
          {"d", dist.d},
          {"max_order", int_pow(to_bigint(dist.p), dist.d).get_str()},
          {"r", r}};
}

Outcome cmd_dist(const std::string& a_text, const std::string& b_text, bool check_oracle, const Settings& s) {
  const GroupSpec a = parse_spec(a_text);
  const GroupSpec b = parse_spec(b_text);
  const auto spec_a = spectrum_of(a, s.oracle_options()).spectrum;
  const auto spec_b = spectrum_of(b, s.oracle_options()).spectrum;
  const std::uint64_t p = require_p_group(spec_a, "A");
  const auto ra = r_distribution(spec_a, p);
  const auto rb = r_distribution(spec_b, p);
  const auto dist = theorem5_distribution(ra, rb);

  Outcome o;
  o.method = "theorem5";
  o.inputs = {{"a", to_string(a)}, {"b", to_string(b)}, {"check_oracle", check_oracle}};
  o.result = {{"distribution", distribution_json(dist, s)}};
  o.text = "m = " + std::to_string(p) + "^" + std::to_string(dist.d) + "\n";
  for (std::size_t k = 0; k < dist.r.size(); ++k) o.text += "r_" + std::to_string(k) + " = " + approx(dist.r[k], s) + "\n";

  if (check_oracle) {
    const auto observed = r_distribution(
        oracle::brute_force_spectrum(materialize(a), materialize(b), s.oracle_options()), p);
    const bool match = observed == dist;
    o.result["oracle"] = {{"match", match}, {"distribution", distribution_json(observed, s)}};
    o.text += match ? "oracle: match\n" : "oracle: MISMATCH\n";
    if (!match) o.code = kDisagreement;
  }
  return o;
}

Outcome cmd_tower(const std::string& a_text, const std::string& b_text, std::uint64_t steps,
                  const std::string& mode, const Settings& s) {
  const GroupSpec a = parse_spec(a_text);
  const GroupSpec b = parse_spec(b_text);
  const auto spec_a = spectrum_of(a, s.oracle_options()).spectrum;
  const auto spec_b = spectrum_of(b, s.oracle_options()).spectrum;
  const auto r0 = r_distribution(spec_a, require_p_group(spec_a, "A"));

  Outcome o;
  o.method = mode;
  o.inputs = {{"a", to_string(a)}, {"b", to_string(b)}, {"steps", steps}};
  json traj = json::array();
  o.csv = kCsvHeader;
  if (mode == "exact") {
    const auto values = psi_tower(r0, spec_b, steps);
    for (std::size_t n = 0; n < values.size(); ++n) {
      traj.push_back({{"n", n}, {"psi", rational_json(values[n], s)}, {"d", r0.d + n}});
      o.text += "psi(A_" + std::to_string(n) + ", B) = " + approx(values[n], s) + "\n";
      o.csv += csv_row(n, values[n], s);
    }
  } else {
    const auto values = psi_tower_float(r0, spec_b, steps);
    for (std::size_t n = 0; n < values.size(); ++n) {
      std::ostringstream os;
      os.precision(17);
      os << values[n];
      traj.push_back({{"n", n}, {"psi", {{"approx", os.str()}}}, {"d", r0.d + n}});
      o.text += "psi(A_" + std::to_string(n) + ", B) ~ " + os.str() + "\n";
      o.csv += std::to_string(n) + ",,," + os.str() + "\n";
    }
  }
  o.result = {{"trajectory", traj}};
  return o;
}

Outcome cmd_psi(const std::string& a_text, const std::string& b_text, const Settings& s) {
  const GroupSpec a = parse_spec(a_text);
  const GroupSpec b = parse_spec(b_text);
  const auto spec_a = spectrum_of(a, s.oracle_options()).spectrum;
  const auto spec_b = spectrum_of(b, s.oracle_options()).spectrum;
  const BigRational avg_w = theorem1_average(spec_a, spec_b);
  const BigRational value = psi(avg_w, max_order(spec_a), average_order(spec_b));
  Outcome o;
  o.method = "theorem1";
  o.inputs = {{"a", to_string(a)}, {"b", to_string(b)}};
  o.result = {{"psi", rational_json(value, s)},
              {"wreath_average", rational_json(avg_w, s)},
              {"max_order_a", std::to_string(max_order(spec_a))},
              {"average_b", rational_json(average_order(spec_b), s)}};
  o.text = approx(value, s) + "\n";
  return o;
}

Outcome cmd_abelian_check(const std::string& a_text, const std::string& b_text, const Settings& s) {
  const GroupSpec a = parse_spec(a_text);
  const GroupSpec b = parse_spec(b_text);
  const auto desc = abelian_exponents(a);
  if (!desc) throw PreconditionError(to_string(a) + " is not an abelian p-group description");
  const auto spec_b = spectrum_of(b, s.oracle_options()).spectrum;
  if (prime_of(spec_b) != desc->p) {
    throw PreconditionError("B must be a nontrivial " + std::to_string(desc->p) + "-group");
  }
  const AbelianCheck c = theorem6_check(desc->exponents, spec_b);
  Outcome o;
  o.method = "theorem6";
  o.inputs = {{"a", to_string(a)}, {"b", to_string(b)}};
  o.result = {{"t", c.t},
              {"psi", rational_json(c.psi, s)},
              {"lower", rational_json(c.lower, s)},
              {"delta", rational_json(c.delta, s)},
              {"delta_bound", rational_json(c.delta_bound, s)},
              {"cyclic_b", c.cyclic_b},
              {"holds", c.holds()}};
  o.text = "t = " + std::to_string(c.t) + "\npsi = " + approx(c.psi, s) + "\nlower = " + approx(c.lower, s) +
           "\ndelta = " + approx(c.delta, s) + "\ndelta bound = " + approx(c.delta_bound, s) +
           "\nB cyclic: " + (c.cyclic_b ? "yes" : "no") + "\n" + (c.holds() ? "holds\n" : "VIOLATED\n");
  if (!c.holds()) o.code = kDisagreement;
  return o;
}

Outcome cmd_limits(const std::string& b_text, std::uint64_t p, std::uint64_t n_max, std::optional<std::uint64_t> r,
                   const Settings& s) {
  const GroupSpec b = parse_spec(b_text);
  const auto spec_b = spectrum_of(b, s.oracle_options()).spectrum;
  const auto seq = theorem7_sequence(spec_b, p, n_max);
  const BigRational avg_b = average_order(spec_b);
  const BigRational limit = BigRational(to_bigint(p)) * avg_b;

  Outcome o;
  o.method = "theorem7";
  o.inputs = {{"b", to_string(b)}, {"p", p}, {"nmax", n_max}};
  json values = json::array();
  bool bound_holds = true;
  bool monotone = true;
  o.csv = kCsvHeader;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const std::uint64_t n = i + 1;
    const BigRational gap = limit - seq[i];
    const BigRational bound = BigRational(to_bigint(p - 1)) * avg_b /
                              BigRational(int_pow(to_bigint(p), n));
    bound_holds = bound_holds && gap.sign() >= 0 && gap <= bound;
    if (i > 0) monotone = monotone && seq[i] > seq[i - 1];
    values.push_back({{"n", n}, {"value", rational_json(seq[i], s)}});
    o.text += "n = " + std::to_string(n) + ": " + approx(seq[i], s) + "\n";
    o.csv += csv_row(n, seq[i], s);
  }
  o.result = {{"sequence", values},
              {"limit", rational_json(limit, s)},
              {"bound_holds", bound_holds},
              {"monotone", monotone}};
  o.text += "limit p*a(B) = " + approx(limit, s) + "\n";
  if (r) {
    const BigRational scaled = average_order_limit(spec_b, p, *r);
    o.result["scaled_limit"] = {{"r", *r}, {"value", rational_json(scaled, s)}};
    o.text += "p^r*a(B) = " + approx(scaled, s) + "\n";
    // B of exponent p with |B| = p^b: also report the reference closed form
    if (max_order(spec_b) == p) {
      const auto bexp = static_cast<std::uint64_t>(numtheory::log_exact(spec_b.size_u64(), p));
      const BigRational ref = elementary_limit_reference_form(p, bexp, *r);
      o.result["reference_closed_form"] = {{"value", rational_json(ref, s)}, {"matches", ref == scaled}};
      o.text += "reference closed form = " + approx(ref, s) + (ref == scaled ? " (matches)\n" : " (differs)\n");
    }
  }
  if (!bound_holds) {
    o.code = kDisagreement;
    o.text += "BOUND VIOLATED\n";
  }
  return o;
}

int report_error(int code, const std::string& kind, const std::string& message, const Settings& s,
                 std::ostream& out, std::ostream& err) {
  if (s.json) {
    out << json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump(2) << "\n";
  } else {
    err << "error: " << message << "\n";
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Average element orders and order distributions of wreath products"};
  app.name("wreathctl");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", s.json, "Emit JSON");
  app.add_flag("--csv", s.csv, "Emit CSV trajectories (tower, limits)");
  app.add_option("--digits", s.digits, "Decimal digits")->check(CLI::Range(1, 50));
  app.add_option("--oracle-cap", s.oracle_cap, "Brute-force cap as a power of two")->check(CLI::Range(1, 40));
  app.add_option("--bit-budget", s.bit_budget, "Largest integer the exact layer may build, in bits")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", s.workers, "Oracle worker threads")->check(CLI::Range(1, 256));

  std::string spec_text;
  std::string a_text;
  std::string b_text;
  std::string method = "all";
  std::string mode = "exact";
  bool check_oracle = false;
  std::uint64_t steps = 0;
  std::uint64_t p = 0;
  std::uint64_t n_max = 0;
  std::uint64_t r_value = 0;

  auto* avg = app.add_subcommand("avg", "Average element order");
  avg->add_option("SPEC", spec_text)->required();
  auto* maxorder = app.add_subcommand("maxorder", "Maximum element order");
  maxorder->add_option("SPEC", spec_text)->required();
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Order spectrum");
  spectrum_cmd->add_option("SPEC", spec_text)->required();

  auto* wreath_avg = app.add_subcommand("wreath-avg", "a(A wr B) by one or all methods");
  wreath_avg->add_option("--a", a_text)->required();
  wreath_avg->add_option("--b", b_text)->required();
  wreath_avg->add_option("--method", method)
      ->check(CLI::IsMember({"theorem1", "theorem2", "oracle", "orbit", "all"}));

  auto* dist = app.add_subcommand("dist", "Cumulative order distribution of A wr B");
  dist->add_option("--a", a_text)->required();
  dist->add_option("--b", b_text)->required();
  dist->add_flag("--check-oracle", check_oracle);

  auto* tower = app.add_subcommand("tower", "psi(A_n, B) along A_n = A_(n-1) wr C_p");
  tower->add_option("--a", a_text)->required();
  tower->add_option("--b", b_text)->required();
  tower->add_option("--steps", steps)->required()->check(CLI::Range(std::uint64_t{0}, kMaxTowerSteps));
  tower->add_option("--mode", mode)->check(CLI::IsMember({"exact", "float"}));

  auto* psi_cmd = app.add_subcommand("psi", "psi(A, B) = a(A wr B) / (m(A) a(B))");
  psi_cmd->add_option("--a", a_text)->required();
  psi_cmd->add_option("--b", b_text)->required();

  auto* abelian_check = app.add_subcommand("abelian-check", "Inequality chain for abelian A");
  abelian_check->add_option("--a", a_text)->required();
  abelian_check->add_option("--b", b_text)->required();

  auto* limits = app.add_subcommand("limits", "a((Z/pZ)^n wr B) for n = 1..nmax");
  limits->add_option("--b", b_text)->required();
  limits->add_option("--p", p)->required();
  limits->add_option("--nmax", n_max)->required()->check(CLI::Range(std::uint64_t{1}, kMaxLimitTerms));
  auto* r_opt = limits->add_option("--r", r_value, "Also report p^r a(B)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report_error(kUsage, "usage", e.what(), s, out, err);
  }

  try {
    const ScopedBitBudget budget(s.bit_budget);
    Outcome o;
    std::string command;
    if (avg->parsed()) {
      command = "avg";
      o = cmd_avg(spec_text, s);
    } else if (maxorder->parsed()) {
      command = "maxorder";
      o = cmd_maxorder(spec_text, s);
    } else if (spectrum_cmd->parsed()) {
      command = "spectrum";
      o = cmd_spectrum(spec_text, s);
    } else if (wreath_avg->parsed()) {
      command = "wreath-avg";
      o = cmd_wreath_avg(a_text, b_text, method, s);
    } else if (dist->parsed()) {
      command = "dist";
      o = cmd_dist(a_text, b_text, check_oracle, s);
    } else if (tower->parsed()) {
      command = "tower";
      o = cmd_tower(a_text, b_text, steps, mode, s);
    } else if (psi_cmd->parsed()) {
      command = "psi";
      o = cmd_psi(a_text, b_text, s);
    } else if (abelian_check->parsed()) {
      command = "abelian-check";
      o = cmd_abelian_check(a_text, b_text, s);
    } else {
      command = "limits";
      o = cmd_limits(b_text, p, n_max, r_opt->count() ? std::optional<std::uint64_t>(r_value) : std::nullopt, s);
    }

    if (s.json) {
      const json payload{{"command", command}, {"inputs", o.inputs}, {"method", o.method}, {"result", o.result}};
      out << payload.dump(2) << "\n";
    } else if (s.csv && !o.csv.empty()) {
      out << o.csv;
    } else {
      out << o.text;
    }
    return o.code;
  } catch (const ParseError& e) {
    return report_error(kUsage, "parse", e.what(), s, out, err);
  } catch (const PreconditionError& e) {
    return report_error(kPrecondition, "precondition", e.what(), s, out, err);
  } catch (const ResourceError& e) {
    return report_error(kResource, "resource", e.what(), s, out, err);
  } catch (const InvariantError& e) {
    return report_error(kPrecondition, "invariant", e.what(), s, out, err);
  }
}

}  // namespace wreath::cli
