#pragma once

// Command-line front end. run() is separate from main() so tests can drive it.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "caterlab/caterlab.hpp"
#include "caterlab/json_io.hpp"
#include "json.hpp"

namespace caterlab::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kDomain = 3,
  kContradiction = 4,
  kNumeric = 5,
};

inline constexpr double kPublishedEpsilon = 0.5173446105249118;
inline constexpr double kPublishedExpNegInvE = 0.6922006275553464;

inline unsigned worker_count() {
  if (const char* env = std::getenv("CATERLAB_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t\r");
    const auto e = item.find_last_not_of(" \t\r");
    if (b == std::string::npos) throw ConfigError("empty entry in list '" + text + "'");
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("cannot parse number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

inline std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  for (double v : parse_number_list(text)) {
    if (v != static_cast<double>(static_cast<long long>(v))) throw ConfigError("expected integers in '" + text + "'");
    out.push_back(static_cast<long long>(v));
  }
  return out;
}

struct TupleSource {
  std::string inline_tuple;
  std::string file;
  std::size_t remark42 = 0;

  std::vector<PositiveTuple> load() const {
    const int given = !inline_tuple.empty() + !file.empty() + (remark42 != 0);
    if (given != 1) throw ConfigError("give exactly one of --tuple, --tuple-file, --remark42");
    if (!inline_tuple.empty()) return {PositiveTuple(parse_number_list(inline_tuple))};
    if (remark42 != 0) return {remark42_tuple(remark42)};
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open tuple file '" + file + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      rows.push_back(parse_number_list(line));
    }
    if (rows.empty()) throw ConfigError("tuple file '" + file + "' has no tuples");
    // Parse everything before validating so a malformed line is a parse error.
    std::vector<PositiveTuple> out;
    for (auto& r : rows) out.emplace_back(std::move(r));
    return out;
  }

  void add_options(CLI::App* app) {
    app->add_option("--tuple", inline_tuple, "Comma-separated tuple, e.g. 1,2,3");
    app->add_option("--tuple-file", file, "CSV file with one tuple per line");
    app->add_option("--remark42", remark42, "Generated tuple a_i = eps + (i-1)/n");
  }
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"caterlab: numerical checks for Cater-type cyclic inequalities", "caterlab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    app.add_option("--abs-tol", band_.abs_tol, "Absolute equality band")->check(CLI::PositiveNumber);
    app.add_option("--rel-tol", band_.rel_tol, "Relative equality band")->check(CLI::NonNegativeNumber);
    app.add_option("--format", format_, "Output format")->check(CLI::IsMember({"json", "csv"}));

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate C, C_upper, C_lower, F or the full chain");
    TupleSource eval_src;
    eval_src.add_options(eval);
    std::string which = "chain";
    std::string perm_text;
    eval->add_option("--which", which, "C | C_upper | C_lower | F | chain")
        ->check(CLI::IsMember({"C", "C_upper", "C_lower", "F", "chain"}));
    eval->add_option("--perm", perm_text, "Permutation (1-based) for --which F");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exhaustive permutation scan and swap chain");
    TupleSource oracle_src;
    oracle_src.add_options(oracle);
    std::size_t n_cap = 8;
    std::string start_text;
    oracle->add_option("--n-cap", n_cap, "Largest n scanned exhaustively")->check(CLI::Range(2, 10));
    oracle->add_option("--start", start_text, "Start permutation of the swap chain (default identity)");

    // search
    auto* search = app.add_subcommand("search", "Seeded counterexample search");
    SearchConfig cfg;
    std::string target = "lower", region = "unconstrained";
    std::optional<std::uint64_t> search_seed;
    search->add_option("--target", target)->check(CLI::IsMember({"lower", "upper", "cater"}));
    search->add_option("--region", region)
        ->check(CLI::IsMember({"hypothesis-fail", "hypothesis-hold", "unconstrained"}));
    search->add_option("--n", cfg.n, "Tuple length");
    search->add_option("--samples", cfg.samples, "Number of sampled tuples");
    search->add_option("--seed", search_seed, "64-bit seed (required)");
    search->add_option("--lo", cfg.lo, "Lower end of the value range");
    search->add_option("--hi", cfg.hi, "Upper end of the value range");

    // constants
    auto* constants = app.add_subcommand("constants", "Reproduce eps and e^{-1/e}");

    // limit
    auto* limit = app.add_subcommand("limit", "Riemann means of C against the integral of f^f");
    std::string f_text, n_text = "10,100,1000";
    double tol = 1e-10;
    limit->add_option("--f", f_text, "const:c | affine:c0,c1 | power:c0,c1,p | exp:c0,c1")->required();
    limit->add_option("--n", n_text, "Ascending list of n");
    limit->add_option("--tol", tol, "Quadrature tolerance");

    // lemmas
    auto* lemmas = app.add_subcommand("lemmas", "Property batteries for the lemmas");
    std::uint64_t lemma_samples = 100000;
    std::optional<std::uint64_t> lemma_seed;
    std::vector<std::string> batteries;
    lemmas->add_option("--samples", lemma_samples, "Samples per battery");
    lemmas->add_option("--seed", lemma_seed, "64-bit seed (default 0)");
    lemmas->add_option("--battery", batteries, "Subset of batteries (default all)")
        ->check(CLI::IsMember({"lemma301", "phi-above-one", "phi-below-one", "two-var", "cater2", "induction", "lower-half",
                               "infima"}));

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp& e) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::CallForVersion& e) {
      out_ << kVersion << "\n";
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kConfig;
    }

    args_json_ = json::object();
    if (band_.abs_tol != Band{}.abs_tol) args_json_["abs_tol"] = band_.abs_tol;
    if (band_.rel_tol != Band{}.rel_tol) args_json_["rel_tol"] = band_.rel_tol;
    rel_tol_given_ = app.get_option("--rel-tol")->count() > 0;

    try {
      if (*eval) {
        command_ = "eval";
        args_json_.update({{"which", which}, {"perm", perm_text}});
        record_source(eval_src);
        return cmd_eval(eval_src, which, perm_text);
      }
      if (*oracle) {
        command_ = "oracle";
        args_json_.update({{"n_cap", n_cap}, {"start", start_text}});
        record_source(oracle_src);
        return cmd_oracle(oracle_src, n_cap, start_text);
      }
      if (*search) {
        command_ = "search";
        if (!search_seed) throw ConfigError("search requires --seed");
        cfg.seed = *search_seed;
        seed_ = cfg.seed;
        cfg.band = band_;
        cfg.target = target == "lower"   ? Target::violate_lower_5_01
                     : target == "upper" ? Target::violate_upper_5
                                         : Target::violate_cater_2;
        cfg.region = region == "hypothesis-fail"   ? Region::hypothesis_fail
                     : region == "hypothesis-hold" ? Region::hypothesis_hold
                                                   : Region::unconstrained;
        args_json_.update(to_json(cfg));
        return cmd_search(cfg);
      }
      if (*constants) {
        command_ = "constants";
        return cmd_constants();
      }
      if (*limit) {
        command_ = "limit";
        args_json_.update({{"f", f_text}, {"n", n_text}, {"tol", tol}});
        return cmd_limit(f_text, n_text, tol);
      }
      if (*lemmas) {
        command_ = "lemmas";
        if (!lemma_seed) err_ << "warning: no --seed given, using 0\n";
        seed_ = lemma_seed.value_or(0);
        args_json_.update({{"samples", lemma_samples}, {"batteries", batteries}});
        return cmd_lemmas(lemma_samples, *seed_, batteries);
      }
    } catch (const ContradictionError& e) {
      return fail(kContradiction, "contradiction", e.what(), json::parse(e.provenance(), nullptr, false));
    } catch (const QuadratureError& e) {
      return fail(kNumeric, "quadrature", e.what(),
                  {{"estimate", e.estimate()}, {"error_estimate", e.error_estimate()}});
    } catch (const NumericError& e) {
      return fail(kNumeric, "numeric", e.what());
    } catch (const DomainError& e) {
      return fail(kDomain, "domain", e.what());
    } catch (const ConfigError& e) {
      return fail(kConfig, "config", e.what());
    } catch (const ResourceError& e) {
      return fail(kConfig, "resource", e.what());
    }
    return kConfig;
  }

 private:
  json manifest() const {
    return {
        {"command", command_},
        {"config", args_json_},
        {"seed", seed_ ? json(*seed_) : json()},
        {"tool_version", kVersion},
        {"timestamp", utc_timestamp()},
        {"schema_version", kSchemaVersion},
    };
  }

  void record_source(const TupleSource& s) {
    if (!s.inline_tuple.empty()) args_json_["tuple"] = s.inline_tuple;
    if (!s.file.empty()) args_json_["tuple_file"] = s.file;
    if (s.remark42 != 0) args_json_["remark42"] = s.remark42;
  }

  void emit(json body) {
    body["schema_version"] = kSchemaVersion;
    body["manifest"] = manifest();
    out_ << body.dump(2) << "\n";
  }

  int fail(int code, const std::string& kind, const std::string& message, json detail = json()) {
    err_ << "error (" << kind << "): " << message << "\n";
    json body = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
    if (!detail.is_null() && !detail.is_discarded()) body["error"]["detail"] = detail;
    if (format_ == "json") emit(body);
    return code;
  }

  int cmd_eval(const TupleSource& src, const std::string& which, const std::string& perm_text) {
    std::optional<Permutation> perm;
    if (which == "F") {
      if (perm_text.empty()) throw ConfigError("--which F needs --perm");
      perm = Permutation::from_one_based(parse_int_list(perm_text));
    }
    const auto tuples = src.load();
    json results = json::array();
    std::ostringstream csv;
    csv << (which == "chain" ? "index,n,C_lower,C,C_upper,hypothesis_H,lower_verdict,upper_verdict\n"
                             : "index,n,which,value\n");
    bool contradiction = false;
    for (std::size_t idx = 0; idx < tuples.size(); ++idx) {
      const auto& t = tuples[idx];
      json r = {{"tuple", to_json(t)},
                {"n", t.size()},
                {"sorted_ascending", t.sorted_ascending()},
                {"hypothesis_H", t.hypothesis_h()},
                {"which", which}};
      if (which == "chain") {
        const auto chain = verify_chain(t, band_);
        r["C"] = chain.lower.rhs;
        r["C_lower"] = chain.lower.lhs;
        r["C_upper"] = chain.upper.rhs;
        r["lower"] = to_json(chain.lower);
        r["upper"] = to_json(chain.upper);
        contradiction = contradiction || chain.lower.contradicts() || chain.upper.contradicts();
        csv << idx << ',' << t.size() << ',' << fmt17(chain.lower.lhs) << ',' << fmt17(chain.lower.rhs) << ','
            << fmt17(chain.upper.rhs) << ',' << (t.hypothesis_h() ? "true" : "false") << ','
            << to_string(chain.lower.verdict) << ',' << to_string(chain.upper.verdict) << "\n";
      } else {
        double v = 0;
        if (which == "C") v = cater_C(t);
        if (which == "C_upper") v = cater_C_upper(t);
        if (which == "C_lower") v = cater_C_lower(t);
        if (which == "F") {
          v = perm_functional(t, *perm);
          r["perm"] = to_json(*perm);
        }
        r["value"] = v;
        csv << idx << ',' << t.size() << ',' << which << ',' << fmt17(v) << "\n";
      }
      results.push_back(r);
    }
    if (format_ == "csv") {
      out_ << csv.str();
    } else {
      emit({{"results", results}});
    }
    if (contradiction) err_ << "contradiction: a claimed inequality is violated beyond the band\n";
    return contradiction ? kContradiction : kOk;
  }

  int cmd_oracle(const TupleSource& src, std::size_t n_cap, const std::string& start_text) {
    const auto tuples = src.load();
    json results = json::array();
    std::ostringstream csv;
    csv << "index,n,count,min_value,min_perm,max_value,max_perm,hypothesis_H,chain_steps\n";
    for (std::size_t idx = 0; idx < tuples.size(); ++idx) {
      const auto& t = tuples[idx];
      const auto scan = brute_force_scan(t, n_cap, worker_count(), band_);
      json r = {{"tuple", to_json(t)},
                {"n", t.size()},
                {"hypothesis_H", t.hypothesis_h()},
                {"scan", to_json(scan)},
                {"reverse_value", perm_functional(t, Permutation::reverse(t.size()))},
                {"identity_value", perm_functional(t, Permutation::identity(t.size()))},
                {"chain", nullptr}};
      std::size_t steps = 0;
      if (t.hypothesis_h()) {
        const Permutation start = start_text.empty() ? Permutation::identity(t.size())
                                                     : Permutation::from_one_based(parse_int_list(start_text));
        const auto chain = sort_to_reverse(t, start, band_);
        steps = chain.steps.size();
        r["chain"] = to_json(chain);
      }
      auto perm_str = [](const Permutation& p) {
        std::string s;
        for (auto v : p.one_based()) s += (s.empty() ? "" : " ") + std::to_string(v);
        return s;
      };
      csv << idx << ',' << t.size() << ',' << scan.count << ',' << fmt17(scan.min_value) << ','
          << perm_str(scan.min_perm) << ',' << fmt17(scan.max_value) << ',' << perm_str(scan.max_perm) << ','
          << (t.hypothesis_h() ? "true" : "false") << ',' << steps << "\n";
      results.push_back(r);
    }
    if (format_ == "csv") {
      out_ << csv.str();
    } else {
      emit({{"results", results}});
    }
    return kOk;
  }

  int cmd_search(const SearchConfig& cfg) {
    const auto report = counterexample_search(cfg, worker_count());
    for (const auto& f : report.findings) {
      err_ << "finding: sample " << f.sample_index << " margin " << fmt17(f.margin) << " recheck "
           << fmt17(f.recheck_margin) << "\n";
    }
    if (format_ == "csv") {
      out_ << "sample_index,margin,recheck_margin,hypothesis_H,tuple\n";
      for (const auto& f : report.findings) {
        std::string tuple;
        for (double v : f.tuple.values()) tuple += (tuple.empty() ? "" : " ") + fmt17(v);
        out_ << f.sample_index << ',' << fmt17(f.margin) << ',' << fmt17(f.recheck_margin) << ','
             << (f.hypothesis_h ? "true" : "false") << ',' << tuple << "\n";
      }
    } else {
      emit(to_json(report));
    }
    err_ << "search: " << report.findings.size() << " verified finding(s) in " << report.samples << " samples\n";
    if (report.contradiction()) {
      err_ << "contradiction: findings for an inequality that is proved in this region\n";
      return kContradiction;
    }
    return kOk;
  }

  int cmd_constants() {
    const double eps = find_epsilon();
    const double c = exp_neg_inv_e();
    json body = {
        {"epsilon",
         {{"value", eps},
          {"equation", "x^(x+1) = e^-1, x in (0,1)"},
          {"residual", pow_pos(eps, eps + 1.0) - kInvE},
          {"log_residual", (eps + 1.0) * std::log(eps) + 1.0},
          {"published", kPublishedEpsilon},
          {"deviation_from_published", eps - kPublishedEpsilon}}},
        {"exp_neg_inv_e",
         {{"value", c},
          {"residual", std::log(c) + kInvE},
          {"published", kPublishedExpNegInvE},
          {"deviation_from_published", c - kPublishedExpNegInvE}}},
    };
    if (format_ == "csv") {
      out_ << "name,value,residual,published,deviation\n";
      out_ << "epsilon," << fmt17(eps) << ',' << fmt17(body["epsilon"]["residual"].get<double>()) << ','
           << fmt17(kPublishedEpsilon) << ',' << fmt17(eps - kPublishedEpsilon) << "\n";
      out_ << "exp_neg_inv_e," << fmt17(c) << ',' << fmt17(body["exp_neg_inv_e"]["residual"].get<double>()) << ','
           << fmt17(kPublishedExpNegInvE) << ',' << fmt17(c - kPublishedExpNegInvE) << "\n";
    } else {
      emit(body);
    }
    return kOk;
  }

  int cmd_limit(const std::string& f_text, const std::string& n_text, double tol) {
    const auto f = FunctionSpec::parse(f_text);
    std::vector<std::size_t> ns;
    for (long long v : parse_int_list(n_text)) {
      if (v < 2) throw ConfigError("--n entries must be at least 2");
      ns.push_back(static_cast<std::size_t>(v));
    }
    const auto rep = convergence_report(f, ns, tol, band_);
    if (format_ == "csv") {
      out_ << "n,riemann_mean,riemann_upper_mean,integral_mean,gap,slack\n";
      for (const auto& r : rep.rows) {
        out_ << r.n << ',' << fmt17(r.riemann_mean) << ',' << fmt17(r.riemann_upper_mean) << ','
             << fmt17(r.integral_mean) << ',' << fmt17(r.gap) << ',' << fmt17(r.slack) << "\n";
      }
    } else {
      json body = to_json(rep);
      body["function"] = f.to_string();
      emit(body);
    }
    return kOk;
  }

  int cmd_lemmas(std::uint64_t samples, std::uint64_t seed, std::vector<std::string> batteries) {
    if (batteries.empty()) {
      batteries = {"lemma301", "phi-above-one", "phi-below-one", "two-var", "cater2", "induction", "lower-half", "infima"};
    }
    json results = json::array();
    json infima = json::array();
    bool ok = true;
    std::ostringstream csv;
    csv << "name,checked,holds,equality,violated,contradictions,min_margin,passed\n";
    auto add = [&](const BatteryResult& b) {
      results.push_back(to_json(b));
      ok = ok && b.passed();
      csv << b.name << ',' << b.checked << ',' << b.holds << ',' << b.equality << ',' << b.violated << ','
          << b.contradictions << ',' << fmt17(b.min_margin) << ',' << (b.passed() ? "true" : "false") << "\n";
      err_ << "battery " << b.name << ": " << (b.passed() ? "pass" : "FAIL") << " (" << b.checked << " checks)\n";
    };
    for (const auto& name : batteries) {
      if (name == "lemma301") add(lemma301_battery(samples, seed, band_));
      if (name == "phi-above-one") add(phi_above_one_battery(samples, seed, band_));
      if (name == "phi-below-one") add(phi_below_one_battery(samples, seed, band_));
      if (name == "two-var") add(two_var_battery(samples, seed, band_));
      if (name == "cater2") add(cater2_battery(samples, seed, band_));
      if (name == "induction") add(induction_battery(samples, seed, rel_tol_given_ ? band_.rel_tol : 1e-13));
      if (name == "lower-half") add(lower_half_battery(samples, seed, band_));
      if (name == "infima") {
        for (unsigned m = 1; m <= 3; ++m) {
          for (Parity p : {Parity::even, Parity::odd}) {
            const auto s = infimum_series(m, p);
            infima.push_back(to_json(s));
            const bool good = s.above_limit && s.converging && s.final_distance <= 1e-6;
            ok = ok && good;
            csv << "infimum_m" << m << (p == Parity::even ? "_even" : "_odd") << ",4,,,,,"
                << fmt17(s.final_distance) << ',' << (good ? "true" : "false") << "\n";
          }
        }
      }
    }
    if (format_ == "csv") {
      out_ << csv.str();
    } else {
      emit({{"batteries", results}, {"infima", infima}, {"passed", ok}});
    }
    return ok ? kOk : kContradiction;
  }

  std::ostream& out_;
  std::ostream& err_;
  Band band_;
  std::string format_ = "json";
  std::string command_;
  json args_json_ = json::object();
  std::optional<std::uint64_t> seed_;
  bool rel_tol_given_ = false;
};

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Runner(out, err).run(std::move(args));
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(std::move(args));
}

}  // namespace caterlab::cli
