#include "lgtool/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lg/errors.hpp"
#include "lg/flow_path.hpp"
#include "lg/lemmas.hpp"
#include "lg/optimizer.hpp"
#include "lg/parallel.hpp"
#include "lg/rng.hpp"

namespace lgtool {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kTsvColumns =
    "TSV columns:\n"
    "  exponent  result, x, t, total, total_value, construction\n"
    "  verify    check, construction, status, detail\n"
    "  compare   k, m, d, quantity, exponent, value, n_power\n"
    "  optimize  construction, objective, n, r, rs, s, lambda, log_n_cost, predicted, predicted_value\n";

std::string decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fraction(const lg::Rational& q) { return lg::to_string(q); }

std::string exact_and_decimal(const lg::Rational& q) { return fraction(q) + "≈" + decimal(lg::to_double(q)); }

lg::PatternGraph builtin_pattern(const std::string& name) {
  std::smatch m;
  if (name == "triangle") return lg::patterns::triangle();
  if (name == "path3") return lg::patterns::path3();
  if (std::regex_match(name, m, std::regex(R"(k(\d+))"))) return lg::patterns::complete(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex(R"(cycle(\d+))"))) return lg::patterns::cycle(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex(R"(star(\d+))"))) return lg::patterns::star(std::stoi(m[1]));
  throw lg::InvalidPattern("no pattern file or builtin pattern named '" + name + "'");
}

lg::PatternGraph resolve_pattern(const std::string& spec) {
  if (fs::is_regular_file(spec)) return lg::load_pattern_file(spec);
  return builtin_pattern(spec);
}

lg::ConstructionPlan make_plan(const lg::PatternGraph& h, const std::string& construction) {
  if (construction == "g1") return lg::g1_stage_specs(h, h.k());
  if (construction == "g2") return lg::g2_plan(h);
  throw lg::Error("construction must be g1 or g2, got '" + construction + "'");
}

/// Accepts "1e6", "1000000", ... but only integral values.
double parse_n(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--n", "not a number: " + text);
  }
  if (used != text.size() || v < 1 || v != std::floor(v) || v > 1e15) {
    throw CLI::ValidationError("--n", "must be a positive integer: " + text);
  }
  return v;
}

struct Check {
  std::string name;
  std::string construction;
  bool pass = false;
  std::string detail;
  json data;
};

void emit_checks(const std::vector<Check>& checks, Format format, std::ostream& out) {
  if (format == Format::Json) {
    json arr = json::array();
    for (const auto& c : checks) {
      json j{{"check", c.name}, {"construction", c.construction}, {"status", c.pass ? "PASS" : "FAIL"},
             {"detail", c.detail}};
      if (!c.data.is_null()) j["data"] = c.data;
      arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
    return;
  }
  out << "check\tconstruction\tstatus\tdetail\n";
  for (const auto& c : checks) {
    out << c.name << '\t' << c.construction << '\t' << (c.pass ? "PASS" : "FAIL") << '\t' << c.detail << '\n';
  }
}

Check materialize_check(const lg::ConstructionPlan& plan, int n, int r, const lg::Rational& s,
                        std::optional<int> lambda, std::uint64_t seed, std::size_t samples) {
  const int k = plan.pattern.k();
  struct Tally {
    std::size_t paths = 0;
    std::size_t failed = 0;
    long degree_checks = 0;
    long length_checks = 0;
    std::string first_failure;
  };
  const std::size_t chunk = 64;
  const std::size_t chunks = (samples + chunk - 1) / chunk;
  auto parts = lg::run_chunks(chunks, [&](std::size_t c) {
    Tally t;
    for (std::size_t i = c * chunk; i < std::min(samples, (c + 1) * chunk); ++i) {
      lg::Rng rng = lg::make_stream(seed, i);
      auto witness = lg::sample_subset(rng, n, k);
      lg::shuffle(witness, rng);
      ++t.paths;
      try {
        auto path = lg::materialize_flow_path(plan, n, r, s, witness, rng(), lambda);
        auto audit = lg::audit_flow_path(plan, path);
        t.degree_checks += audit.degree_checks;
        t.length_checks += audit.length_checks;
        if (!audit.ok()) {
          ++t.failed;
          if (t.first_failure.empty()) t.first_failure = "path " + std::to_string(i) + ": " + audit.failures.front();
        }
      } catch (const lg::WitnessClash& e) {
        ++t.failed;
        if (t.first_failure.empty()) t.first_failure = "path " + std::to_string(i) + ": " + e.what();
      }
    }
    return t;
  });
  Tally total;
  for (const auto& p : parts) {
    total.paths += p.paths;
    total.failed += p.failed;
    total.degree_checks += p.degree_checks;
    total.length_checks += p.length_checks;
    if (total.first_failure.empty()) total.first_failure = p.first_failure;
  }
  Check c{"materialize", plan.construction, total.failed == 0, {}, {}};
  c.detail = std::to_string(total.paths) + " paths, " + std::to_string(total.failed) + " failures, " +
             std::to_string(total.degree_checks) + " block type checks, " + std::to_string(total.length_checks) +
             " stage length checks";
  if (!total.first_failure.empty()) c.detail += "; first: " + total.first_failure;
  c.data = {{"paths", total.paths},
            {"failures", total.failed},
            {"degree_checks", total.degree_checks},
            {"length_checks", total.length_checks}};
  return c;
}

std::vector<Check> vertex_ratio_checks(const lg::ConstructionPlan& plan, int n, int r, const lg::Rational& s,
                                       std::uint64_t seed, std::size_t samples) {
  std::vector<Check> out;
  for (const auto& est : lg::vertex_ratio_audit(plan, n, r, s, samples, seed, plan.u)) {
    Check c{"vertex-ratio-" + std::to_string(est.stage), plan.construction, est.within_3se(), {}, {}};
    std::ostringstream d;
    d << "monte_carlo=" << decimal(est.monte_carlo) << " exact=" << decimal(est.exact)
      << " se=" << decimal(est.standard_error) << " leading_order=(r/n)^" << est.stage - 1 << "="
      << decimal(est.leading_order) << " constant=" << decimal(est.exact / est.leading_order);
    c.detail = d.str();
    c.data = {{"stage", est.stage},
              {"samples", est.samples},
              {"monte_carlo", est.monte_carlo},
              {"exact", est.exact},
              {"standard_error", est.standard_error},
              {"leading_order", est.leading_order}};
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Check> probability_checks(int r, const lg::Rational& s, std::uint64_t seed, std::size_t samples) {
  std::vector<Check> out;
  const int rs = static_cast<int>(lg::Rational(lg::Rational(r) * s).get_num().get_si());
  {
    auto p = lg::uniform_edge_probability(r, s, lg::EdgeProbabilityMode::Plain);
    bool pass = p.exact_known && p.exact == s;
    std::string how = "double counting";
    if (r <= 4) {
      lg::Rational enumerated = lg::enumerate_plain_edge_probability(r, rs);
      pass = pass && enumerated == s;
      how = "exhaustive enumeration " + fraction(enumerated);
    }
    Check c{"edge-probability-plain", "-", pass, "p=" + fraction(p.exact) + " s=" + fraction(s) + " (" + how + ")", {}};
    c.data = {{"p", fraction(p.exact)}, {"s", fraction(s)}};
    out.push_back(std::move(c));
  }
  {
    auto p = lg::uniform_edge_probability(r, s, lg::EdgeProbabilityMode::Hidden, samples, seed);
    double bound = lg::to_double(s) / 4.0;
    bool pass = p.estimate + 3.0 * p.standard_error >= bound;
    Check c{"edge-probability-hidden", "-", pass, {}, {}};
    c.detail = "estimate=" + decimal(p.estimate) + " se=" + decimal(p.standard_error) +
               " samples=" + std::to_string(p.samples) + " bound s/4=" + decimal(bound);
    c.data = {{"estimate", p.estimate}, {"standard_error", p.standard_error}, {"samples", p.samples},
              {"bound", bound}};
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

int cmd_exponent(const RunConfig& config, std::ostream& out) {
  auto h = resolve_pattern(config.pattern);
  auto th3 = lg::theorem3_exponent(h);
  auto g1 = lg::balance_exponents(lg::g1_stage_specs(h, h.k()));
  auto g2 = lg::balance_exponents(lg::g2_plan(h));
  if (config.format == Format::Json) {
    json j{{"pattern", json::parse(h.to_json())},
           {"theorem1", g1.to_json()},
           {"theorem2", g2.to_json()},
           {"theorem3",
            {{"t1", fraction(th3.t1)},
             {"t2", fraction(th3.t2)},
             {"t", fraction(th3.t)},
             {"total", fraction(th3.total)},
             {"total_value", lg::to_double(th3.total)},
             {"construction", th3.construction},
             {"tie", th3.tie}}}};
    out << j.dump(2) << '\n';
    return kSuccess;
  }
  out << "theorem1\tx=" << fraction(g1.x) << "\tt=" << fraction(g1.t) << " total=" << exact_and_decimal(g1.total)
      << "\tg1\n";
  out << "theorem2\tx=" << fraction(g2.x) << "\tt=" << fraction(g2.t) << " total=" << exact_and_decimal(g2.total)
      << "\tg2\n";
  out << "theorem3\tt1=" << fraction(th3.t1) << " t2=" << fraction(th3.t2) << "\tt=" << fraction(th3.t)
      << " total=" << exact_and_decimal(th3.total) << '\t' << th3.construction << (th3.tie ? " (tie)" : "") << '\n';
  return kSuccess;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  auto h = resolve_pattern(config.pattern);
  const int r = config.r.value_or(4);
  const lg::Rational s = lg::parse_rational(config.s.value_or("1/2"));
  if (auto why = lg::feasibility_violation(r, s); !why.empty()) throw lg::InfeasibleParameters(why);

  std::vector<std::string> constructions;
  if (config.construction.empty()) {
    constructions = {"g1", "g2"};
  } else {
    constructions = {config.construction};
  }
  std::vector<lg::ConstructionPlan> plans;
  int n = 0;
  for (const auto& name : constructions) {
    plans.push_back(make_plan(h, name));
    n = std::max(n, lg::min_feasible_n(plans.back(), r));
  }
  if (config.n) n = static_cast<int>(*config.n);

  std::vector<Check> checks;
  for (const auto& plan : plans) {
    if (n < lg::min_feasible_n(plan, r)) {
      throw lg::InfeasibleParameters("n = " + std::to_string(n) + " is below the smallest feasible n = " +
                                     std::to_string(lg::min_feasible_n(plan, r)));
    }
    checks.push_back(materialize_check(plan, n, r, s, config.lambda, config.seed, config.samples));
    for (auto& c : vertex_ratio_checks(plan, n, r, s, config.seed, config.samples)) checks.push_back(std::move(c));
  }
  for (auto& c : probability_checks(r, s, config.seed, 10 * config.samples)) checks.push_back(std::move(c));

  if (config.format == Format::Tsv) {
    out << "# n=" << n << " r=" << r << " s=" << fraction(s) << " seed=" << config.seed
        << " samples=" << config.samples << '\n';
  }
  emit_checks(checks, config.format, out);
  bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  return ok ? kSuccess : kVerificationFailure;
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
  const double n = config.n.value_or(1e6);
  std::vector<std::string> sources;
  if (fs::is_directory(config.pattern)) {
    for (const auto& entry : fs::directory_iterator(config.pattern)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") sources.push_back(entry.path().string());
    }
    std::sort(sources.begin(), sources.end());
  } else {
    sources.push_back(config.pattern);
  }
  json all = json::array();
  bool header = true;
  for (const auto& source : sources) {
    std::optional<lg::Rational> walk_x;
    if (config.walk_x) walk_x = lg::parse_rational(*config.walk_x);
    auto comparison = lg::compare_with_walk(resolve_pattern(source), n, walk_x);
    if (config.format == Format::Json) {
      json j = comparison.to_json();
      j["source"] = fs::path(source).filename().string();
      all.push_back(j);
      continue;
    }
    std::string tsv = comparison.to_tsv();
    if (sources.size() > 1) {
      // prefix the source and print the header once
      std::istringstream lines(tsv);
      std::string line;
      bool first = true;
      while (std::getline(lines, line)) {
        if (first) {
          if (header) out << "source\t" << line << '\n';
          header = false;
          first = false;
          continue;
        }
        out << fs::path(source).filename().string() << '\t' << line << '\n';
      }
    } else {
      out << tsv;
    }
  }
  if (config.format == Format::Json) out << (sources.size() == 1 ? all[0] : all).dump(2) << '\n';
  return kSuccess;
}

int cmd_optimize(const RunConfig& config, std::ostream& out) {
  auto h = resolve_pattern(config.pattern);
  const double n = config.n.value_or(1e6);
  std::string construction = config.construction;
  if (construction.empty()) construction = lg::theorem3_exponent(h).construction;
  auto plan = make_plan(h, construction);
  auto objective = lg::parse_objective(config.objective);
  auto best = lg::numeric_optimize(plan, n, objective, config.level);
  if (config.format == Format::Json) {
    json j = best.to_json();
    j["construction"] = construction;
    j["objective"] = lg::to_string(objective);
    j["n"] = n;
    out << j.dump(2) << '\n';
    return kSuccess;
  }
  char n_text[32];
  std::snprintf(n_text, sizeof n_text, "%.0f", n);
  out << "construction\tobjective\tn\tr\trs\ts\tlambda\tlog_n_cost\tpredicted\tpredicted_value\n";
  out << construction << '\t' << lg::to_string(objective) << '\t' << n_text << '\t' << best.r << '\t' << best.rs
      << '\t' << decimal(best.s()) << '\t' << best.lambda << '\t' << decimal(best.log_cost) << '\t'
      << fraction(best.predicted) << '\t' << decimal(lg::to_double(best.predicted)) << '\n';
  return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learning-graph exponents, constructions and audits for subgraph finding", "lgtool"};
  app.footer(kTsvColumns);
  app.require_subcommand(1);
  RunConfig config;
  std::string n_text;
  std::string format = "tsv";

  auto common = [&](CLI::App* sub, bool sampling) {
    sub->add_option("pattern", config.pattern, "pattern JSON file or builtin (triangle, path3, k4, cycle5, star3)")
        ->required();
    sub->add_option("--n", n_text, "host size (accepts 1e6)");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"tsv", "json"}));
    sub->add_option("--construction", config.construction, "g1 or g2")->check(CLI::IsMember({"g1", "g2"}));
    if (sampling) {
      sub->add_option("--r", config.r, "class size r (even)");
      sub->add_option("--s", config.s, "density s, e.g. 1/2");
      sub->add_option("--lambda", config.lambda, "collision load per neighbouring class");
      sub->add_option("--seed", config.seed, "random seed")->check(CLI::PositiveNumber);
      sub->add_option("--samples", config.samples, "flow paths per construction")->check(CLI::PositiveNumber);
    }
  };
  auto* exponent = app.add_subcommand("exponent", "closed-form and balanced exponents");
  common(exponent, false);
  auto* verify = app.add_subcommand("verify", "materialize flow paths and run the audits");
  common(verify, true);
  auto* compare = app.add_subcommand("compare", "learning graph against the quantum walk");
  common(compare, false);
  compare->add_option("--walk-x", config.walk_x, "also report the walk at r = n^x, e.g. 3/5");
  auto* optimize = app.add_subcommand("optimize", "numeric parameter optimization at concrete n");
  common(optimize, false);
  optimize->add_option("--objective", config.objective, "max or sum")->check(CLI::IsMember({"max", "sum"}));
  optimize->add_option("--level", config.level, "grid refinement level")->check(CLI::Range(0, 6));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (!n_text.empty()) config.n = parse_n(n_text);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  config.format = format == "json" ? Format::Json : Format::Tsv;
  config.command = app.get_subcommands().front()->get_name();

  try {
    if (config.command == "exponent") return cmd_exponent(config, out);
    if (config.command == "verify") return cmd_verify(config, out);
    if (config.command == "compare") return cmd_compare(config, out);
    return cmd_optimize(config, out);
  } catch (const lg::InfeasibleParameters& e) {
    err << "infeasible parameters: " << e.what() << '\n';
    return kInfeasible;
  } catch (const lg::NoFeasiblePoint& e) {
    err << "infeasible parameters: " << e.what() << '\n';
    return kInfeasible;
  } catch (const lg::Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace lgtool
