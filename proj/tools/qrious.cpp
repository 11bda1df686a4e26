// qrious: command-line front end.
//
// Exit codes: 0 pass, 1 check failed, 2 usage or parse error, 3 internal error.
// Results go to stdout; diagnostics go to stderr.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qrious/qrious.hpp"

using nlohmann::json;
using namespace qrious;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3 };
enum class Format { json, csv, plain };

// JSON config: top-level keys set global options, an object under a
// subcommand name sets that subcommand's options.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> out;
    collect(j, "", {}, out);
    return out;
  }

 private:
  static std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  static void collect(const json& j, const std::string& name, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& out) {
    if (j.is_object()) {
      if (!name.empty()) parents.push_back(name);
      for (const auto& [k, v] : j.items()) collect(v, k, parents, out);
      return;
    }
    CLI::ConfigItem item;
    item.name = name;
    item.parents = std::move(parents);
    if (j.is_array())
      for (const auto& v : j) item.inputs.push_back(scalar(v));
    else
      item.inputs.push_back(scalar(j));
    out.push_back(std::move(item));
  }
};

struct Globals {
  std::string format = "json";
  std::string registry;
  unsigned workers = 1;
  bool verbose = false;
  Format fmt() const { return format == "csv" ? Format::csv : format == "plain" ? Format::plain : Format::json; }
};

std::string csv_join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    const auto& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char ch : c) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    } else {
      out += c;
    }
  }
  return out;
}

std::string witness_text(const json& w) { return w.is_string() ? w.get<std::string>() : w.dump(); }

std::vector<Check> parse_checks(const std::vector<std::string>& names) {
  std::vector<Check> out;
  for (const auto& n : names) out.push_back(parse_check(n));
  return out;
}

ParamRange parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const Entry v = std::stoll(s);
      return {v, v};
    }
    return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ParseError("malformed range '" + s + "' (expected N or LO:HI)");
  }
}

std::vector<FamilyInstance> load_registry(const Globals& g) {
  if (g.registry.empty()) return {chebyshev_instance()};
  spdlog::info("loading registry {}", g.registry);
  return load_sporadic_registry_file(g.registry);
}

// ---------------------------------------------------------------------------

int cmd_check(const Globals& g, const std::string& pair_text, const std::vector<std::string>& check_names,
              Entry degree_cap) {
  FamilyInstance inst{Family::sporadic, {}, parse_pair(pair_text)};
  inst.params.label = "cli";
  ScanConfig cfg;
  cfg.checks.clear();
  for (Check c : parse_checks(check_names)) cfg.checks.insert(c);
  cfg.degree_cap = degree_cap;
  const ScanRecord r = evaluate_instance(inst, cfg);
  const bool pass = !r.skipped && r.all_pass();

  switch (g.fmt()) {
    case Format::json: {
      json j = to_json(r);
      j.erase("key");
      j.erase("family");
      j.erase("params");
      j["pass"] = pass;
      std::cout << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      std::cout << "check,holds,witness\n";
      for (const auto& [c, v] : r.verdicts) {
        const auto w = r.witnesses.find(c);
        std::cout << csv_join({std::string(check_name(c)), v ? "true" : "false",
                               w == r.witnesses.end() ? "" : witness_text(w->second)})
                  << '\n';
      }
      if (r.error) std::cout << csv_join({"error", "false", *r.error}) << '\n';
      break;
    case Format::plain:
      std::cout << to_string(r.instance.pair) << "  degree " << r.degree << '\n';
      if (r.skipped) std::cout << "  skipped: degree above cap\n";
      for (const auto& [c, v] : r.verdicts) {
        std::cout << "  " << check_name(c) << ": " << (v ? "pass" : "FAIL");
        if (auto w = r.witnesses.find(c); w != r.witnesses.end()) std::cout << " at " << witness_text(w->second);
        std::cout << '\n';
      }
      if (r.error) std::cout << "  error: " << *r.error << '\n';
      std::cout << (pass ? "pass" : "fail") << '\n';
      break;
  }
  return pass ? kPass : kFail;
}

int cmd_build(const Globals& g, const std::string& pair_text, const std::string& method, const std::string& out_path) {
  const FactorialPair pair = parse_pair(pair_text);
  const BuildMethod m = method == "ratio" ? BuildMethod::ratio : BuildMethod::cyclotomic;
  Poly d;
  try {
    d = build(pair, m);
  } catch (const NonExactDivision& e) {
    spdlog::error("{}", e.what());
    std::cout << json{{"pair", to_string(pair)}, {"method", method}, {"error", "NonExactDivision"}, {"message", e.what()}}.dump(2)
              << '\n';
    return kFail;
  } catch (const NegativeExponent& e) {
    spdlog::error("{}", e.what());
    std::cout << json{{"pair", to_string(pair)}, {"method", method}, {"error", "NegativeExponent"}, {"message", e.what()}}.dump(2)
              << '\n';
    return kFail;
  }

  std::ostringstream body;
  switch (g.fmt()) {
    case Format::json: body << to_json(d).dump() << '\n'; break;
    case Format::csv:
      body << "exponent,coefficient\n";
      for (std::size_t i = 0; i < d.size(); ++i) body << i << ',' << d[i].get_str() << '\n';
      break;
    case Format::plain:
      for (std::size_t i = 0; i < d.size(); ++i) body << (i ? " " : "") << d[i].get_str();
      body << '\n';
      break;
  }
  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << body.str())) throw IoError("cannot write '" + out_path + "'");
    spdlog::info("wrote {} coefficients to {}", d.size(), out_path);
  }
  return kPass;
}

struct ScanArgs {
  std::string family = "b";
  std::string m = "1:12";
  std::string n = "0:12";
  std::string lambda;
  std::vector<std::string> checks{"landau", "positivity", "unimodal", "parity_unimodal", "one_plus_q_unimodal"};
  Entry degree_cap = 10000;
  std::string out;
  bool emit_coeffs = false;
  bool timing = false;
  bool coprime = false;
};

const char* kCsvScanHeader = "key,family,pair,degree,skipped,check,holds,witness,q1_value,error";

void print_scan_csv(const ScanRecord& r, std::ostream& os) {
  const std::string key = instance_key(r.instance), fam(family_name(r.instance.family)), pair = to_string(r.instance.pair);
  auto row = [&](const std::string& check, const std::string& holds, const std::string& witness) {
    os << csv_join({key, fam, pair, std::to_string(r.degree), r.skipped ? "true" : "false", check, holds, witness,
                    r.q1_value, r.error.value_or("")})
       << '\n';
  };
  if (r.verdicts.empty()) row("", "", "");
  for (const auto& [c, v] : r.verdicts) {
    const auto w = r.witnesses.find(c);
    row(std::string(check_name(c)), v ? "true" : "false", w == r.witnesses.end() ? "" : witness_text(w->second));
  }
}

void print_scan_plain(const ScanRecord& r, std::ostream& os) {
  os << instance_key(r.instance) << "  " << to_string(r.instance.pair) << "  deg " << r.degree;
  if (r.skipped) {
    os << "  skipped\n";
    return;
  }
  for (const auto& [c, v] : r.verdicts) {
    if (v) continue;
    os << "  " << check_name(c) << "=FAIL";
    if (auto w = r.witnesses.find(c); w != r.witnesses.end()) os << "@" << witness_text(w->second);
  }
  if (r.error) os << "  error: " << *r.error;
  if (r.all_pass()) os << "  ok";
  os << '\n';
}

int cmd_scan(const Globals& g, const ScanArgs& a) {
  ScanConfig cfg;
  cfg.family = parse_family(a.family);
  cfg.m = parse_range(a.m);
  cfg.n = parse_range(a.n);
  if (!a.lambda.empty()) cfg.lambda = parse_partition(a.lambda);
  if (cfg.family == Family::sporadic) cfg.registry = load_registry(g);
  cfg.checks.clear();
  for (Check c : parse_checks(a.checks)) cfg.checks.insert(c);
  cfg.degree_cap = a.degree_cap;
  cfg.worker_count = g.workers;
  cfg.output_path = a.out;
  cfg.emit_coeffs = a.emit_coeffs;
  cfg.record_timing = a.timing;
  cfg.coprime_only = a.coprime;
  spdlog::info("scan family={} m={} n={} workers={}", a.family, a.m, a.n, g.workers);

  if (!a.out.empty()) {
    const ScanSummary s = scan_to_file(cfg, [](const ScanRecord& r) {
      spdlog::debug("{} {}", instance_key(r.instance), r.all_pass() ? "ok" : "fail");
    });
    const json j{{"output", a.out}, {"total", s.total},     {"resumed", s.resumed},
                 {"written", s.written}, {"skipped", s.skipped}, {"failed", s.failed}};
    if (g.fmt() == Format::json)
      std::cout << j.dump(2) << '\n';
    else if (g.fmt() == Format::csv)
      std::cout << "output,total,resumed,written,skipped,failed\n"
                << csv_join({a.out, std::to_string(s.total), std::to_string(s.resumed), std::to_string(s.written),
                             std::to_string(s.skipped), std::to_string(s.failed)})
                << '\n';
    else
      std::cout << "wrote " << s.written << " of " << s.total << " records to " << a.out << " (" << s.resumed
                << " resumed, " << s.skipped << " skipped, " << s.failed << " failed)\n";
    return s.failed ? kFail : kPass;
  }

  std::size_t failed = 0;
  if (g.fmt() == Format::csv) std::cout << kCsvScanHeader << '\n';
  scan_family(cfg, [&](const ScanRecord& r) {
    if (!r.all_pass()) ++failed;
    switch (g.fmt()) {
      case Format::json: std::cout << to_json(r).dump() << '\n'; break;
      case Format::csv: print_scan_csv(r, std::cout); break;
      case Format::plain: print_scan_plain(r, std::cout); break;
    }
  });
  std::cout.flush();
  return failed ? kFail : kPass;
}

int cmd_threshold(const Globals& g, const std::string& pair_text, const std::string& property, Entry n_max) {
  const FactorialPair pair = parse_pair(pair_text);
  const auto prop = parse_threshold_property(property);
  const auto t = find_threshold(pair, prop, n_max);
  switch (g.fmt()) {
    case Format::json:
      std::cout << json{{"pair", to_string(pair)}, {"property", property}, {"n_max", n_max},
                        {"threshold", t ? json(*t) : json(nullptr)}}.dump(2)
                << '\n';
      break;
    case Format::csv:
      std::cout << "pair,property,n_max,threshold\n"
                << csv_join({to_string(pair), property, std::to_string(n_max), t ? std::to_string(*t) : ""}) << '\n';
      break;
    case Format::plain:
      if (t)
        std::cout << *t << '\n';
      else
        std::cout << "none: n = " << n_max << " already fails\n";
      break;
  }
  return t ? kPass : kFail;
}

int cmd_partitions(const Globals& g, Entry max_size, Entry grid) {
  const auto parts = enumerate_admissible_partitions(max_size, grid);
  switch (g.fmt()) {
    case Format::json: {
      json list = json::array();
      for (const auto& l : parts) list.push_back(l.parts());
      std::cout << json{{"max_size", max_size}, {"grid", grid}, {"count", parts.size()}, {"partitions", list}}.dump(2)
                << '\n';
      break;
    }
    case Format::csv:
      std::cout << "size,partition\n";
      for (const auto& l : parts) std::cout << csv_join({std::to_string(l.size()), to_string(l)}) << '\n';
      break;
    case Format::plain:
      for (const auto& l : parts) std::cout << to_string(l) << '\n';
      std::cout << parts.size() << " partitions\n";
      break;
  }
  return kPass;
}

int cmd_dixon(const Globals& g, Entry l_max, Entry m_max, Entry n_max) {
  std::size_t checked = 0;
  json failures = json::array();
  for (Entry l = 0; l <= l_max; ++l)
    for (Entry m = 0; m <= m_max; ++m)
      for (Entry n = 0; n <= n_max; ++n) {
        ++checked;
        if (!check_qdixon(l, m, n)) {
          spdlog::warn("q-Dixon mismatch at ({},{},{})", l, m, n);
          failures.push_back({l, m, n});
        }
      }
  const bool pass = failures.empty();
  switch (g.fmt()) {
    case Format::json:
      std::cout << json{{"l_max", l_max}, {"m_max", m_max}, {"n_max", n_max}, {"checked", checked},
                        {"failures", failures}, {"pass", pass}}.dump(2)
                << '\n';
      break;
    case Format::csv:
      std::cout << "l,m,n\n";
      for (const auto& f : failures) std::cout << f[0] << ',' << f[1] << ',' << f[2] << '\n';
      break;
    case Format::plain:
      std::cout << checked << " triples, " << failures.size() << " failures\n";
      break;
  }
  return pass ? kPass : kFail;
}

int cmd_families(const Globals& g) {
  struct Row {
    Family f;
    const char* params;
    const char* domain;
  };
  const Row rows[] = {
      {Family::qbinom, "m,n", "m,n >= 0"},
      {Family::b, "m,n", "m >= n >= 0"},
      {Family::c, "m,n", "m,n >= 0"},
      {Family::sound, "m,n", "m >= 5n, n >= 1"},
      {Family::b_lambda, "lambda,m,n", "m >= |lambda| n, n >= 1"},
      {Family::c_lambda, "lambda,m,n", "m,n >= 1"},
      {Family::g2, "m,n", "m,n >= 1"},
      {Family::f4, "m,n", "m,n >= 1"},
      {Family::sporadic, "registry", "registry entries"},
  };
  switch (g.fmt()) {
    case Format::json: {
      json out = json::array();
      for (const auto& r : rows)
        out.push_back({{"name", std::string(family_name(r.f))}, {"params", r.params}, {"domain", r.domain}});
      std::cout << out.dump(2) << '\n';
      break;
    }
    case Format::csv:
      std::cout << "name,params,domain\n";
      for (const auto& r : rows) std::cout << csv_join({std::string(family_name(r.f)), r.params, r.domain}) << '\n';
      break;
    case Format::plain:
      for (const auto& r : rows) std::cout << family_name(r.f) << "\t" << r.params << "\t" << r.domain << '\n';
      break;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("qrious");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);

  CLI::App app{"Exact q-factorial ratio polynomials: construction, Landau's criterion, shape checks and scans"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; command-line flags take precedence");

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}))->capture_default_str();
  app.add_option("--registry", g.registry, "Sporadic registry JSON file")->envname("QRIOUS_REGISTRY");
  app.add_option("--workers", g.workers, "Scan worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app.add_flag("-v,--verbose", g.verbose, "Log progress to stderr");

  int rc = kPass;

  std::string pair_text;
  std::vector<std::string> checks{"landau"};
  Entry check_cap = std::numeric_limits<Entry>::max();
  auto* check = app.add_subcommand("check", "Run Landau and shape checks on one pair");
  check->add_option("pair", pair_text, "Pair \"a1,a2,.../b1,b2,...\"")->required();
  check->add_option("--checks", checks, "Checks to run")->delimiter(',')->capture_default_str();
  check->add_option("--degree-cap", check_cap, "Skip building above this degree");

  std::string method = "cyclotomic", out_path;
  auto* buildc = app.add_subcommand("build", "Print the coefficients of D(a,b;q)");
  buildc->add_option("pair", pair_text, "Pair")->required();
  buildc->add_option("--method", method, "Builder")->check(CLI::IsMember({"cyclotomic", "ratio"}))->capture_default_str();
  buildc->add_option("--out", out_path, "Write coefficients to this file");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Sweep a family over a parameter box");
  scan->add_option("--family", sa.family, "Family name (see 'families list')")->capture_default_str();
  scan->add_option("--m", sa.m, "m range, N or LO:HI")->capture_default_str();
  scan->add_option("--n", sa.n, "n range, N or LO:HI")->capture_default_str();
  scan->add_option("--lambda", sa.lambda, "Partition for b_lambda/c_lambda, e.g. (2,1)");
  scan->add_option("--checks", sa.checks, "Checks to run")->delimiter(',')->capture_default_str();
  scan->add_option("--degree-cap", sa.degree_cap, "Skip instances above this degree")->capture_default_str();
  scan->add_option("--out", sa.out, "JSONL output file; resumes if it exists");
  scan->add_flag("--emit-coeffs", sa.emit_coeffs, "Include coefficient arrays");
  scan->add_flag("--timing", sa.timing, "Record elapsed_ms per instance");
  scan->add_flag("--coprime", sa.coprime, "Only gcd(m,n) = 1");

  std::string property = "unimodal";
  Entry n_max = 10;
  auto* thr = app.add_subcommand("threshold", "Least N with the property for all dilations N..n_max");
  thr->add_option("pair", pair_text, "Pair")->required();
  thr->add_option("--property", property, "positivity, unimodal or one_plus_q_unimodal")->capture_default_str();
  thr->add_option("--nmax", n_max, "Largest dilation")->capture_default_str();

  Entry max_size = 11, grid = 12;
  auto* parts = app.add_subcommand("partitions", "Partitions passing the B_lambda/C_lambda grid filter");
  parts->add_option("--max-size", max_size, "Largest |lambda|")->capture_default_str();
  parts->add_option("--grid", grid, "Grid bound for m and n")->capture_default_str();

  Entry dmax = -1, l_max = 3, m_max = 3, d_n_max = 3;
  auto* dixon = app.add_subcommand("dixon", "Verify the q-Dixon summation on a box");
  dixon->add_option("--max", dmax, "Shorthand for equal l, m, n bounds");
  dixon->add_option("--l-max", l_max)->capture_default_str();
  dixon->add_option("--m-max", m_max)->capture_default_str();
  dixon->add_option("--n-max", d_n_max)->capture_default_str();

  auto* families = app.add_subcommand("families", "Family information");
  families->require_subcommand(1);
  auto* flist = families->add_subcommand("list", "List families and their parameter domains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  if (g.verbose) spdlog::set_level(spdlog::level::debug);

  try {
    if (*check) rc = cmd_check(g, pair_text, checks, check_cap);
    else if (*buildc) rc = cmd_build(g, pair_text, method, out_path);
    else if (*scan) rc = cmd_scan(g, sa);
    else if (*thr) rc = cmd_threshold(g, pair_text, property, n_max);
    else if (*parts) rc = cmd_partitions(g, max_size, grid);
    else if (*dixon) {
      if (dmax >= 0) l_max = m_max = d_n_max = dmax;
      rc = cmd_dixon(g, l_max, m_max, d_n_max);
    } else if (*flist) rc = cmd_families(g);
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const UnknownFamily& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const DomainViolation& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const SchemaError& e) {
    spdlog::error("registry: {}", e.what());
    return kUsage;
  } catch (const LandauRejection& e) {
    spdlog::error("registry: {}", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    spdlog::critical("internal error: {}", e.what());
    return kInternal;
  }
  return rc;
}
