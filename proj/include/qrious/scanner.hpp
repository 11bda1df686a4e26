#pragma once

// Batch verification: sweep a family over a parameter box, run the requested
// checks on every instance, and emit one JSON record per instance in
// lexicographic parameter order, whatever the number of workers.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "qrious/dfact.hpp"
#include "qrious/families.hpp"
#include "qrious/landau.hpp"
#include "qrious/polycore.hpp"
#include "qrious/shape.hpp"

namespace qrious {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Check { landau, positivity, unimodal, parity_unimodal, one_plus_q_unimodal, oracle_equality };

inline constexpr std::string_view check_name(Check c) {
  switch (c) {
    case Check::landau: return "landau";
    case Check::positivity: return "positivity";
    case Check::unimodal: return "unimodal";
    case Check::parity_unimodal: return "parity_unimodal";
    case Check::one_plus_q_unimodal: return "one_plus_q_unimodal";
    case Check::oracle_equality: return "oracle_equality";
  }
  return "?";
}

inline constexpr Check kAllChecks[] = {Check::landau,          Check::positivity,          Check::unimodal,
                                       Check::parity_unimodal, Check::one_plus_q_unimodal, Check::oracle_equality};

inline Check parse_check(std::string_view s) {
  for (Check c : kAllChecks)
    if (check_name(c) == s) return c;
  throw ParseError("unknown check '" + std::string(s) + "'");
}

struct ParamRange {
  Entry lo = 1;
  Entry hi = 1;
};

struct ScanConfig {
  Family family = Family::qbinom;
  ParamRange m;
  ParamRange n;
  std::optional<Partition> lambda;          // b_lambda / c_lambda
  std::vector<FamilyInstance> registry;     // sporadic
  std::set<Check> checks{Check::landau};
  Entry degree_cap = 10000;
  unsigned worker_count = 1;
  std::string output_path;
  bool coprime_only = false;
  bool emit_coeffs = false;
  bool record_timing = false;  // elapsed_ms varies run to run, so it is opt-in
};

struct ScanRecord {
  FamilyInstance instance;
  Entry degree = 0;
  bool skipped = false;
  std::map<Check, bool> verdicts;
  std::map<Check, nlohmann::json> witnesses;
  std::string q1_value;
  std::size_t max_coeff_bits = 0;
  std::optional<std::int64_t> elapsed_ms;
  std::optional<Poly> coeffs;
  std::optional<std::string> error;

  bool all_pass() const {
    return !error && std::all_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second; });
  }
};

/// Unique, order-free identifier of an instance within a scan.
inline std::string instance_key(const FamilyInstance& inst) {
  std::string k(family_name(inst.family));
  if (inst.params.lambda) k += to_string(*inst.params.lambda);
  if (inst.params.registry_id) k += ":id=" + std::to_string(*inst.params.registry_id);
  if (inst.params.m) k += ":m=" + std::to_string(*inst.params.m);
  if (inst.params.n) k += ":n=" + std::to_string(*inst.params.n);
  return k;
}

inline nlohmann::json to_json(const ScanRecord& r) {
  nlohmann::json j;
  j["key"] = instance_key(r.instance);
  j["family"] = std::string(family_name(r.instance.family));
  nlohmann::json params = nlohmann::json::object();
  if (r.instance.params.m) params["m"] = *r.instance.params.m;
  if (r.instance.params.n) params["n"] = *r.instance.params.n;
  if (r.instance.params.lambda) params["lambda"] = r.instance.params.lambda->parts();
  if (r.instance.params.registry_id) params["id"] = *r.instance.params.registry_id;
  if (!r.instance.params.label.empty()) params["label"] = r.instance.params.label;
  j["params"] = params;
  j["pair"] = to_string(r.instance.pair);
  j["degree"] = r.degree;
  j["skipped"] = r.skipped;
  nlohmann::json verdicts = nlohmann::json::object(), witnesses = nlohmann::json::object();
  for (const auto& [c, v] : r.verdicts) verdicts[std::string(check_name(c))] = v;
  for (const auto& [c, w] : r.witnesses) witnesses[std::string(check_name(c))] = w;
  j["verdicts"] = verdicts;
  j["witnesses"] = witnesses;
  if (!r.q1_value.empty()) {
    j["q1_value"] = r.q1_value;
    j["max_coeff_bits"] = r.max_coeff_bits;
  }
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  if (r.coeffs) j["coeffs"] = to_json(*r.coeffs);
  if (r.error) j["error"] = *r.error;
  return j;
}

inline ScanRecord scan_record_from_json(const nlohmann::json& j) {
  ScanRecord r;
  r.instance.family = parse_family(j.at("family").get<std::string>());
  const auto& params = j.at("params");
  if (params.contains("m")) r.instance.params.m = params["m"].get<Entry>();
  if (params.contains("n")) r.instance.params.n = params["n"].get<Entry>();
  if (params.contains("lambda")) r.instance.params.lambda = Partition(params["lambda"].get<std::vector<Entry>>());
  if (params.contains("id")) r.instance.params.registry_id = params["id"].get<Entry>();
  if (params.contains("label")) r.instance.params.label = params["label"].get<std::string>();
  r.instance.pair = parse_pair(j.at("pair").get<std::string>());
  r.degree = j.at("degree").get<Entry>();
  r.skipped = j.at("skipped").get<bool>();
  for (const auto& [name, v] : j.at("verdicts").items()) r.verdicts[parse_check(name)] = v.get<bool>();
  for (const auto& [name, w] : j.at("witnesses").items()) r.witnesses[parse_check(name)] = w;
  if (j.contains("q1_value")) r.q1_value = j["q1_value"].get<std::string>();
  if (j.contains("max_coeff_bits")) r.max_coeff_bits = j["max_coeff_bits"].get<std::size_t>();
  if (j.contains("elapsed_ms")) r.elapsed_ms = j["elapsed_ms"].get<std::int64_t>();
  if (j.contains("coeffs")) r.coeffs = poly_from_json(j["coeffs"]);
  if (j.contains("error")) r.error = j["error"].get<std::string>();
  return r;
}

/// In-domain instances of the configured box in lexicographic (m, n) order;
/// registry entries are ordered by id.
inline std::vector<FamilyInstance> enumerate_instances(const ScanConfig& cfg) {
  std::vector<FamilyInstance> out;
  if (cfg.family == Family::sporadic) {
    out = cfg.registry;
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
      return x.params.registry_id.value_or(0) < y.params.registry_id.value_or(0);
    });
    return out;
  }
  if ((cfg.family == Family::b_lambda || cfg.family == Family::c_lambda) && !cfg.lambda)
    throw DomainViolation(std::string(family_name(cfg.family)) + " scan needs a partition");
  for (Entry m = cfg.m.lo; m <= cfg.m.hi; ++m)
    for (Entry n = cfg.n.lo; n <= cfg.n.hi; ++n) {
      if (!in_domain(cfg.family, m, n, cfg.lambda)) continue;
      if (cfg.coprime_only && std::gcd(m, n) != 1) continue;
      out.push_back(instantiate(cfg.family, m, n, cfg.lambda));
    }
  return out;
}

/// Runs the configured checks on one instance.
inline ScanRecord evaluate_instance(const FamilyInstance& inst, const ScanConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanRecord r;
  r.instance = inst;
  r.degree = degree(inst.pair);
  if (r.degree > cfg.degree_cap) {
    r.skipped = true;
    return r;
  }
  auto has = [&cfg](Check c) { return cfg.checks.count(c) > 0; };
  auto put = [&r](Check c, const Verdict& v) {
    r.verdicts[c] = v.holds;
    if (!v.holds) r.witnesses[c] = *v.first_violation;
  };
  if (has(Check::landau)) {
    const auto lv = check_landau(inst.pair);
    r.verdicts[Check::landau] = lv.holds;
    if (!lv.holds) {
      // D is not a polynomial, so there is nothing to build or inspect.
      r.witnesses[Check::landau] = to_string(*lv.witness);
      return r;
    }
  }
  try {
    const Poly d = build_cyclotomic(inst.pair);
    if (has(Check::positivity)) put(Check::positivity, check_positive(d));
    if (has(Check::unimodal)) put(Check::unimodal, check_unimodal(d));
    if (has(Check::parity_unimodal)) put(Check::parity_unimodal, check_parity_unimodal(d));
    if (has(Check::one_plus_q_unimodal)) put(Check::one_plus_q_unimodal, check_one_plus_q_unimodal(d));
    if (has(Check::oracle_equality)) {
      const Poly ratio = build_ratio(inst.pair);
      r.verdicts[Check::oracle_equality] = ratio == d;
      if (!(ratio == d)) {
        std::size_t i = 0;
        while (ratio[i] == d[i]) ++i;
        r.witnesses[Check::oracle_equality] = i;
      }
    }
    r.q1_value = d.at_one().get_str();
    r.max_coeff_bits = max_coeff_bits(d);
    if (cfg.emit_coeffs) r.coeffs = d;
  } catch (const NegativeExponent& e) {
    r.error = e.what();
  } catch (const NonExactDivision& e) {
    r.error = e.what();
  }
  if (cfg.record_timing)
    r.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Evaluates `instances` on cfg.worker_count threads and hands the records to
/// `sink` strictly in input order. Workers run at most `window` items ahead of
/// the sink. The first exception thrown by an evaluation is rethrown here.
inline void run_ordered(const std::vector<FamilyInstance>& instances, const ScanConfig& cfg,
                        const std::function<void(const ScanRecord&)>& sink, std::size_t window = 256) {
  const std::size_t total = instances.size();
  const unsigned workers = std::max(1u, cfg.worker_count);
  if (workers == 1 || total <= 1) {
    for (const auto& inst : instances) sink(evaluate_instance(inst, cfg));
    return;
  }

  struct Slot {
    std::optional<ScanRecord> record;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(total);
  std::mutex mu;
  std::condition_variable ready, room;
  std::size_t emitted = 0;
  std::atomic<std::size_t> next{0};
  bool stop = false;

  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      {
        std::unique_lock lock(mu);
        room.wait(lock, [&] { return stop || i < emitted + window; });
        if (stop) return;
      }
      Slot s;
      try {
        s.record = evaluate_instance(instances[i], cfg);
      } catch (...) {
        s.error = std::current_exception();
      }
      {
        std::lock_guard lock(mu);
        slots[i] = std::move(s);
      }
      ready.notify_all();
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

  auto halt = [&] {
    {
      std::lock_guard lock(mu);
      stop = true;
    }
    room.notify_all();
  };
  try {
    for (std::size_t i = 0; i < total; ++i) {
      Slot s;
      {
        std::unique_lock lock(mu);
        ready.wait(lock, [&] { return slots[i].record.has_value() || slots[i].error != nullptr; });
        s = std::move(slots[i]);
        slots[i] = Slot{};
      }
      if (s.error) std::rethrow_exception(s.error);
      sink(*s.record);
      {
        std::lock_guard lock(mu);
        emitted = i + 1;
      }
      room.notify_all();
    }
  } catch (...) {
    halt();
    throw;
  }
}

/// Streams the scan's records to `sink` in lexicographic parameter order.
inline void scan_family(const ScanConfig& cfg, const std::function<void(const ScanRecord&)>& sink) {
  run_ordered(enumerate_instances(cfg), cfg, sink);
}

inline std::vector<ScanRecord> scan_family(const ScanConfig& cfg) {
  std::vector<ScanRecord> out;
  scan_family(cfg, [&out](const ScanRecord& r) { out.push_back(r); });
  return out;
}

struct ScanSummary {
  std::size_t total = 0;     // in-domain instances
  std::size_t resumed = 0;   // already present in the output file
  std::size_t written = 0;
  std::size_t skipped = 0;   // over the degree cap
  std::size_t failed = 0;    // some requested check false, or an error
};

namespace detail {

// Reads completed keys from an existing JSONL file, cutting off a partial
// trailing line so appends start on a clean boundary.
inline std::unordered_set<std::string> completed_keys(const std::string& path) {
  std::unordered_set<std::string> keys;
  if (!std::filesystem::exists(path)) return keys;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  std::size_t good_end = 0, pos = 0;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) break;
    try {
      keys.insert(nlohmann::json::parse(content.substr(pos, nl - pos)).at("key").get<std::string>());
    } catch (const std::exception&) {
      break;
    }
    good_end = nl + 1;
    pos = nl + 1;
  }
  if (good_end != content.size()) std::filesystem::resize_file(path, good_end);
  return keys;
}

}  // namespace detail

/// Runs the scan into cfg.output_path as JSON Lines, resuming from any
/// records already present there. `observer` sees every new record.
inline ScanSummary scan_to_file(const ScanConfig& cfg, const std::function<void(const ScanRecord&)>& observer = {}) {
  if (cfg.output_path.empty()) throw IoError("scan_to_file: no output path");
  auto instances = enumerate_instances(cfg);
  ScanSummary summary;
  summary.total = instances.size();
  const auto done = detail::completed_keys(cfg.output_path);
  std::erase_if(instances, [&](const FamilyInstance& i) { return done.count(instance_key(i)) > 0; });
  summary.resumed = summary.total - instances.size();

  std::ofstream out(cfg.output_path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot open '" + cfg.output_path + "' for writing");
  run_ordered(instances, cfg, [&](const ScanRecord& r) {
    out << to_json(r).dump() << '\n';
    out.flush();
    if (!out) throw IoError("write to '" + cfg.output_path + "' failed");
    ++summary.written;
    if (r.skipped) ++summary.skipped;
    if (!r.all_pass()) ++summary.failed;
    if (observer) observer(r);
  });
  return summary;
}

// ---------------------------------------------------------------------------
// Thresholds for dilations

enum class ThresholdProperty { positivity, unimodal, one_plus_q_unimodal };

inline ThresholdProperty parse_threshold_property(std::string_view s) {
  if (s == "positivity") return ThresholdProperty::positivity;
  if (s == "unimodal") return ThresholdProperty::unimodal;
  if (s == "one_plus_q_unimodal") return ThresholdProperty::one_plus_q_unimodal;
  throw ParseError("unknown threshold property '" + std::string(s) + "'");
}

inline bool has_property(const Poly& d, ThresholdProperty prop) {
  switch (prop) {
    case ThresholdProperty::positivity: return check_positive(d).holds;
    case ThresholdProperty::unimodal: return check_unimodal(d).holds;
    case ThresholdProperty::one_plus_q_unimodal: return check_one_plus_q_unimodal(d).holds;
  }
  return false;
}

/// Least N <= n_max such that D_n(p) has the property for every n in
/// [N, n_max]; nullopt when D_{n_max} already fails.
inline std::optional<Entry> find_threshold(const FactorialPair& p, ThresholdProperty prop, Entry n_max) {
  if (n_max < 1) throw DomainViolation("find_threshold: n_max must be >= 1");
  if (!check_landau(p).holds) throw DomainViolation("find_threshold: pair violates Landau's criterion");
  std::optional<Entry> best;
  for (Entry n = n_max; n >= 1; --n) {
    if (!has_property(build_cyclotomic(scale(p, n)), prop)) break;
    best = n;
  }
  return best;
}

}  // namespace qrious
