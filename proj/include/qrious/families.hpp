#pragma once

// Named generators of factorial pairs: the q-binomial, B and C families, the
// height-two Sound family, the B_lambda / C_lambda collections, the G2 and F4
// root-system pairs, and sporadic pairs loaded from a JSON registry.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qrious/landau.hpp"

namespace qrious {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LandauRejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lambda_1 >= ... >= lambda_r >= 1
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<Entry> parts) : parts_(std::move(parts)) {
    for (Entry x : parts_)
      if (x < 1) throw DomainViolation("partition parts must be positive");
    if (!std::is_sorted(parts_.begin(), parts_.end(), std::greater<>()))
      throw DomainViolation("partition parts must be non-increasing");
  }
  Partition(std::initializer_list<Entry> parts) : Partition(std::vector<Entry>(parts)) {}

  const std::vector<Entry>& parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  Entry size() const noexcept {
    Entry s = 0;
    for (Entry x : parts_) s += x;
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<Entry> parts_;
};

inline std::string to_string(const Partition& l) {
  std::string out = "(";
  for (std::size_t i = 0; i < l.parts().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(l.parts()[i]);
  }
  return out + ")";
}

/// Parses "3,2,1" or "(3,2,1)".
inline Partition parse_partition(std::string_view text) {
  std::string s(text);
  std::erase_if(s, [](char c) { return c == '(' || c == ')' || c == ' '; });
  std::vector<Entry> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("malformed partition '" + std::string(text) + "'");
    }
  }
  if (parts.empty()) throw ParseError("empty partition");
  try {
    return Partition(std::move(parts));
  } catch (const DomainViolation& e) {
    throw ParseError(std::string("malformed partition: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Family generators

/// ((m+n), (m,n)): the Gaussian binomial.
inline FactorialPair qbinom_pair(Entry m, Entry n) {
  if (m < 0 || n < 0) throw DomainViolation("qbinom: m, n must be nonnegative");
  return FactorialPair::dropping_zeros({m + n}, {m, n});
}

/// ((2m,n), (m,m-n,2n)) for m >= n >= 0.
inline FactorialPair b_pair(Entry m, Entry n) {
  if (n < 0 || m < n) throw DomainViolation("B(m,n): requires m >= n >= 0");
  return FactorialPair::dropping_zeros({2 * m, n}, {m, m - n, 2 * n});
}

/// ((2m,2n), (m,n,m+n)): the q-super Catalan numbers.
inline FactorialPair c_pair(Entry m, Entry n) {
  if (m < 0 || n < 0) throw DomainViolation("C(m,n): m, n must be nonnegative");
  return FactorialPair::dropping_zeros({2 * m, 2 * n}, {m, n, m + n});
}

/// ((6m,n), (2m,3m,m-5n,6n)) for m >= 5n.
inline FactorialPair sound_pair(Entry m, Entry n) {
  if (m < 1 || n < 1 || m < 5 * n) throw DomainViolation("Sound(m,n): requires m >= 5n >= 5");
  return FactorialPair::dropping_zeros({6 * m, n}, {2 * m, 3 * m, m - 5 * n, 6 * n});
}

/// (((|l|+1)m, n), (l_1 m, ..., l_r m, m-|l|n, (|l|+1)n)) for m >= |l| n.
inline FactorialPair b_lambda_pair(const Partition& l, Entry m, Entry n) {
  const Entry s = l.size();
  if (m < 1 || n < 1 || m < s * n) throw DomainViolation("B_lambda(m,n): requires m >= |lambda| n, m,n >= 1");
  std::vector<Entry> b;
  for (Entry x : l.parts()) b.push_back(x * m);
  b.push_back(m - s * n);
  b.push_back((s + 1) * n);
  return FactorialPair::dropping_zeros({(s + 1) * m, n}, std::move(b));
}

/// (((|l|+1)m, (|l|+1)n), (l_1 m, ..., l_r m, m+|l|n, n))
inline FactorialPair c_lambda_pair(const Partition& l, Entry m, Entry n) {
  const Entry s = l.size();
  if (m < 1 || n < 1) throw DomainViolation("C_lambda(m,n): m, n must be positive");
  std::vector<Entry> b;
  for (Entry x : l.parts()) b.push_back(x * m);
  b.push_back(m + s * n);
  b.push_back(n);
  return FactorialPair::dropping_zeros({(s + 1) * m, (s + 1) * n}, std::move(b));
}

/// Macdonald-Morris pair for G2.
inline FactorialPair g2_pair(Entry m, Entry n) {
  if (m < 1 || n < 1) throw DomainViolation("G2(m,n): m, n must be positive");
  return {{2 * m, 2 * n, 3 * n, 3 * m + 3 * n}, {m, n, n, m + n, m + 2 * n, 2 * m + 3 * n}};
}

/// Macdonald-Morris pair for F4.
inline FactorialPair f4_pair(Entry m, Entry n) {
  if (m < 1 || n < 1) throw DomainViolation("F4(m,n): m, n must be positive");
  return {{2 * m, 2 * n, 3 * m, 3 * n, 4 * n, 2 * m + 4 * n, 4 * m + 2 * n, 2 * m + 6 * n, 4 * m + 4 * n, 6 * m + 6 * n},
          {m, m, n, n, n, m + n, m + 2 * n, 2 * m + n, m + 3 * n, 2 * m + 3 * n, 3 * m + 3 * n, 3 * m + 4 * n,
           3 * m + 5 * n, 5 * m + 6 * n}};
}

/// LHS of the q-Dixon summation:
/// [l+m+n]![2l]![2m]![2n]! / ([l]![m]![n]![l+m]![m+n]![n+l]!)
inline FactorialPair dixon_pair(Entry l, Entry m, Entry n) {
  if (l < 0 || m < 0 || n < 0) throw DomainViolation("Dixon(l,m,n): parameters must be nonnegative");
  return FactorialPair::dropping_zeros({l + m + n, 2 * l, 2 * m, 2 * n}, {l, m, n, l + m, m + n, n + l});
}

// ---------------------------------------------------------------------------
// Family instances

enum class Family { qbinom, b, c, sound, b_lambda, c_lambda, g2, f4, sporadic };

inline constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::qbinom: return "qbinom";
    case Family::b: return "b";
    case Family::c: return "c";
    case Family::sound: return "sound";
    case Family::b_lambda: return "b_lambda";
    case Family::c_lambda: return "c_lambda";
    case Family::g2: return "g2";
    case Family::f4: return "f4";
    case Family::sporadic: return "sporadic";
  }
  return "?";
}

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::qbinom, Family::b, Family::c, Family::sound, Family::b_lambda, Family::c_lambda, Family::g2,
                   Family::f4, Family::sporadic})
    if (family_name(f) == name) return f;
  throw UnknownFamily("unknown family '" + std::string(name) + "'");
}

struct FamilyParams {
  std::optional<Entry> m;
  std::optional<Entry> n;
  std::optional<Partition> lambda;
  std::optional<Entry> registry_id;
  std::string label;
};

struct FamilyInstance {
  Family family = Family::sporadic;
  FamilyParams params;
  FactorialPair pair;
};

/// Resolves (family, m, n[, lambda]) to its pair. Not used for sporadic entries.
inline FamilyInstance instantiate(Family f, Entry m, Entry n, const std::optional<Partition>& lambda = std::nullopt) {
  FamilyInstance inst{f, {m, n, lambda, std::nullopt, {}}, {}};
  switch (f) {
    case Family::qbinom: inst.pair = qbinom_pair(m, n); break;
    case Family::b: inst.pair = b_pair(m, n); break;
    case Family::c: inst.pair = c_pair(m, n); break;
    case Family::sound: inst.pair = sound_pair(m, n); break;
    case Family::g2: inst.pair = g2_pair(m, n); break;
    case Family::f4: inst.pair = f4_pair(m, n); break;
    case Family::b_lambda:
    case Family::c_lambda:
      if (!lambda) throw DomainViolation(std::string(family_name(f)) + " needs a partition");
      inst.pair = f == Family::b_lambda ? b_lambda_pair(*lambda, m, n) : c_lambda_pair(*lambda, m, n);
      break;
    case Family::sporadic: throw DomainViolation("sporadic instances come from the registry");
  }
  return inst;
}

/// Whether (m, n) lies in the family's parameter domain.
inline bool in_domain(Family f, Entry m, Entry n, const std::optional<Partition>& lambda = std::nullopt) {
  switch (f) {
    case Family::qbinom:
    case Family::c: return m >= 0 && n >= 0;
    case Family::b: return n >= 0 && m >= n;
    case Family::sound: return n >= 1 && m >= 5 * n;
    case Family::b_lambda: return lambda && n >= 1 && m >= lambda->size() * n;
    case Family::c_lambda: return lambda.has_value() && m >= 1 && n >= 1;
    case Family::g2:
    case Family::f4: return m >= 1 && n >= 1;
    case Family::sporadic: return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Admissible partitions

/// All partitions of `size`, largest first part first.
inline std::vector<Partition> partitions_of(Entry size) {
  std::vector<Partition> out;
  std::vector<Entry> cur;
  std::function<void(Entry, Entry)> rec = [&](Entry left, Entry cap) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (Entry k = std::min(left, cap); k >= 1; --k) {
      cur.push_back(k);
      rec(left - k, k);
      cur.pop_back();
    }
  };
  if (size >= 1) rec(size, size);
  return out;
}

/// Whether lambda passes the joint grid filter: Landau holds for B_lambda on
/// every grid point with m >= |lambda| n and for C_lambda on every grid point,
/// 1 <= m,n <= grid_bound.
inline bool admissible_up_to(const Partition& l, Entry grid_bound) {
  const Entry s = l.size();
  for (Entry m = 1; m <= grid_bound; ++m)
    for (Entry n = 1; n <= grid_bound; ++n) {
      if (m >= s * n && !check_landau(b_lambda_pair(l, m, n)).holds) return false;
      if (!check_landau(c_lambda_pair(l, m, n)).holds) return false;
    }
  return true;
}

/// Partitions of size <= max_size that are admissible up to the grid bound.
/// This is a necessary-condition filter, not a proof of admissibility.
inline std::vector<Partition> enumerate_admissible_partitions(Entry max_size, Entry grid_bound = 12) {
  std::vector<Partition> out;
  for (Entry size = 1; size <= max_size; ++size)
    for (auto& l : partitions_of(size))
      if (admissible_up_to(l, grid_bound)) out.push_back(std::move(l));
  return out;
}

/// The partitions listed in the literature as admissible up to size 11.
inline std::vector<Partition> published_admissible_partitions() {
  return {{1}, {1, 1}, {2, 1}, {2, 1, 1}, {3, 2}, {3, 2, 1}, {4, 2, 1},
          {4, 3, 1}, {5, 3, 1}, {5, 2, 2}, {4, 3, 2}, {5, 3, 2}, {6, 4, 1}, {4, 4, 3}};
}

// ---------------------------------------------------------------------------
// Sporadic registry
//
// JSON array of {"id": int, "label": str, "a": [int], "b": [int], "source": str}.
// An entry may give "pair": "a1,.../b1,..." instead of the two arrays.

inline FamilyInstance chebyshev_instance() {
  FamilyInstance inst{Family::sporadic, {}, FactorialPair({1, 30}, {6, 10, 15})};
  inst.params.registry_id = 0;
  inst.params.label = "chebyshev";
  return inst;
}

namespace detail {

inline std::vector<Entry> registry_ints(const nlohmann::json& entry, const char* key) {
  if (!entry.contains(key) || !entry[key].is_array())
    throw SchemaError(std::string("registry entry missing integer array '") + key + "'");
  std::vector<Entry> v;
  for (const auto& x : entry[key]) {
    if (!x.is_number_integer() || x.get<Entry>() <= 0)
      throw SchemaError(std::string("registry entry '") + key + "' must hold positive integers");
    v.push_back(x.get<Entry>());
  }
  return v;
}

}  // namespace detail

/// Parses a registry document. Entries must satisfy Landau and have height one
/// once reduced. The built-in Chebyshev pair is included unless the document
/// already contains it.
inline std::vector<FamilyInstance> load_sporadic_registry(const nlohmann::json& doc, bool include_defaults = true) {
  if (!doc.is_array()) throw SchemaError("registry must be a JSON array");
  std::vector<FamilyInstance> out;
  for (const auto& entry : doc) {
    if (!entry.is_object()) throw SchemaError("registry entries must be objects");
    if (!entry.contains("id") || !entry["id"].is_number_integer()) throw SchemaError("registry entry needs integer 'id'");
    FamilyInstance inst;
    inst.family = Family::sporadic;
    inst.params.registry_id = entry["id"].get<Entry>();
    if (entry.contains("label")) {
      if (!entry["label"].is_string()) throw SchemaError("registry 'label' must be a string");
      inst.params.label = entry["label"].get<std::string>();
    }
    if (entry.contains("source") && !entry["source"].is_string()) throw SchemaError("registry 'source' must be a string");
    if (entry.contains("pair")) {
      if (!entry["pair"].is_string()) throw SchemaError("registry 'pair' must be a string");
      try {
        inst.pair = parse_pair(entry["pair"].get<std::string>());
      } catch (const ParseError& e) {
        throw SchemaError(std::string("registry entry has a malformed pair: ") + e.what());
      }
    } else {
      inst.pair = FactorialPair(detail::registry_ints(entry, "a"), detail::registry_ints(entry, "b"));
    }
    if (auto v = check_landau(inst.pair); !v.holds)
      throw LandauRejection("registry entry " + std::to_string(*inst.params.registry_id) + " (" + to_string(inst.pair) +
                            ") violates Landau at x = " + to_string(*v.witness));
    if (height(reduce(inst.pair)) != 1)
      throw LandauRejection("registry entry " + std::to_string(*inst.params.registry_id) + " is not of height one");
    out.push_back(std::move(inst));
  }
  if (include_defaults) {
    auto cheb = chebyshev_instance();
    const bool present = std::any_of(out.begin(), out.end(), [&](const auto& i) { return i.pair == cheb.pair; });
    if (!present) out.insert(out.begin(), std::move(cheb));
  }
  return out;
}

inline std::vector<FamilyInstance> load_sporadic_registry_text(std::string_view text, bool include_defaults = true) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("registry is not valid JSON: ") + e.what());
  }
  return load_sporadic_registry(doc, include_defaults);
}

inline std::vector<FamilyInstance> load_sporadic_registry_file(const std::string& path, bool include_defaults = true) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open registry '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_sporadic_registry_text(ss.str(), include_defaults);
}

}  // namespace qrious
