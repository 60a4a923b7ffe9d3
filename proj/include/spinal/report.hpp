#pragma once

// JSON documents behind the command-line tool. Every builder returns the
// document together with its verdict; field names are listed in
// docs/schema.md.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinal/gf2n.hpp"
#include "spinal/linalg.hpp"

namespace spinal {

using Json = nlohmann::ordered_json;

struct Report {
  Json doc;
  bool pass = false;
};

/// --rank-field: Q, F2 or Fp:<p>.
struct RankField {
  enum class Kind { Rationals, Prime } kind = Kind::Rationals;
  std::uint64_t p = 0;

  std::string label() const;
};

/// Throws std::invalid_argument for anything but Q, F2 or Fp:<prime>.
RankField parse_rank_field(const std::string& text);

Report field_report(const FieldContext& ctx);

/// Design parameters, base block and pair-count table for the field.
Report design_report(const FieldContext& ctx, std::uint64_t seed);

/// All base blocks for Z_{2q-1}; odd q throws std::invalid_argument.
Report search_report(std::uint64_t q);

Report matrix_report(const FieldContext& ctx, const std::optional<RankField>& rank_field);

/// Header row of column labels, then 0/1 rows.
std::string matrix_csv(const InclusionMatrix& w);

Report nucleus_report(const FieldContext& ctx, int depth);

Report groupoid_report(const FieldContext& ctx, std::size_t m, std::optional<std::size_t> depth, bool verify);

struct CertifyOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::vector<std::size_t> m_values{1, 2, 3};
  int nucleus_depth = 8;
  int rank_max_degree = 8;  // rank over Q by elimination up to this n
  std::vector<std::uint64_t> primes{2, 5, 7, 11, 13};
  std::optional<std::string> timestamp;
};

/// design -> W/T -> nucleus -> groupoid -> bound samples, one document.
Report certify(const FieldContext& ctx, const CertifyOptions& options);

}  // namespace spinal
