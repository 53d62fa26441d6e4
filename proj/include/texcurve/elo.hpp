#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "texcurve/pairwise.hpp"

namespace texcurve {

struct EloConfig {
  double k_factor = 32.0;
  double initial_rating = 1000.0;
  std::size_t shuffles = 100;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;  // shuffles run in parallel; results do not depend on it
};

using Ratings = std::map<std::string, double>;

/// Expected score of a player rated r_i against one rated r_j.
double pair_expected_score(double r_i, double r_j) noexcept;

/// One sequential Elo pass over `records` in the given order. Both players
/// move by K * (C - E) in opposite directions, so the rating sum is
/// conserved. Throws InvalidScore for c_ij outside {0, 0.5, 1}.
Ratings run_single_pass(std::span<const ComparisonRecord> records, const EloConfig& config);

struct MethodRating {
  std::string method_id;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation across shuffles
};

struct RatingTable {
  Dimension dimension = Dimension::reference_alignment;
  std::vector<MethodRating> ratings;  // by mean descending, then method id
  std::size_t record_count = 0;
  EloConfig config;

  const MethodRating* find(const std::string& method_id) const;
};

/// Averages run_single_pass over `config.shuffles` seeded permutations.
/// All records must share one dimension (std::invalid_argument otherwise).
RatingTable run_tournament(std::span<const ComparisonRecord> records, const EloConfig& config);

/// One table per dimension present in `records`, in dimension order.
std::vector<RatingTable> run_tournaments(std::span<const ComparisonRecord> records, const EloConfig& config);

/// JSON document with the config echo and every table.
std::string rating_tables_to_json(const std::vector<RatingTable>& tables, const EloConfig& config);

}  // namespace texcurve
