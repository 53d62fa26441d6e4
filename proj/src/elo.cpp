#include "texcurve/elo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "parallel.hpp"
#include "texcurve/error.hpp"
#include "texcurve/random.hpp"

namespace texcurve {

double pair_expected_score(double r_i, double r_j) noexcept {
  return 1.0 / (1.0 + std::pow(10.0, (r_j - r_i) / 400.0));
}

namespace {

void check_config(const EloConfig& config) {
  if (!(config.k_factor > 0.0) || !std::isfinite(config.k_factor)) {
    throw std::invalid_argument("k_factor must be positive");
  }
  if (!std::isfinite(config.initial_rating)) throw std::invalid_argument("initial_rating must be finite");
  if (config.shuffles < 1) throw std::invalid_argument("shuffles must be at least 1");
}

void check_score(const ComparisonRecord& r) {
  if (r.c_ij != 0.0 && r.c_ij != 0.5 && r.c_ij != 1.0) {
    throw InvalidScore("record " + std::to_string(r.task_id) + " has c_ij " + std::to_string(r.c_ij) +
                       " (expected 0, 0.5 or 1)");
  }
  if (r.method_a == r.method_b) {
    throw InvalidScore("record " + std::to_string(r.task_id) + " compares '" + r.method_a + "' with itself");
  }
}

// Records with method names replaced by dense indices (sorted method order).
struct IndexedGames {
  std::vector<std::string> methods;
  std::vector<std::size_t> a, b;
  std::vector<double> score;
};

IndexedGames index_games(std::span<const ComparisonRecord> records) {
  IndexedGames games;
  for (const ComparisonRecord& r : records) {
    check_score(r);
    games.methods.push_back(r.method_a);
    games.methods.push_back(r.method_b);
  }
  std::sort(games.methods.begin(), games.methods.end());
  games.methods.erase(std::unique(games.methods.begin(), games.methods.end()), games.methods.end());
  const auto index_of = [&](const std::string& m) {
    return static_cast<std::size_t>(std::lower_bound(games.methods.begin(), games.methods.end(), m) -
                                    games.methods.begin());
  };
  for (const ComparisonRecord& r : records) {
    games.a.push_back(index_of(r.method_a));
    games.b.push_back(index_of(r.method_b));
    games.score.push_back(r.c_ij);
  }
  return games;
}

template <typename Order>
std::vector<double> indexed_pass(const IndexedGames& games, const Order& order, const EloConfig& config) {
  std::vector<double> rating(games.methods.size(), config.initial_rating);
  for (std::size_t g : order) {
    double& ra = rating[games.a[g]];
    double& rb = rating[games.b[g]];
    const double delta = config.k_factor * (games.score[g] - pair_expected_score(ra, rb));
    ra += delta;
    rb -= delta;
  }
  return rating;
}

}  // namespace

Ratings run_single_pass(std::span<const ComparisonRecord> records, const EloConfig& config) {
  check_config(config);
  const IndexedGames games = index_games(records);
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  const std::vector<double> rating = indexed_pass(games, order, config);

  Ratings out;
  for (std::size_t i = 0; i < games.methods.size(); ++i) out.emplace(games.methods[i], rating[i]);
  return out;
}

const MethodRating* RatingTable::find(const std::string& method_id) const {
  for (const MethodRating& r : ratings) {
    if (r.method_id == method_id) return &r;
  }
  return nullptr;
}

RatingTable run_tournament(std::span<const ComparisonRecord> records, const EloConfig& config) {
  check_config(config);
  if (records.empty()) throw std::invalid_argument("run_tournament needs at least one record");
  for (const ComparisonRecord& r : records) {
    if (r.dimension != records.front().dimension) {
      throw std::invalid_argument("records mix dimensions; rate each dimension separately");
    }
  }
  const IndexedGames games = index_games(records);
  const std::size_t n_methods = games.methods.size();

  std::vector<std::vector<double>> per_shuffle(config.shuffles);
  detail::parallel_for(config.shuffles, config.jobs, [&](std::size_t s) {
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    SeededRng rng(derive_seed(config.seed, s));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    per_shuffle[s] = indexed_pass(games, order, config);
  });

  RatingTable table;
  table.dimension = records.front().dimension;
  table.record_count = records.size();
  table.config = config;
  const double count = static_cast<double>(config.shuffles);
  for (std::size_t m = 0; m < n_methods; ++m) {
    double sum = 0.0;
    for (const auto& ratings : per_shuffle) sum += ratings[m];
    const double mean = sum / count;
    double sq = 0.0;
    for (const auto& ratings : per_shuffle) sq += (ratings[m] - mean) * (ratings[m] - mean);
    table.ratings.push_back({games.methods[m], mean, std::sqrt(sq / count)});
  }
  std::sort(table.ratings.begin(), table.ratings.end(), [](const MethodRating& x, const MethodRating& y) {
    if (x.mean != y.mean) return x.mean > y.mean;
    return x.method_id < y.method_id;
  });
  return table;
}

std::vector<RatingTable> run_tournaments(std::span<const ComparisonRecord> records, const EloConfig& config) {
  std::vector<RatingTable> tables;
  for (Dimension d : all_dimensions()) {
    std::vector<ComparisonRecord> subset;
    for (const ComparisonRecord& r : records) {
      if (r.dimension == d) subset.push_back(r);
    }
    if (!subset.empty()) tables.push_back(run_tournament(subset, config));
  }
  return tables;
}

std::string rating_tables_to_json(const std::vector<RatingTable>& tables, const EloConfig& config) {
  using nlohmann::json;
  json out_tables = json::array();
  for (const RatingTable& t : tables) {
    json ratings = json::array();
    for (const MethodRating& r : t.ratings) {
      ratings.push_back({{"method_id", r.method_id}, {"mean", r.mean}, {"stddev", r.stddev}});
    }
    out_tables.push_back({{"dimension", std::string(to_string(t.dimension))},
                          {"record_count", t.record_count},
                          {"ratings", std::move(ratings)}});
  }
  const json doc{{"config",
                  {{"k_factor", config.k_factor},
                   {"initial_rating", config.initial_rating},
                   {"shuffles", config.shuffles},
                   {"seed", config.seed}}},
                 {"tables", std::move(out_tables)}};
  return doc.dump(2) + "\n";
}

}  // namespace texcurve
