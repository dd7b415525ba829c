#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "simim/market_data.hpp"

namespace simim {

/// Configuration / input errors; the CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RatingEntry {
  std::string label;
  double pd_1y_bps = 0.0;
  bool operator==(const RatingEntry&) const = default;
};

struct MarketConfig {
  std::vector<DiscountCurve::Pillar> discount_curve;
  std::vector<RatingEntry> ratings;
  std::string reference_rating = "AAA";
  double lgd = 0.6;
  bool operator==(const MarketConfig&) const = default;
};

struct ModelConfig {
  double a = 0.05;
  double sigma = 0.01;
  bool operator==(const ModelConfig&) const = default;
};

struct SimulationConfig {
  std::size_t n_paths = 10'000;
  std::uint64_t seed = 7'654'321;
  /// Empty: monthly grid to each trade's horizon. Otherwise explicit dates.
  std::vector<double> explicit_dates;
  bool operator==(const SimulationConfig&) const = default;
};

struct MarginConfig {
  double confidence = 0.99;
  double mpor_days = 10.0;
  bool operator==(const MarginConfig&) const = default;

  double mpor_years() const { return mpor_days / 365.0; }
};

struct TradeConfig {
  enum class Type { swap, swaption };
  Type type = Type::swap;
  double notional = 1'000'000.0;
  bool pay_fixed = true;
  double maturity_years = 5.0;          // swaps
  double expiry_years = 5.0;            // swaptions
  double underlying_tenor_years = 5.0;  // swaptions
  /// Unset: at-the-money (par / forward-par rate). Set: explicit fixed rate.
  std::optional<double> strike;
  bool operator==(const TradeConfig&) const = default;

  std::string label() const;
  double horizon() const { return type == Type::swap ? maturity_years : expiry_years; }
};

struct SolverConfig {
  double tolerance_per_notional = 1e-6;
  int max_iterations = 100;
  bool operator==(const SolverConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  bool csv = true;
  bool json = true;
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  MarketConfig market;
  ModelConfig model;
  SimulationConfig simulation;
  MarginConfig margin;
  std::vector<TradeConfig> trades;
  SolverConfig solver;
  OutputConfig output;
  unsigned threads = 0;  // 0: hardware concurrency
  bool operator==(const RunConfig&) const = default;
};

/// Shipped defaults: 4 ATM payer swaps (3/5/7/10y) and 2 cash-settled payer
/// swaptions (3y and 5y expiry into 5y), the 7-rating table, 10,000 paths.
RunConfig default_run_config();

RunConfig load_run_config(const std::filesystem::path& path);
void save_run_config(const RunConfig& config, const std::filesystem::path& path);

/// Throws ConfigError with the offending field on any invariant violation.
void validate(const RunConfig& config);

/// Validated market objects built from the config.
struct MarketData {
  DiscountCurve curve;
  RatingTable ratings;
  LgdAssumption lgd;
};
MarketData build_market_data(const MarketConfig& config);

/// Load market data from a JSON file: either a full run config or a bare
/// market section.
MarketData load_market_config(const std::filesystem::path& path);

}  // namespace simim
