#include "simim/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace simim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_years(double years) {
  std::ostringstream out;
  out << years;
  return out.str();
}

ordered_json market_to_json(const MarketConfig& market) {
  ordered_json j;
  j["discount_curve"] = ordered_json::array();
  for (const auto& p : market.discount_curve) {
    j["discount_curve"].push_back({{"t", p.t}, {"zero_rate", p.zero_rate}});
  }
  j["ratings"] = ordered_json::array();
  for (const auto& r : market.ratings) {
    j["ratings"].push_back({{"label", r.label}, {"pd_1y_bps", r.pd_1y_bps}});
  }
  j["reference_rating"] = market.reference_rating;
  j["lgd"] = market.lgd;
  return j;
}

MarketConfig market_from_json(const ordered_json& j) {
  MarketConfig market;
  for (const auto& p : j.at("discount_curve")) {
    market.discount_curve.push_back({p.at("t").get<double>(), p.at("zero_rate").get<double>()});
  }
  for (const auto& r : j.at("ratings")) {
    market.ratings.push_back(
        {r.at("label").get<std::string>(), r.at("pd_1y_bps").get<double>()});
  }
  market.reference_rating = j.at("reference_rating").get<std::string>();
  market.lgd = j.at("lgd").get<double>();
  return market;
}

ordered_json trade_to_json(const TradeConfig& trade) {
  ordered_json j;
  j["type"] = trade.type == TradeConfig::Type::swap ? "swap" : "swaption";
  j["notional"] = trade.notional;
  j["pay_fixed"] = trade.pay_fixed;
  if (trade.type == TradeConfig::Type::swap) {
    j["maturity_years"] = trade.maturity_years;
  } else {
    j["expiry_years"] = trade.expiry_years;
    j["underlying_tenor_years"] = trade.underlying_tenor_years;
  }
  if (trade.strike) {
    j["strike"] = *trade.strike;
  } else {
    j["strike"] = "atm";
  }
  return j;
}

TradeConfig trade_from_json(const ordered_json& j) {
  TradeConfig trade;
  const std::string type = j.at("type").get<std::string>();
  if (type == "swap") {
    trade.type = TradeConfig::Type::swap;
    trade.maturity_years = j.at("maturity_years").get<double>();
  } else if (type == "swaption") {
    trade.type = TradeConfig::Type::swaption;
    trade.expiry_years = j.at("expiry_years").get<double>();
    trade.underlying_tenor_years = j.value("underlying_tenor_years", 5.0);
  } else {
    throw ConfigError("trade.type must be 'swap' or 'swaption', got '" + type + "'");
  }
  trade.notional = j.value("notional", 1'000'000.0);
  trade.pay_fixed = j.value("pay_fixed", true);
  if (j.contains("strike") && j.at("strike").is_number()) {
    trade.strike = j.at("strike").get<double>();
  }
  return trade;
}

}  // namespace

std::string TradeConfig::label() const {
  if (type == Type::swap) {
    return "swap_" + format_years(maturity_years) + "y";
  }
  return "swaption_" + format_years(expiry_years) + "y_into_" +
         format_years(underlying_tenor_years) + "y";
}

RunConfig default_run_config() {
  RunConfig config;
  config.market.discount_curve = {{0.0, 0.015}, {1.0, 0.017}, {2.0, 0.019},
                                  {5.0, 0.021}, {10.0, 0.023}, {30.0, 0.024}};
  config.market.ratings = {{"AAA", 1.0}, {"AA", 3.0},  {"A", 8.0},  {"BBB", 20.0},
                           {"BB", 90.0}, {"B", 550.0}, {"CCC", 2682.0}};
  config.market.reference_rating = "AAA";
  config.market.lgd = 0.6;
  for (double maturity : {3.0, 5.0, 7.0, 10.0}) {
    TradeConfig swap;
    swap.type = TradeConfig::Type::swap;
    swap.maturity_years = maturity;
    config.trades.push_back(swap);
  }
  for (double expiry : {3.0, 5.0}) {
    TradeConfig swaption;
    swaption.type = TradeConfig::Type::swaption;
    swaption.expiry_years = expiry;
    swaption.underlying_tenor_years = 5.0;
    config.trades.push_back(swaption);
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse failure in " + path.string() + ": " + e.what());
  }
  try {
    RunConfig config;
    config.market = market_from_json(j.at("market"));
    if (j.contains("model")) {
      config.model.a = j["model"].value("a", config.model.a);
      config.model.sigma = j["model"].value("sigma", config.model.sigma);
    }
    if (j.contains("simulation")) {
      const auto& sim = j["simulation"];
      config.simulation.n_paths = sim.value("n_paths", config.simulation.n_paths);
      config.simulation.seed = sim.value("seed", config.simulation.seed);
      if (sim.contains("grid") && sim["grid"].is_array()) {
        config.simulation.explicit_dates = sim["grid"].get<std::vector<double>>();
      }
    }
    if (j.contains("margin")) {
      config.margin.confidence = j["margin"].value("confidence", config.margin.confidence);
      config.margin.mpor_days = j["margin"].value("mpor_days", config.margin.mpor_days);
    }
    for (const auto& t : j.at("trades")) {
      config.trades.push_back(trade_from_json(t));
    }
    if (j.contains("solver")) {
      config.solver.tolerance_per_notional =
          j["solver"].value("tolerance_per_notional", config.solver.tolerance_per_notional);
      config.solver.max_iterations =
          j["solver"].value("max_iterations", config.solver.max_iterations);
    }
    if (j.contains("output")) {
      config.output.dir = j["output"].value("dir", config.output.dir);
      if (j["output"].contains("formats")) {
        config.output.csv = false;
        config.output.json = false;
        for (const auto& f : j["output"]["formats"]) {
          if (f == "csv") config.output.csv = true;
          if (f == "json") config.output.json = true;
        }
      }
    }
    config.threads = j.value("threads", 0u);
    return config;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("config field error in " + path.string() + ": " + e.what());
  }
}

void save_run_config(const RunConfig& config, const std::filesystem::path& path) {
  ordered_json j;
  j["market"] = market_to_json(config.market);
  j["model"] = {{"a", config.model.a}, {"sigma", config.model.sigma}};
  j["simulation"] = {{"n_paths", config.simulation.n_paths}, {"seed", config.simulation.seed}};
  if (!config.simulation.explicit_dates.empty()) {
    j["simulation"]["grid"] = config.simulation.explicit_dates;
  } else {
    j["simulation"]["grid"] = "monthly";
  }
  j["margin"] = {{"confidence", config.margin.confidence},
                 {"mpor_days", config.margin.mpor_days},
                 {"vm_lag", "mpor"}};
  j["trades"] = ordered_json::array();
  for (const auto& t : config.trades) {
    j["trades"].push_back(trade_to_json(t));
  }
  j["solver"] = {{"tolerance_per_notional", config.solver.tolerance_per_notional},
                 {"max_iterations", config.solver.max_iterations}};
  j["output"] = {{"dir", config.output.dir}};
  auto formats = ordered_json::array();
  if (config.output.csv) formats.push_back("csv");
  if (config.output.json) formats.push_back("json");
  j["output"]["formats"] = formats;
  if (config.threads != 0) j["threads"] = config.threads;

  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write config file: " + path.string());
  }
  out << j.dump(2) << "\n";
}

MarketData build_market_data(const MarketConfig& config) {
  if (config.discount_curve.empty()) {
    throw ConfigError("market.discount_curve: at least one pillar required");
  }
  std::vector<CreditCurve> curves;
  for (const auto& entry : config.ratings) {
    Rating rating;
    try {
      rating = rating_from_string(entry.label);
    } catch (const std::exception&) {
      throw ConfigError("market.ratings: unknown rating label '" + entry.label + "'");
    }
    if (!(entry.pd_1y_bps >= 0.0 && entry.pd_1y_bps < 10'000.0)) {
      throw ConfigError("market.ratings[" + entry.label +
                        "].pd_1y_bps: must lie in [0, 10000), got " +
                        std::to_string(entry.pd_1y_bps));
    }
    curves.push_back(CreditCurve::from_one_year_pd(rating, entry.pd_1y_bps / 10'000.0));
  }
  Rating reference;
  try {
    reference = rating_from_string(config.reference_rating);
  } catch (const std::exception&) {
    throw ConfigError("market.reference_rating: unknown rating label '" +
                      config.reference_rating + "'");
  }
  try {
    return MarketData{DiscountCurve(config.discount_curve), RatingTable(std::move(curves), reference),
                      LgdAssumption(config.lgd)};
  } catch (const std::exception& e) {
    throw ConfigError(std::string("market: ") + e.what());
  }
}

MarketData load_market_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open market config file: " + path.string());
  }
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("market config parse failure in " + path.string() + ": " + e.what());
  }
  try {
    const ordered_json& section = j.contains("market") ? j["market"] : j;
    return build_market_data(market_from_json(section));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("market config field error in " + path.string() + ": " + e.what());
  }
}

void validate(const RunConfig& config) {
  const MarketData market = build_market_data(config.market);

  if (!(config.model.a > 0.0)) {
    throw ConfigError("model.a: mean reversion must be > 0");
  }
  if (!(config.model.sigma > 0.0)) {
    throw ConfigError("model.sigma: volatility must be > 0");
  }
  if (config.simulation.n_paths < 100) {
    throw ConfigError("simulation.n_paths: need at least 100 paths, got " +
                      std::to_string(config.simulation.n_paths));
  }
  if (!(config.margin.confidence > 0.5 && config.margin.confidence < 1.0)) {
    throw ConfigError("margin.confidence: must lie in (0.5, 1)");
  }
  if (!(config.margin.mpor_days > 0.0)) {
    throw ConfigError("margin.mpor_days: must be > 0");
  }
  if (config.trades.empty()) {
    throw ConfigError("trades: at least one trade required");
  }
  double max_horizon = 0.0;
  for (std::size_t i = 0; i < config.trades.size(); ++i) {
    const TradeConfig& t = config.trades[i];
    const std::string field = "trades[" + std::to_string(i) + "]";
    if (!(t.notional > 0.0)) {
      throw ConfigError(field + ".notional: must be > 0");
    }
    if (t.type == TradeConfig::Type::swap) {
      if (!(t.maturity_years > 0.0)) {
        throw ConfigError(field + ".maturity_years: must be > 0");
      }
      max_horizon = std::max(max_horizon, t.maturity_years);
    } else {
      if (!(t.expiry_years > 0.0)) {
        throw ConfigError(field + ".expiry_years: must be > 0");
      }
      if (!(t.underlying_tenor_years > 0.0)) {
        throw ConfigError(field + ".underlying_tenor_years: must be > 0");
      }
      max_horizon = std::max(max_horizon, t.expiry_years + t.underlying_tenor_years);
    }
  }
  if (!config.simulation.explicit_dates.empty()) {
    max_horizon = std::max(max_horizon, config.simulation.explicit_dates.back());
    for (const TradeConfig& t : config.trades) {
      if (config.simulation.explicit_dates.back() < t.horizon()) {
        throw ConfigError("simulation.grid: explicit dates end before trade " + t.label());
      }
    }
  }
  if (market.curve.max_time() < max_horizon) {
    throw ConfigError("market.discount_curve: last pillar (" +
                      std::to_string(market.curve.max_time()) +
                      "y) does not cover the trade horizon (" + std::to_string(max_horizon) +
                      "y)");
  }
  if (!(config.solver.tolerance_per_notional > 0.0)) {
    throw ConfigError("solver.tolerance_per_notional: must be > 0");
  }
  if (config.solver.max_iterations < 10) {
    throw ConfigError("solver.max_iterations: must be >= 10");
  }
}

}  // namespace simim
