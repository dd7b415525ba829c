#include "simim/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace simim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string trade_maturity(const TradeConfig& trade) {
  std::ostringstream out;
  out << trade.horizon();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_reports: cannot write " + path.string());
  }
  out << contents;
}

std::string cva_schemes_csv(const RunReport& report) {
  std::ostringstream out;
  out << "trade,rating,pd_1y_bps,notional,uncollateralized_cva,vm_cva,vm_im_cva\n";
  for (const TradeResult& trade : report.trades) {
    for (const SchemeCva& s : trade.schemes) {
      out << trade.label << ',' << to_string(s.rating) << ',' << fixed(s.pd_1y_bps, 2) << ','
          << fixed(trade.trade.notional, 0) << ',' << fixed(s.uncollateralized, 2) << ','
          << fixed(s.vm_only, 2) << ',' << fixed(s.vm_im, 2) << '\n';
    }
  }
  return out.str();
}

std::string alpha_per_rating_csv(const RunReport& report) {
  std::ostringstream out;
  out << "maturity";
  for (Rating r : report.ratings) out << ',' << to_string(r);
  out << '\n';
  for (const TradeResult& trade : report.trades) {
    out << trade_maturity(trade.trade);
    for (const AlphaSurfaceCell& cell : trade.alphas) {
      out << ',' << (cell.failed ? "NA" : fixed(cell.solution.alpha, 6));
    }
    out << '\n';
  }
  return out.str();
}

std::string im_per_rating_csv(const RunReport& report) {
  std::ostringstream out;
  out << "maturity,IM";
  for (Rating r : report.ratings) out << ',' << to_string(r);
  out << '\n';
  for (const TradeResult& trade : report.trades) {
    out << trade_maturity(trade.trade) << ',' << fixed(trade.im_today, 0);
    for (const AlphaSurfaceCell& cell : trade.alphas) {
      out << ','
          << (cell.failed ? "NA" : fixed(cell.solution.alpha * trade.im_today, 0));
    }
    out << '\n';
  }
  return out.str();
}

ordered_json report_json(const RunReport& report) {
  ordered_json j;
  j["version"] = report.version;
  j["seed"] = report.seed;
  j["n_paths"] = report.n_paths;
  j["reference_rating"] = to_string(report.reference);
  auto ratings = ordered_json::array();
  for (Rating r : report.ratings) ratings.push_back(to_string(r));
  j["ratings"] = ratings;
  j["trades"] = ordered_json::array();
  for (const TradeResult& trade : report.trades) {
    ordered_json t;
    t["label"] = trade.label;
    t["type"] = trade.trade.type == TradeConfig::Type::swap ? "swap" : "swaption";
    t["maturity_years"] = trade.trade.horizon();
    t["notional"] = trade.trade.notional;
    t["fixed_rate"] = trade.fixed_rate;
    t["im_today"] = trade.im_today;
    t["cva_schemes"] = ordered_json::array();
    for (const SchemeCva& s : trade.schemes) {
      t["cva_schemes"].push_back({{"rating", to_string(s.rating)},
                                  {"pd_1y_bps", s.pd_1y_bps},
                                  {"uncollateralized", s.uncollateralized},
                                  {"vm_only", s.vm_only},
                                  {"vm_im", s.vm_im}});
    }
    t["alpha"] = ordered_json::array();
    for (std::size_t i = 0; i < trade.alphas.size(); ++i) {
      const AlphaSurfaceCell& cell = trade.alphas[i];
      ordered_json a;
      a["rating"] = to_string(report.ratings[i]);
      if (cell.failed) {
        a["failed"] = true;
        a["error"] = cell.error;
      } else {
        a["alpha"] = cell.solution.alpha;
        a["im_add_on"] = cell.solution.alpha * trade.im_today;
        a["cva_reference"] = cell.solution.cva_reference;
        a["cva_at_alpha"] = cell.solution.cva_at_alpha;
        a["residual"] = cell.solution.residual;
        a["iterations"] = cell.solution.iterations;
        a["converged"] = cell.solution.converged;
        a["floored"] = cell.solution.floored;
      }
      t["alpha"].push_back(a);
    }
    j["trades"].push_back(t);
  }
  return j;
}

ordered_json meta_json(const RunReport& report) {
  ordered_json j;
  j["version"] = report.version;
  j["any_solver_failure"] = report.any_solver_failure;
  j["timings_seconds"] = {{"simulate", report.timings.simulate_s},
                          {"value", report.timings.value_s},
                          {"margin", report.timings.margin_s},
                          {"cva", report.timings.cva_s},
                          {"alpha", report.timings.alpha_s},
                          {"total", report.timings.total_s}};
  return j;
}

}  // namespace

std::vector<std::filesystem::path> write_reports(const RunReport& report,
                                                 const std::filesystem::path& dir, bool csv,
                                                 bool json) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  if (csv) {
    const auto schemes = dir / "cva_schemes.csv";
    write_file(schemes, cva_schemes_csv(report));
    written.push_back(schemes);
    const auto im = dir / "im_per_rating.csv";
    write_file(im, im_per_rating_csv(report));
    written.push_back(im);
    const auto alpha = dir / "alpha_per_rating.csv";
    write_file(alpha, alpha_per_rating_csv(report));
    written.push_back(alpha);
  }
  if (json) {
    const auto mirror = dir / "report.json";
    write_file(mirror, report_json(report).dump(2) + "\n");
    written.push_back(mirror);
  }
  const auto meta = dir / "run_meta.json";
  write_file(meta, meta_json(report).dump(2) + "\n");
  written.push_back(meta);
  return written;
}

}  // namespace simim
