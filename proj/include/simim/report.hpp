#pragma once

#include <filesystem>
#include <vector>

#include "simim/engine.hpp"

namespace simim {

/// Write the run's report files into dir and return their paths.
///
/// CSV set (fixed column orders, byte-identical for identical config + seed):
///   cva_schemes.csv     trade,rating,pd_1y_bps,notional,uncollateralized_cva,vm_cva,vm_im_cva
///   im_per_rating.csv   maturity,IM,<ratings...>        (add-on = alpha * IM, whole units)
///   alpha_per_rating.csv maturity,<ratings...>          (alpha, 6 decimals)
/// JSON set:
///   report.json         full-precision mirror of the result values
///   run_meta.json       timings and environment; excluded from the
///                       determinism contract
std::vector<std::filesystem::path> write_reports(const RunReport& report,
                                                 const std::filesystem::path& dir, bool csv,
                                                 bool json);

}  // namespace simim
