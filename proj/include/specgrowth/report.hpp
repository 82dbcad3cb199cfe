#pragma once

#include <string>

#include <json.hpp>

#include "specgrowth/cnd.hpp"
#include "specgrowth/reconstruct.hpp"
#include "specgrowth/relative.hpp"
#include "specgrowth/spectral.hpp"

namespace specgrowth {

// Floats are rounded to 12 significant digits before serialization so that
// identical jobs produce byte-identical reports; counts stay exact integers.
double report_round(double x);
nlohmann::json json_num(double x);

nlohmann::json to_json(const SpectrumTruncation& spec);
nlohmann::json to_json(const GrowthProfile& profile);
nlohmann::json to_json(const OmegaEstimate& omega);
nlohmann::json to_json(const PartitionEstimate& part);
nlohmann::json to_json(const Classification& cls);
nlohmann::json to_json(const PsdReport& report);
nlohmann::json to_json(const CndReport& report);
nlohmann::json to_json(const HInvarianceReport& report);
nlohmann::json to_json(const PropernessReport& report);
nlohmann::json to_json(const QuasiNormalityReport& report, const GroupModel& model);
nlohmann::json to_json(const RelativeSpectrum& spec);
nlohmann::json to_json(const EpsilonSchedule& schedule);
nlohmann::json to_json(const PropernessAudit& audit);

// CSV with columns n, beta, gamma, omega_root, omega_ratio (one row per n).
std::string growth_csv(const GrowthProfile& profile);

std::string dump_report(const nlohmann::json& j); // sorted keys, 2-space indent, trailing newline

} // namespace specgrowth
