// output.hpp: CSV and JSON emission

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace qotto::app {

inline constexpr const char* kArtifactVersion = "1.0.0";

inline constexpr const char* kTrajectoryHeader =
    "t_s,P_e,P_g,re_rho_eg,im_rho_eg,delta_rad_s,omega_rad_s,gamma_eff_s,T_eff,C_l1,S,stroke";
inline constexpr const char* kSweepT2Header = "t2_s,W,P_out,eta_c,eta_q";
inline constexpr const char* kSweepRatioHeader = "ratio,t2_s,W";
inline constexpr const char* kThreeLevelHeader =
    "gamma_over_4omega,re_l3_2level,re_l4_2level,re_l3_3level,re_l4_3level";
inline constexpr const char* kMeasurementHeader = "t_s,P_e_true,P_e_mean,P_e_std";

struct Table {
    std::string header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

// 12 significant digits.
std::string fmt(double value);
std::string fmt(long long value);

// Throws IoError for an empty table or an unwritable path.
void emit_csv(const Table& table, const std::filesystem::path& path);
void emit_summary_json(const nlohmann::json& summary, const std::filesystem::path& path);

} // namespace qotto::app
