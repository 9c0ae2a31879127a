#pragma once

#include <iosfwd>
#include <string>

#include "lyorad/multi_vial.h"

namespace lyorad {

const char* library_version() noexcept;

struct ResultBundle {
    std::string summary_path;
    std::string series_path;   // empty when no series was kept
    std::string metadata_path;
};

// Summary columns: vial_id,row,col,x_m,y_m,label,t_m_hours,t_dry_hours,radiative_energy_J
void write_summary_csv(std::ostream& out, const SimulationResult& result, const Scenario& scenario);

// Columns: vial_id,t_s,T_top_K,T_bottom_K,s_m,q_rad_W,absorbed_J
void write_series_csv(std::ostream& out, const SimulationResult& result);

// Writes summary.csv, series.csv (only when the result carries a series) and
// metadata.json into out_dir, creating it if needed. Throws IoError.
ResultBundle export_results(const SimulationResult& result, const Scenario& scenario,
                            const std::string& out_dir);

}  // namespace lyorad
