#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lyorad/multi_vial.h"

namespace lyorad {

inline constexpr double kHybridResistanceCap = 1e7;   // 1/m^2, stands for "no radiation"

// Scalar parameters that fit_scalar can adjust, addressed as "section.field".
std::vector<std::string> fittable_parameters();
double get_parameter(const Scenario& scenario, std::string_view name);
void set_parameter(Scenario& scenario, std::string_view name, double value);

enum class Observable { DryingTime, SwitchTime };

const char* to_string(Observable observable) noexcept;

struct FitTarget {
    Observable observable = Observable::DryingTime;
    std::size_t vial = 0;
    double value = 0.0;   // s
};

struct FitProblem {
    std::string parameter;
    double lower = 0.0;
    double upper = 0.0;
    std::vector<FitTarget> targets;
    Scenario scenario;

    void validate() const;
};

struct FitResult {
    double value = 0.0;
    double residual = 0.0;   // root-mean-square residual over the targets, s
    int evaluations = 0;
};

// Golden-section search on the squared residual. The model response is first sampled
// across the bounds and must be strictly monotone there with a sign change of the
// residual; otherwise NoBracket is thrown.
FitResult fit_scalar(const FitProblem& problem);

// Fits R_rad for one vial so the hybrid approach reproduces t_target. Throws
// RadiationImmune when the target is not reachable even at the resistance cap.
double fit_hybrid_resistance(const Scenario& scenario, std::size_t vial, double t_target);

struct HybridTraining {
    HybridMap map;
    std::vector<std::size_t> immune;   // vials left at the cap
    std::vector<double> residual;      // s, per vial
};

// Per-vial independent fits against reference drying times (s), one per vial.
HybridTraining train_hybrid(const Scenario& scenario, const std::vector<double>& t_dry,
                            const std::string& source);

// CSV "vial,row,col,R_rad_per_m2" plus a JSON sidecar at path + ".meta.json".
void write_hybrid_map(const std::string& path, const HybridMap& map);
HybridMap read_hybrid_map(const std::string& path);

struct MicrowaveData {
    double t_m = 0.0;                 // s
    double t_dry = 0.0;               // s
    std::vector<double> t;            // s, samples during sublimation
    std::vector<double> temperature;  // K
};

// Sublimation-stage samples of a simulated vial, for round trips.
MicrowaveData microwave_data_from_result(const VialResult& result);

struct MicrowaveFractions {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
};

// p3 from the sublimation temperature slope, then p1 from t_m, then p2 from t_dry.
// Uses vial 0 of the scenario without radiation coupling beyond its approach.
MicrowaveFractions fit_microwave_fractions(const MicrowaveData& data, const Scenario& scenario);

}  // namespace lyorad
