#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lyorad/model.h"

namespace lyorad {

struct CheckRow {
    std::string item;
    std::string unit;
    double expected = 0.0;
    double lower = 0.0;     // pass when lower <= computed <= upper
    double upper = 0.0;
    double computed = 0.0;
    bool pass = false;
};

struct CriterionReport {
    int id = 0;
    std::string name;
    std::vector<CheckRow> checks;
    std::string error;      // set when the criterion could not be evaluated
    double seconds = 0.0;

    bool pass() const;
};

struct ValidationOptions {
    std::string filter;                  // criterion id or substring of its name; empty runs all
    std::optional<std::uint64_t> seed;   // overrides the Monte Carlo seed
    MaterialProperties material;         // base material for every scenario
    std::function<void(const CriterionReport&)> on_report;   // called as each criterion finishes
};

struct CriterionInfo {
    int id;
    std::string name;
};

std::vector<CriterionInfo> validation_criteria();

std::vector<CriterionReport> run_validation_suite(const ValidationOptions& options = {});

}  // namespace lyorad
