#pragma once

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qosc::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "qosc-report/1";

// Flag values; negative or empty means "suite default".
struct Params {
    std::string eps = "0000";
    int r = 2;
    int degree = -1;
    int depth = -1;
    std::optional<int> l, m, k;
    int components = 3;
    int s = 2;
    std::string c = "1";
    std::vector<int> charges;
    std::vector<std::string> params;
    std::vector<int> remove;
    std::optional<std::string> z;
    int order = 4;
    int threads = 1;
    std::string csv;
};

// Thrown for parameter combinations a suite cannot run (exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& suite_names();
// Runs one suite (or "all") and returns its report; "pass" says whether every check held.
Json run_suite(const std::string& name, const Params& p);

}  // namespace qosc::cli
