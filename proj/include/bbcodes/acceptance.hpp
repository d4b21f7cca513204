#pragma once

// End-to-end checks of the published examples. Expected values live in
// AcceptanceExpectations so a test can perturb one and watch the matching
// criterion fail.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bbcodes/catalog.hpp"
#include "bbcodes/f2la.hpp"

namespace bbcodes {

struct AcceptanceExpectations {
    std::vector<CatalogEntry> table;

    std::vector<std::string> isd_codes;  // names whose ISD bound must equal the table distance
    std::size_t isd_trials = 1000;
    std::size_t isd_trial_cap = 100'000;
    std::uint64_t isd_seed = 1;

    std::size_t random_specs = 200;
    int random_max_side = 8;
    std::uint64_t random_seed = 2024;

    std::vector<int> chi_98;  // exponents of the displayed chi(y)
    std::vector<int> g_98;

    BitMatrix t_98;
    std::size_t quotient_dim_162 = 4;

    // Logical matrices for [[98,6,12]], column convention, basis H_h, H_v, H*_h, H*_v.
    BitMatrix swap_x_98;
    BitMatrix swap_omega_98;
    BitMatrix h_98;
    BitMatrix cz_98;

    std::size_t order_98 = 1008;
    std::size_t order_162 = 7200;
    std::size_t suborder_162 = 60;

    std::string search_c = "x + y^3 + y^4";
    std::string search_d = "y + x^3 + x^4";

    // Wall-clock limits in seconds, indexed by criterion - 1; 0 means none.
    std::vector<double> time_limits;
};

/// The published values.
AcceptanceExpectations published_expectations();

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0;
    std::vector<std::string> failures;     // one line per failed sub-check
    std::vector<std::string> diagnostics;  // informational, never affect pass
};

inline constexpr int kCriteriaCount = 10;

/// Runs the selected criteria (all when `only` is empty) in id order. `progress`,
/// if set, is called after each criterion finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceExpectations& expect, const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& progress = {});

/// "PASS  3  Distance (0.41 s)" plus indented failure and diagnostic lines.
std::string format_result(const CriterionResult& r);

}  // namespace bbcodes
