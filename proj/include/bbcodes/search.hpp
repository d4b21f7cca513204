#pragma once

// Enumeration of BB code candidates up to equivalence, a cheap-first filter
// cascade, and a JSON-lines record store that a rerun can resume from.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bbcodes/codes.hpp"

namespace bbcodes {

struct SearchConfig {
    int ell_min = 7;
    int ell_max = 7;
    int m_min = 7;
    int m_max = 7;
    int weight_c = 3;
    int weight_d = 3;
    std::size_t min_k = 1;
    std::size_t min_d = 0;  // compared against the ISD upper bound
    bool require_symmetric = false;
    bool require_pure = false;
    std::size_t isd_trials = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string output_path;  // empty: keep records in memory only

    /// Throws std::invalid_argument for weights < 2 or empty ranges.
    void validate() const;
};

/// Representative of (c, d) under independent shifts of c and d combined with
/// the antipode and, when l = m, the x <-> y swap: the smallest serialization
/// over the orbit, comparing c first.
std::pair<RingElem, RingElem> canonical_form(const RingElem& c, const RingElem& d);

/// a multiplied by the monomial that makes its coefficient vector smallest.
RingElem min_shift(const RingElem& a);

/// One spec per equivalence class in grid order, l then m. With require_symmetric
/// only pairs (c, c(y,x)) on square grids are produced.
std::vector<BBCodeSpec> enumerate_candidates(const SearchConfig& config);

struct SearchRecord {
    int ell = 0;
    int m = 0;
    std::string c;
    std::string d;
    std::string canonical_c;
    std::string canonical_d;
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<std::size_t> d_upper;
    bool d_certified = false;
    std::optional<bool> pure;
    std::optional<bool> principal;
    bool symmetric = false;
    std::string rejected_at;  // empty when every filter passed
    std::size_t isd_trials = 0;
    std::uint64_t seed = 0;
    std::string timestamp;

    std::string to_json_line() const;
    static SearchRecord from_json_line(const std::string& line);
    /// Field-wise equality except the timestamp.
    bool same_result(const SearchRecord& other) const;
};

/// Filters in order k, symmetry, purity, distance; stops at the first failure.
/// ISD runs with config.seed and config.isd_trials.
SearchRecord evaluate(const BBCodeSpec& spec, const SearchConfig& config);

/// Per-candidate ISD seed derived from the master seed and the canonical form.
std::uint64_t candidate_seed(std::uint64_t master, const BBCodeSpec& spec);

struct SearchSummary {
    std::size_t candidates = 0;
    std::size_t skipped = 0;  // already present in the output file
    std::vector<SearchRecord> records;  // new records, in candidate order
};

/// Evaluates every candidate not yet present in config.output_path and appends
/// one line per record there. Records are written as workers finish, so file
/// order can vary between runs; each record's content does not.
SearchSummary run_search(const SearchConfig& config);

}  // namespace bbcodes
