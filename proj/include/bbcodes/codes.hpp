#pragma once

// CSS codes from pairs of group-algebra elements, n-fold complexes, and
// distance estimation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbcodes/f2la.hpp"
#include "bbcodes/grouprings.hpp"

namespace bbcodes {

struct BBCodeSpec {
    RingParams params;
    RingElem c;
    RingElem d;

    BBCodeSpec(RingElem c_, RingElem d_);
    /// Convenience: parse both polynomials in the l x m ring.
    static BBCodeSpec parse(int ell, int m, const std::string& c, const std::string& d);
};

enum class Side { Horizontal, Vertical };

struct QubitLabel {
    Side side;
    int i;
    int j;
};

struct CssCode {
    BitMatrix hx;
    BitMatrix hz;
    std::vector<QubitLabel> qubit_labels;  // empty for codes without a group structure

    std::size_t n() const { return hx.cols(); }
};

/// hx = (A | B), hz = (B^T | A^T) with A, B the multiplication matrices of c, d.
CssCode build_bb(const BBCodeSpec& spec);

struct CheckSupports {
    std::vector<std::size_t> x_support;  // qubit indices
    std::vector<std::size_t> z_support;
};

/// Checks X_h and Z_h for every group element h, computed from the monomial
/// supports of c and d rather than from matrices. Entry h is at index(i, j).
std::vector<CheckSupports> group_algebra_checks(const BBCodeSpec& spec);

/// Throws std::logic_error unless hx * hz^T = 0.
void assert_css(const CssCode& code);

std::size_t logical_count(const CssCode& code);

/// Bases of logical operators: z_basis spans ker(hx) modulo rowspace(hz) and
/// x_basis spans ker(hz) modulo rowspace(hx), with z_i . x_j = delta_ij.
struct LogicalBasis {
    std::vector<BitVec> z_basis;
    std::vector<BitVec> x_basis;
};
LogicalBasis css_logical_basis(const CssCode& code);

enum class PauliType { X, Z };

struct DistanceReport {
    enum class Method { Exhaustive, Isd };
    Method method = Method::Exhaustive;
    /// Weight of the lightest logical found; nullopt when none exists within the search.
    std::optional<std::size_t> upper_bound;
    bool certified_exact = false;
    std::optional<BitVec> witness;
    PauliType witness_type = PauliType::Z;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t max_weight = 0;  // exhaustive only
};

class DistanceBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact search over all supports of weight <= max_weight, both Pauli types.
/// Refuses (throws DistanceBudgetExceeded) when sum_{w<=max_weight} C(n,w) > budget.
DistanceReport distance_exhaustive(const CssCode& code, std::size_t max_weight,
                                   std::uint64_t budget = 50'000'000);

struct IsdOptions {
    std::size_t trials = 10'000;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: hardware concurrency
    /// Skip the X side; valid when a ZX-duality maps X-logicals to Z-logicals of equal weight.
    bool z_side_only = false;
};

/// Randomized information-set search for low-weight logicals. Deterministic
/// for a fixed seed regardless of thread count.
DistanceReport distance_isd(const CssCode& code, const IsdOptions& opts);

/// splitmix64 step; also used to derive per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

struct ChainComplex {
    /// differentials[p-1] is the boundary C_p -> C_{p-1}, p = 1..n, acting on column vectors.
    std::vector<BitMatrix> differentials;
    /// Number of R-summands of C_p, p = 0..n.
    std::vector<std::size_t> ranks;
};

struct NFoldResult {
    ChainComplex complex;
    CssCode code;
    /// Relations among X-checks (boundary below) and Z-checks (boundary above), if present.
    std::optional<BitMatrix> x_meta_checks;
    std::optional<BitMatrix> z_meta_checks;
};

/// Koszul-type total complex of the two-term complexes R --c_k--> R. Qubits sit
/// in degree `position`; hx is the boundary out of it and hz the transpose of
/// the boundary into it. n = 2 reproduces build_bb(c_1, c_2).
NFoldResult build_nfold(RingParams params, const std::vector<RingElem>& elems, int position);

/// Ordered basis (as sorted index sets into elems) of degree p in build_nfold.
std::vector<std::vector<int>> nfold_basis(int n, int p);

}  // namespace bbcodes
