#pragma once

// Homology of C(c,d): R --(d,c)--> R_h + R_v --(c,d)--> R.
// Z-type logicals are cycles [f, g] with cf = dg; X-type logicals live in the
// dual complex, pairs [F, G] with iota(d) F = iota(c) G.

#include <optional>
#include <string>
#include <vector>

#include "bbcodes/codes.hpp"
#include "bbcodes/grouprings.hpp"

namespace bbcodes {

struct LogicalClass {
    RingElem f;  // horizontal part
    RingElem g;  // vertical part

    /// Qubit vector: horizontal qubits first.
    BitVec vec() const;
    static LogicalClass from_vec(RingParams p, const BitVec& v);
};

struct HomologySpace {
    Subspace cycles;
    Subspace boundaries;
    std::size_t k = 0;
};

HomologySpace homology_space(const BBCodeSpec& spec);

struct PurityReport {
    bool pure = false;
    bool direct_sum = false;
    std::size_t dim_intersection_mod_product = 0;  // (c) cap (d) / (cd)
    std::size_t dim_ann_cd_mod_m = 0;              // ann(cd) / M
    std::size_t dim_ann_c_mod = 0;                 // ann(c) / ann(c)(d)
    std::size_t dim_ann_d_mod = 0;                 // ann(d) / (c)ann(d)
    std::size_t dim_h = 0;
};

/// One-sided form: M = {r in ann(cd) : rd in ann(c) d}.
Ideal tor2_submodule(const RingElem& c, const RingElem& d);

/// Throws std::logic_error if the exactness identity fails.
PurityReport purity_check(const BBCodeSpec& spec);

struct PrincipalityReport {
    enum class Status { Principal, NotPrincipal, Unknown };
    Status status = Status::Unknown;
    bool pure = false;
    PrincipalSearchResult ann_c;
    PrincipalSearchResult ann_d;
    std::optional<RingElem> p;
    std::optional<RingElem> q;
};

PrincipalityReport principality_check(const BBCodeSpec& spec);

enum class Axis { X, Y };

struct SemiperiodicData {
    Axis axis = Axis::X;  // c = x^k + zeta(y) for X, c = y^k + zeta(x) for Y
    int k = 0;
    int kprime = 0;
    Gf2Poly zeta;
    Gf2Poly chi;        // zeta^k' + 1, reduced modulo t^n - 1
    Gf2Poly chi_gcd;    // gcd(chi, t^n - 1)
    Gf2Poly g;          // (t^n - 1) / chi_gcd
    RingElem p{RingParams()};  // sum_{i<k'} x^{l - ik} zeta^i g
    bool degenerate = false;  // zeta = 0, so c is a unit and P = 0
    std::optional<std::size_t> d_chi;  // minimum distance of the cyclic code (g); unset if too large to enumerate
};

/// Throws std::invalid_argument naming the violated shape if c is not semiperiodic along `axis`.
SemiperiodicData semiperiodic_generator(const RingElem& c, Axis axis = Axis::X);

/// Tries the x-form first, then the y-form.
std::optional<SemiperiodicData> detect_semiperiodic(const RingElem& c);

/// Exact minimum weight of a nonzero element of the ideal, or nullopt if dim > max_dim.
std::optional<std::size_t> min_weight(const Ideal& ideal, std::size_t max_dim = 20);

/// min over 0 != a in (g) of sum_{i<k'} |zeta^i a|, or nullopt if dim (g) > max_dim.
std::optional<std::size_t> semiperiodic_distance(const SemiperiodicData& data, int n, std::size_t max_dim = 20);

struct PureLogicalBasis {
    std::vector<LogicalClass> z_basis;
    std::vector<LogicalClass> x_basis;
    /// pairing(i, j) = z_i . x_j
    BitMatrix pairing;
    std::size_t horizontal_count = 0;  // z_basis[0..h) are horizontal
    RingElem p;
    RingElem q;
    std::vector<RingElem> h_multipliers;
    std::vector<RingElem> v_multipliers;
};

/// Optional explicit choices; unset fields fall back to the generic procedure.
struct BasisFixture {
    std::optional<RingElem> p;
    std::optional<RingElem> q;
    std::vector<RingElem> h_multipliers;
    std::vector<RingElem> v_multipliers;
    /// Used verbatim (no Gram correction) when present.
    std::optional<std::vector<LogicalClass>> x_basis;
};

/// Monomials, greedily in index order, whose classes form a basis of R/(c,d).
std::vector<RingElem> monomial_coset_representatives(const BBCodeSpec& spec);

/// Z-basis [f_i P, 0], [0, f_i Q]; X-basis from tau_0 images made dual by the
/// inverse Gram matrix. Throws if the code is not pure and principal.
PureLogicalBasis pure_logical_basis(const BBCodeSpec& spec, const BasisFixture& fixture = {});

/// tau_0 on classes: Z-logical [f, g] -> X-logical [iota(g), iota(f)].
LogicalClass tau0_dual(const LogicalClass& z);

/// Column j: coordinates of x^a y^b z_j in the Z-basis, read off against x_basis.
BitMatrix logical_action_of_multiplication(const PureLogicalBasis& basis, long a, long b);

/// Coordinates of a Z-type cycle against the X-basis.
BitVec z_coordinates(const PureLogicalBasis& basis, const BitVec& cycle);

}  // namespace bbcodes
