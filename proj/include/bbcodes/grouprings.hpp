#pragma once

// Arithmetic and ideal theory in R = F2[x,y]/(x^l - 1, y^m - 1), the group
// algebra of Z/l x Z/m. Elements are l x m coefficient grids flattened
// row-major: the coefficient of x^i y^j sits at index i*m + j.
//
// Over F2 every minus sign is a plus, so (c, -d) and zeta^k - 1 are written
// with '+' throughout.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bbcodes/f2la.hpp"

namespace bbcodes {

struct RingParams {
    int ell = 1;
    int m = 1;

    RingParams() = default;
    RingParams(int ell_, int m_);

    std::size_t size() const { return static_cast<std::size_t>(ell) * static_cast<std::size_t>(m); }
    /// Index of x^i y^j with exponents reduced into range.
    std::size_t index(long i, long j) const;
    int x_exp(std::size_t index) const { return static_cast<int>(index / static_cast<std::size_t>(m)); }
    int y_exp(std::size_t index) const { return static_cast<int>(index % static_cast<std::size_t>(m)); }

    friend bool operator==(const RingParams&, const RingParams&) = default;
};

struct Monomial {
    long x = 0;
    long y = 0;
};

class RingElem {
public:
    explicit RingElem(RingParams params) : params_(params), coeffs_(params.size()) {}
    RingElem(RingParams params, BitVec coeffs);

    static RingElem zero(RingParams p) { return RingElem(p); }
    static RingElem one(RingParams p) { return monomial(p, 0, 0); }
    static RingElem monomial(RingParams p, long i, long j);
    /// Sum of monomials; repeated monomials cancel in pairs.
    static RingElem from_monomials(RingParams p, const std::vector<Monomial>& terms);

    const RingParams& params() const { return params_; }
    const BitVec& coeffs() const { return coeffs_; }

    bool get(long i, long j) const { return coeffs_.get(params_.index(i, j)); }
    void flip(long i, long j) { coeffs_.flip(params_.index(i, j)); }
    std::size_t weight() const { return coeffs_.popcount(); }
    bool is_zero() const { return coeffs_.none(); }
    std::vector<Monomial> support() const;

    /// this * x^a y^b
    RingElem shifted(long a, long b) const;

    RingElem& operator+=(const RingElem& other);
    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator*(const RingElem& a, const RingElem& b);
    friend bool operator==(const RingElem&, const RingElem&) = default;

    /// Canonical text, ascending x-degree then y-degree, e.g. "y^3 + y^4 + x".
    std::string to_string() const;

private:
    void require_same_ring(const RingElem& other) const;

    RingParams params_;
    BitVec coeffs_;
};

/// Error from the polynomial text grammar; `column` is 1-based.
class PolyParseError : public std::runtime_error {
public:
    PolyParseError(const std::string& message, std::size_t column, std::string token)
        : std::runtime_error(message), column_(column), token_(std::move(token)) {}
    std::size_t column() const { return column_; }
    const std::string& token() const { return token_; }

private:
    std::size_t column_;
    std::string token_;
};

/// Parses sums of monomials such as "x + y^3 + y^4", "1 + x^2y", "x^-1*y^2", "0".
RingElem parse_ring_elem(RingParams p, std::string_view text);

/// Matrix of r -> a*r on column vectors in the monomial basis.
BitMatrix mul_matrix(const RingElem& a);

/// Ring automorphisms induced by group maps, plus shifts (multiplication by a
/// monomial, an automorphism of R as a module rather than as a ring).
class RingAutomorphism {
public:
    enum class Kind { Shift, Antipode, SwapXY, Composite };

    static RingAutomorphism shift(long a, long b);
    static RingAutomorphism antipode();
    static RingAutomorphism swap_xy();
    /// first applied, then second.
    static RingAutomorphism compose(const RingAutomorphism& first, const RingAutomorphism& second);

    Kind kind() const { return kind_; }
    /// Image of the monomial x^i y^j, reduced.
    Monomial map_monomial(const RingParams& p, long i, long j) const;
    RingElem apply(const RingElem& a) const;
    std::string describe() const;

private:
    struct Step {
        Kind kind;
        long a = 0;
        long b = 0;
    };
    Kind kind_ = Kind::Composite;
    std::vector<Step> steps_;
};

RingElem apply_automorphism(const RingAutomorphism& phi, const RingElem& a);

/// Ideal of R stored as an F2-subspace in canonical RREF.
class Ideal {
public:
    Ideal(RingParams p, Subspace space);

    static Ideal zero(RingParams p) { return Ideal(p, Subspace(p.size())); }
    static Ideal unit(RingParams p) { return Ideal(p, Subspace::full(p.size())); }

    const RingParams& params() const { return params_; }
    const Subspace& space() const { return space_; }
    std::size_t dim() const { return space_.dim(); }
    bool contains(const RingElem& a) const { return space_.contains(a.coeffs()); }
    std::vector<RingElem> basis() const;
    /// Shifting every basis vector by x and by y stays inside the space.
    bool is_closed() const;

    Ideal sum(const Ideal& other) const;
    Ideal intersection(const Ideal& other) const;

    friend bool operator==(const Ideal& a, const Ideal& b) {
        return a.params_ == b.params_ && a.space_ == b.space_;
    }

private:
    RingParams params_;
    Subspace space_;
};

Ideal ideal_generated(RingParams p, const std::vector<RingElem>& generators);
Ideal ideal_generated(const RingElem& generator);
Ideal annihilator(const RingElem& a);
Ideal ideal_product(const Ideal& a, const Ideal& b);
/// {r in R : r*a in target}
Ideal colon(const Ideal& target, const RingElem& a);

std::size_t quotient_dim(const Ideal& ideal);
std::size_t quotient_dim_by_elems(RingParams p, const std::vector<RingElem>& generators);

/// The nilradical of R, generated by x^l' + 1 and y^m' + 1 for the odd parts l', m'.
Ideal radical(RingParams p);

/// Nakayama test: I is principal iff I/JI is a cyclic module over the
/// semisimple ring R/J, i.e. dim(I/JI) = dim(R/ann(I/JI)).
bool is_principal_ideal(const Ideal& ideal);

struct PrincipalSearchOptions {
    std::size_t pair_candidates = 4096;
    std::size_t random_candidates = 4096;
    std::size_t exhaustive_max_dim = 24;
    std::uint64_t seed = 0x5eed;
};

struct PrincipalSearchResult {
    enum class Status { Found, Absent, Unknown };
    Status status = Status::Unknown;
    std::optional<RingElem> generator;
    std::string method;  // which search phase produced the witness or verdict
};

PrincipalSearchResult find_principal_generator(const Ideal& ideal, const PrincipalSearchOptions& opts = {});

/// Multiset (sorted) of extension degrees n_i with R = (+) F_{2^{n_i}}; requires odd l and m.
std::vector<int> semisimple_decomposition(RingParams p);

/// Extension degrees of the semisimple quotient R/I, computed from the dimensions
/// of the Frobenius fixed spaces of R/I. Throws if R/I is not semisimple.
std::vector<int> quotient_field_degrees(const Ideal& ideal);

// --- univariate polynomials over F2 -------------------------------------

/// Dense polynomial in F2[t]; coefficient i at bit i, no trailing zeros.
class Gf2Poly {
public:
    Gf2Poly() = default;
    static Gf2Poly from_exponents(const std::vector<int>& exps);
    static Gf2Poly monomial(int degree);
    /// t^n + 1
    static Gf2Poly cyclic_modulus(int n);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    bool coeff(int i) const { return i >= 0 && i < static_cast<int>(coeffs_.size()) && coeffs_[i]; }
    std::vector<int> exponents() const;
    std::size_t weight() const;

    friend Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b);
    friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
    friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

    /// (quotient, remainder)
    std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& divisor) const;
    Gf2Poly mod(const Gf2Poly& divisor) const { return divmod(divisor).second; }
    /// Reduce modulo t^n + 1.
    Gf2Poly reduce_cyclic(int n) const;
    std::string to_string(char var = 'y') const;

private:
    void trim();
    std::vector<std::uint8_t> coeffs_;
};

Gf2Poly gcd(Gf2Poly a, Gf2Poly b);
Gf2Poly pow_mod_cyclic(const Gf2Poly& base, int exponent, int n);

/// Embeds a univariate polynomial in y (or x) into R.
RingElem embed_y(RingParams p, const Gf2Poly& poly);
RingElem embed_x(RingParams p, const Gf2Poly& poly);

/// Euler's totient and multiplicative order of 2 modulo n (odd n; ord of 1 is 1).
int euler_phi(int n);
int order_of_two(int n);

}  // namespace bbcodes
