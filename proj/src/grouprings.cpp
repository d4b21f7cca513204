#include "bbcodes/grouprings.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <numeric>
#include <random>

namespace bbcodes {

namespace {

long reduce_mod(long v, long n) {
    long r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// RingParams / RingElem

RingParams::RingParams(int ell_, int m_) : ell(ell_), m(m_) {
    if (ell_ < 1 || m_ < 1) {
        throw std::invalid_argument("ring dimensions must be positive, got l=" + std::to_string(ell_) +
                                    " m=" + std::to_string(m_));
    }
}

std::size_t RingParams::index(long i, long j) const {
    return static_cast<std::size_t>(reduce_mod(i, ell)) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(reduce_mod(j, m));
}

RingElem::RingElem(RingParams params, BitVec coeffs) : params_(params), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != params_.size()) {
        throw std::invalid_argument("coefficient vector length does not match ring size");
    }
}

RingElem RingElem::monomial(RingParams p, long i, long j) {
    RingElem e(p);
    e.flip(i, j);
    return e;
}

RingElem RingElem::from_monomials(RingParams p, const std::vector<Monomial>& terms) {
    RingElem e(p);
    for (const auto& t : terms) {
        e.flip(t.x, t.y);
    }
    return e;
}

std::vector<Monomial> RingElem::support() const {
    std::vector<Monomial> out;
    for (std::size_t idx : coeffs_.support()) {
        out.push_back({params_.x_exp(idx), params_.y_exp(idx)});
    }
    return out;
}

RingElem RingElem::shifted(long a, long b) const {
    RingElem out(params_);
    for (std::size_t idx : coeffs_.support()) {
        out.coeffs_.set(params_.index(params_.x_exp(idx) + a, params_.y_exp(idx) + b));
    }
    return out;
}

void RingElem::require_same_ring(const RingElem& other) const {
    if (!(params_ == other.params_)) {
        throw std::invalid_argument("ring elements live in different rings");
    }
}

RingElem& RingElem::operator+=(const RingElem& other) {
    require_same_ring(other);
    coeffs_ ^= other.coeffs_;
    return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
    a.require_same_ring(b);
    const RingElem& sparse = a.weight() <= b.weight() ? a : b;
    const RingElem& dense = a.weight() <= b.weight() ? b : a;
    RingElem out(a.params_);
    for (const auto& mono : sparse.support()) {
        out += dense.shifted(mono.x, mono.y);
    }
    return out;
}

std::string RingElem::to_string() const {
    if (is_zero()) {
        return "0";
    }
    std::string s;
    for (const auto& mono : support()) {
        if (!s.empty()) {
            s += " + ";
        }
        std::string term;
        if (mono.x == 1) {
            term += "x";
        } else if (mono.x > 1) {
            term += "x^" + std::to_string(mono.x);
        }
        if (mono.y > 0) {
            if (!term.empty()) {
                term += "*";
            }
            term += mono.y == 1 ? "y" : "y^" + std::to_string(mono.y);
        }
        s += term.empty() ? "1" : term;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Text grammar
//
//   poly := term ('+' term)*
//   term := '0' | '1' | factor (['*'] factor)*
//   factor := ('x' | 'y') ['^' ['('] ['-'] digits [')']]

namespace {

class PolyParser {
public:
    PolyParser(RingParams p, std::string_view text) : params_(p), text_(text) {}

    RingElem parse() {
        RingElem result(params_);
        skip_ws();
        if (at_end()) {
            fail("empty polynomial");
        }
        result += parse_term();
        skip_ws();
        while (!at_end()) {
            if (peek() != '+') {
                fail("expected '+' between terms");
            }
            ++pos_;
            skip_ws();
            if (at_end()) {
                fail("dangling '+' at end of polynomial");
            }
            result += parse_term();
            skip_ws();
        }
        return result;
    }

private:
    RingElem parse_term() {
        if (peek() == '0' || peek() == '1') {
            char digit = peek();
            ++pos_;
            if (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) {
                fail("constant must be 0 or 1");
            }
            return digit == '1' ? RingElem::one(params_) : RingElem::zero(params_);
        }
        long ex = 0;
        long ey = 0;
        bool saw_factor = false;
        while (!at_end()) {
            skip_ws();
            if (at_end()) {
                break;
            }
            char c = peek();
            if (c == '*') {
                if (!saw_factor) {
                    fail("'*' without a preceding factor");
                }
                ++pos_;
                skip_ws();
                c = at_end() ? '\0' : peek();
                if (c != 'x' && c != 'y') {
                    fail("expected 'x' or 'y' after '*'");
                }
            }
            if (c != 'x' && c != 'y') {
                break;
            }
            ++pos_;
            long e = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                ++pos_;
                e = parse_exponent();
            }
            (c == 'x' ? ex : ey) += e;
            saw_factor = true;
        }
        if (!saw_factor) {
            fail("expected a monomial");
        }
        return RingElem::monomial(params_, ex, ey);
    }

    long parse_exponent() {
        skip_ws();
        bool paren = false;
        if (!at_end() && peek() == '(') {
            paren = true;
            ++pos_;
            skip_ws();
        }
        bool negative = false;
        if (!at_end() && peek() == '-') {
            negative = true;
            ++pos_;
        }
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer exponent");
        }
        long value = std::stol(std::string(text_.substr(start, pos_ - start)));
        if (paren) {
            skip_ws();
            if (at_end() || peek() != ')') {
                fail("missing ')' after exponent");
            }
            ++pos_;
        }
        return negative ? -value : value;
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::size_t end = pos_;
        while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) && text_[end] != '+') {
            ++end;
        }
        std::string token = pos_ < text_.size() ? std::string(text_.substr(pos_, std::max<std::size_t>(1, end - pos_)))
                                                : std::string("<end>");
        throw PolyParseError(what + " at column " + std::to_string(pos_ + 1) + " near '" + token + "'", pos_ + 1,
                             token);
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    RingParams params_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

RingElem parse_ring_elem(RingParams p, std::string_view text) { return PolyParser(p, text).parse(); }

// ---------------------------------------------------------------------------

BitMatrix mul_matrix(const RingElem& a) {
    // Entry (r, c) is the coefficient of a at r - c, so row r is the antipode
    // of a shifted by the monomial r.
    const RingParams& p = a.params();
    RingElem reversed = RingAutomorphism::antipode().apply(a);
    BitMatrix out(0, p.size());
    for (std::size_t r = 0; r < p.size(); ++r) {
        out.append_row(reversed.shifted(p.x_exp(r), p.y_exp(r)).coeffs());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Automorphisms

RingAutomorphism RingAutomorphism::shift(long a, long b) {
    RingAutomorphism phi;
    phi.kind_ = Kind::Shift;
    phi.steps_.push_back({Kind::Shift, a, b});
    return phi;
}

RingAutomorphism RingAutomorphism::antipode() {
    RingAutomorphism phi;
    phi.kind_ = Kind::Antipode;
    phi.steps_.push_back({Kind::Antipode});
    return phi;
}

RingAutomorphism RingAutomorphism::swap_xy() {
    RingAutomorphism phi;
    phi.kind_ = Kind::SwapXY;
    phi.steps_.push_back({Kind::SwapXY});
    return phi;
}

RingAutomorphism RingAutomorphism::compose(const RingAutomorphism& first, const RingAutomorphism& second) {
    RingAutomorphism phi;
    phi.kind_ = Kind::Composite;
    phi.steps_ = first.steps_;
    phi.steps_.insert(phi.steps_.end(), second.steps_.begin(), second.steps_.end());
    return phi;
}

Monomial RingAutomorphism::map_monomial(const RingParams& p, long i, long j) const {
    for (const auto& step : steps_) {
        switch (step.kind) {
            case Kind::Shift:
                i += step.a;
                j += step.b;
                break;
            case Kind::Antipode:
                i = -i;
                j = -j;
                break;
            case Kind::SwapXY:
                if (p.ell != p.m) {
                    throw std::invalid_argument("swap of x and y requires l == m (got l=" + std::to_string(p.ell) +
                                                ", m=" + std::to_string(p.m) + ")");
                }
                std::swap(i, j);
                break;
            case Kind::Composite:
                break;
        }
    }
    return {reduce_mod(i, p.ell), reduce_mod(j, p.m)};
}

RingElem RingAutomorphism::apply(const RingElem& a) const {
    const RingParams& p = a.params();
    RingElem out(p);
    for (const auto& mono : a.support()) {
        Monomial img = map_monomial(p, mono.x, mono.y);
        out.flip(img.x, img.y);
    }
    return out;
}

std::string RingAutomorphism::describe() const {
    std::string s;
    for (const auto& step : steps_) {
        if (!s.empty()) {
            s += " then ";
        }
        switch (step.kind) {
            case Kind::Shift:
                s += "shift(" + std::to_string(step.a) + "," + std::to_string(step.b) + ")";
                break;
            case Kind::Antipode:
                s += "antipode";
                break;
            case Kind::SwapXY:
                s += "swap_xy";
                break;
            case Kind::Composite:
                break;
        }
    }
    return s.empty() ? "identity" : s;
}

RingElem apply_automorphism(const RingAutomorphism& phi, const RingElem& a) { return phi.apply(a); }

// ---------------------------------------------------------------------------
// Ideals

Ideal::Ideal(RingParams p, Subspace space) : params_(p), space_(std::move(space)) {
    if (space_.ambient_dim() != p.size()) {
        throw std::invalid_argument("ideal subspace has the wrong ambient dimension");
    }
}

std::vector<RingElem> Ideal::basis() const {
    std::vector<RingElem> out;
    for (const auto& row : space_.basis().row_vectors()) {
        out.emplace_back(params_, row);
    }
    return out;
}

bool Ideal::is_closed() const {
    for (const auto& b : basis()) {
        if (!contains(b.shifted(1, 0)) || !contains(b.shifted(0, 1))) {
            return false;
        }
    }
    return true;
}

Ideal Ideal::sum(const Ideal& other) const { return Ideal(params_, space_.sum(other.space_)); }

Ideal Ideal::intersection(const Ideal& other) const { return Ideal(params_, space_.intersection(other.space_)); }

Ideal ideal_generated(RingParams p, const std::vector<RingElem>& generators) {
    EchelonBasis span(p.size());
    for (const auto& g : generators) {
        if (g.is_zero()) {
            continue;
        }
        for (std::size_t idx = 0; idx < p.size() && span.dim() < p.size(); ++idx) {
            span.insert(g.shifted(p.x_exp(idx), p.y_exp(idx)).coeffs());
        }
    }
    return Ideal(p, Subspace::span(p.size(), span.rows()));
}

Ideal ideal_generated(const RingElem& generator) { return ideal_generated(generator.params(), {generator}); }

Ideal annihilator(const RingElem& a) { return Ideal(a.params(), kernel_basis(mul_matrix(a))); }

Ideal ideal_product(const Ideal& a, const Ideal& b) {
    if (!(a.params() == b.params())) {
        throw std::invalid_argument("ideal product of ideals in different rings");
    }
    const RingParams& p = a.params();
    EchelonBasis span(p.size());
    // Both factors are shift-closed, so products of basis elements span IJ.
    const auto left = a.basis();
    const auto right = b.basis();
    for (const auto& f : left) {
        BitMatrix shifts = mul_matrix(f).transpose();  // row k = f * monomial k
        for (const auto& g : right) {
            BitVec prod(p.size());
            for (std::size_t k : g.coeffs().support()) {
                prod ^= shifts.row(k);
            }
            span.insert(prod);
            if (span.dim() == p.size()) {
                return Ideal::unit(p);
            }
        }
    }
    return Ideal(p, Subspace::span(p.size(), span.rows()));
}

Ideal colon(const Ideal& target, const RingElem& a) {
    const RingParams& p = a.params();
    return Ideal(p, preimage(mul_matrix(a), Subspace::full(p.size()), target.space()));
}

std::size_t quotient_dim(const Ideal& ideal) { return ideal.params().size() - ideal.dim(); }

std::size_t quotient_dim_by_elems(RingParams p, const std::vector<RingElem>& generators) {
    return quotient_dim(ideal_generated(p, generators));
}

Ideal radical(RingParams p) {
    int odd_ell = p.ell;
    while (odd_ell % 2 == 0) {
        odd_ell /= 2;
    }
    int odd_m = p.m;
    while (odd_m % 2 == 0) {
        odd_m /= 2;
    }
    RingElem gx = RingElem::monomial(p, odd_ell, 0) + RingElem::one(p);
    RingElem gy = RingElem::monomial(p, 0, odd_m) + RingElem::one(p);
    return ideal_generated(p, {gx, gy});
}

bool is_principal_ideal(const Ideal& ideal) {
    const RingParams& p = ideal.params();
    if (ideal.dim() == 0) {
        return true;
    }
    Ideal rad_times = ideal_product(radical(p), ideal);
    const std::size_t top_dim = ideal.dim() - rad_times.dim();
    if (top_dim == 0) {
        return true;  // unreachable for nonzero ideals (Nakayama), kept for clarity
    }
    // ann(I/JI) = {r : r b in JI for all basis b}; w . (b r) = (iota(b) w) . r.
    Subspace checks = rad_times.space().orthogonal_complement();
    RingAutomorphism iota = RingAutomorphism::antipode();
    EchelonBasis conditions(p.size());
    for (const auto& b : ideal.basis()) {
        RingElem rb = iota.apply(b);
        for (const auto& w : checks.basis().row_vectors()) {
            conditions.insert((rb * RingElem(p, w)).coeffs());
            if (conditions.dim() == p.size()) {
                break;
            }
        }
    }
    // dim R/ann = rank of the condition system.
    return top_dim == conditions.dim();
}

namespace {

bool generates(const RingElem& candidate, std::size_t target_dim) {
    return rank(mul_matrix(candidate)) == target_dim;
}

}  // namespace

PrincipalSearchResult find_principal_generator(const Ideal& ideal, const PrincipalSearchOptions& opts) {
    const RingParams& p = ideal.params();
    PrincipalSearchResult result;
    if (ideal.dim() == 0) {
        result.status = PrincipalSearchResult::Status::Found;
        result.generator = RingElem::zero(p);
        result.method = "zero ideal";
        return result;
    }
    if (!is_principal_ideal(ideal)) {
        result.status = PrincipalSearchResult::Status::Absent;
        result.method = "not cyclic modulo the radical";
        return result;
    }

    const std::size_t target = ideal.dim();
    auto by_weight = [](const BitVec& a, const BitVec& b) {
        std::size_t wa = a.popcount();
        std::size_t wb = b.popcount();
        return wa != wb ? wa < wb : a < b;
    };
    auto try_list = [&](std::vector<BitVec> candidates, const char* phase) -> bool {
        std::sort(candidates.begin(), candidates.end(), by_weight);
        for (auto& c : candidates) {
            RingElem e(p, std::move(c));
            if (generates(e, target)) {
                result.status = PrincipalSearchResult::Status::Found;
                result.generator = std::move(e);
                result.method = phase;
                return true;
            }
        }
        return false;
    };

    const auto& rows = ideal.space().basis().row_vectors();
    if (try_list(rows, "basis element")) {
        return result;
    }

    std::vector<BitVec> pairs;
    for (std::size_t i = 0; i < rows.size() && pairs.size() < opts.pair_candidates; ++i) {
        for (std::size_t j = i + 1; j < rows.size() && pairs.size() < opts.pair_candidates; ++j) {
            pairs.push_back(rows[i] ^ rows[j]);
        }
    }
    if (try_list(std::move(pairs), "pair of basis elements")) {
        return result;
    }

    std::mt19937_64 rng(opts.seed);
    std::vector<BitVec> randoms;
    for (std::size_t t = 0; t < opts.random_candidates; ++t) {
        BitVec v(p.size());
        for (const auto& r : rows) {
            if (rng() & 1U) {
                v ^= r;
            }
        }
        if (v.any()) {
            randoms.push_back(std::move(v));
        }
    }
    if (try_list(std::move(randoms), "random combination")) {
        return result;
    }

    if (rows.size() <= opts.exhaustive_max_dim) {
        // Gray-code walk over every nonzero element of the ideal.
        BitVec v(p.size());
        const std::uint64_t total = std::uint64_t{1} << rows.size();
        for (std::uint64_t step = 1; step < total; ++step) {
            v ^= rows[static_cast<std::size_t>(std::countr_zero(step))];
            RingElem e(p, v);
            if (generates(e, target)) {
                result.status = PrincipalSearchResult::Status::Found;
                result.generator = std::move(e);
                result.method = "exhaustive";
                return result;
            }
        }
        // Nakayama says a generator exists; reaching here would be a bug.
        throw std::logic_error("principal ideal without a generator after exhaustive search");
    }
    result.status = PrincipalSearchResult::Status::Unknown;
    result.method = "search budget exhausted";
    return result;
}

// ---------------------------------------------------------------------------
// Semisimple structure

int euler_phi(int n) {
    int result = n;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            while (n % q == 0) {
                n /= q;
            }
            result -= result / q;
        }
    }
    if (n > 1) {
        result -= result / n;
    }
    return result;
}

int order_of_two(int n) {
    if (n % 2 == 0) {
        throw std::invalid_argument("order of 2 modulo an even number is undefined");
    }
    if (n == 1) {
        return 1;
    }
    int k = 1;
    long v = 2 % n;
    while (v != 1) {
        v = (v * 2) % n;
        ++k;
    }
    return k;
}

std::vector<int> semisimple_decomposition(RingParams p) {
    if (p.ell % 2 == 0 || p.m % 2 == 0) {
        throw std::invalid_argument("semisimple decomposition needs odd l and m (got l=" + std::to_string(p.ell) +
                                    ", m=" + std::to_string(p.m) + ")");
    }
    // F2[x]/(x^n - 1) = (+)_{e | n} F_{2^ord_e(2)}^{phi(e)/ord_e(2)} and
    // F_{2^a} (x) F_{2^b} = F_{2^lcm(a,b)}^{gcd(a,b)}.
    std::vector<int> degrees;
    for (int e = 1; e <= p.ell; ++e) {
        if (p.ell % e != 0) {
            continue;
        }
        int a = order_of_two(e);
        int count_a = euler_phi(e) / a;
        for (int f = 1; f <= p.m; ++f) {
            if (p.m % f != 0) {
                continue;
            }
            int b = order_of_two(f);
            int count_b = euler_phi(f) / b;
            int copies = count_a * count_b * std::gcd(a, b);
            for (int c = 0; c < copies; ++c) {
                degrees.push_back(std::lcm(a, b));
            }
        }
    }
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

namespace {

int mobius(int n) {
    int result = 1;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            n /= q;
            if (n % q == 0) {
                return 0;
            }
            result = -result;
        }
    }
    if (n > 1) {
        result = -result;
    }
    return result;
}

}  // namespace

std::vector<int> quotient_field_degrees(const Ideal& ideal) {
    const RingParams& p = ideal.params();
    const std::size_t n = p.size();
    const std::size_t quotient = quotient_dim(ideal);
    if (quotient == 0) {
        return {};
    }
    // Frobenius r -> r^2 permutes monomials: x^i y^j -> x^2i y^2j.
    std::vector<std::size_t> frob(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        frob[idx] = p.index(2L * p.x_exp(idx), 2L * p.y_exp(idx));
    }
    // fixed[j] = dim of the fixed space of Frobenius^j on R/I = sum_i gcd(j, n_i).
    const int max_degree = static_cast<int>(quotient);
    std::vector<long> fixed(static_cast<std::size_t>(max_degree) + 1, 0);
    std::vector<std::size_t> power(n);
    std::iota(power.begin(), power.end(), std::size_t{0});
    const Subspace full = Subspace::full(n);
    for (int j = 1; j <= max_degree; ++j) {
        for (auto& v : power) {
            v = frob[v];
        }
        BitMatrix map(n, n);
        for (std::size_t idx = 0; idx < n; ++idx) {
            map.set(power[idx], idx);
            map.row(idx).flip(idx);
        }
        Subspace pre = preimage(map, full, ideal.space());
        fixed[static_cast<std::size_t>(j)] = static_cast<long>(pre.dim() - ideal.dim());
    }
    // fixed(j) = sum_{e | j} phi(e) D(e) with D(e) = #components of degree divisible by e.
    std::vector<long> divisible(static_cast<std::size_t>(max_degree) + 1, 0);
    for (int e = 1; e <= max_degree; ++e) {
        long acc = 0;
        for (int t = 1; t <= e; ++t) {
            if (e % t == 0) {
                acc += mobius(e / t) * fixed[static_cast<std::size_t>(t)];
            }
        }
        if (acc % euler_phi(e) != 0) {
            throw std::invalid_argument("quotient ring is not semisimple");
        }
        divisible[static_cast<std::size_t>(e)] = acc / euler_phi(e);
    }
    std::vector<int> degrees;
    std::size_t total = 0;
    for (int d = 1; d <= max_degree; ++d) {
        long count = 0;
        for (int t = 1; d * t <= max_degree; ++t) {
            count += mobius(t) * divisible[static_cast<std::size_t>(d * t)];
        }
        if (count < 0) {
            throw std::invalid_argument("quotient ring is not semisimple");
        }
        for (long c = 0; c < count; ++c) {
            degrees.push_back(d);
            total += static_cast<std::size_t>(d);
        }
    }
    if (total != quotient) {
        throw std::invalid_argument("quotient ring is not semisimple");
    }
    return degrees;
}

// ---------------------------------------------------------------------------
// Gf2Poly

Gf2Poly Gf2Poly::from_exponents(const std::vector<int>& exps) {
    Gf2Poly p;
    for (int e : exps) {
        if (e < 0) {
            throw std::invalid_argument("negative exponent in univariate polynomial");
        }
        if (static_cast<std::size_t>(e) >= p.coeffs_.size()) {
            p.coeffs_.resize(static_cast<std::size_t>(e) + 1, 0);
        }
        p.coeffs_[static_cast<std::size_t>(e)] ^= 1;
    }
    p.trim();
    return p;
}

Gf2Poly Gf2Poly::monomial(int degree) { return from_exponents({degree}); }

Gf2Poly Gf2Poly::cyclic_modulus(int n) { return from_exponents({0, n}); }

std::vector<int> Gf2Poly::exponents() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i]) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

std::size_t Gf2Poly::weight() const {
    return static_cast<std::size_t>(std::count(coeffs_.begin(), coeffs_.end(), std::uint8_t{1}));
}

void Gf2Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly out;
    out.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        out.coeffs_[i] ^= a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
        out.coeffs_[i] ^= b.coeffs_[i];
    }
    out.trim();
    return out;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly out;
    if (a.is_zero() || b.is_zero()) {
        return out;
    }
    out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (!a.coeffs_[i]) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out.coeffs_[i + j] ^= b.coeffs_[j];
        }
    }
    out.trim();
    return out;
}

std::pair<Gf2Poly, Gf2Poly> Gf2Poly::divmod(const Gf2Poly& divisor) const {
    if (divisor.is_zero()) {
        throw std::invalid_argument("polynomial division by zero");
    }
    Gf2Poly rem = *this;
    Gf2Poly quot;
    const int dd = divisor.degree();
    if (rem.degree() >= dd) {
        quot.coeffs_.assign(static_cast<std::size_t>(rem.degree() - dd + 1), 0);
    }
    while (!rem.is_zero() && rem.degree() >= dd) {
        const int shift = rem.degree() - dd;
        quot.coeffs_[static_cast<std::size_t>(shift)] ^= 1;
        for (std::size_t j = 0; j < divisor.coeffs_.size(); ++j) {
            rem.coeffs_[j + static_cast<std::size_t>(shift)] ^= divisor.coeffs_[j];
        }
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

Gf2Poly Gf2Poly::reduce_cyclic(int n) const {
    Gf2Poly out;
    for (int e : exponents()) {
        out = out + monomial(e % n);
    }
    return out;
}

std::string Gf2Poly::to_string(char var) const {
    if (is_zero()) {
        return "0";
    }
    std::string s;
    for (int e : exponents()) {
        if (!s.empty()) {
            s += " + ";
        }
        if (e == 0) {
            s += "1";
        } else if (e == 1) {
            s += var;
        } else {
            s += std::string(1, var) + "^" + std::to_string(e);
        }
    }
    return s;
}

Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
    while (!b.is_zero()) {
        Gf2Poly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Gf2Poly pow_mod_cyclic(const Gf2Poly& base, int exponent, int n) {
    Gf2Poly result = Gf2Poly::monomial(0);
    Gf2Poly b = base.reduce_cyclic(n);
    while (exponent > 0) {
        if (exponent & 1) {
            result = (result * b).reduce_cyclic(n);
        }
        b = (b * b).reduce_cyclic(n);
        exponent >>= 1;
    }
    return result;
}

RingElem embed_y(RingParams p, const Gf2Poly& poly) {
    RingElem out(p);
    for (int e : poly.exponents()) {
        out.flip(0, e);
    }
    return out;
}

RingElem embed_x(RingParams p, const Gf2Poly& poly) {
    RingElem out(p);
    for (int e : poly.exponents()) {
        out.flip(e, 0);
    }
    return out;
}

}  // namespace bbcodes
