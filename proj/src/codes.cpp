#include "bbcodes/codes.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <thread>
#include <tuple>

namespace bbcodes {

BBCodeSpec::BBCodeSpec(RingElem c_, RingElem d_) : params(c_.params()), c(std::move(c_)), d(std::move(d_)) {
    if (!(d.params() == params)) {
        throw std::invalid_argument("c and d must live in the same ring");
    }
    if (c.is_zero() || d.is_zero()) {
        throw std::invalid_argument("c and d must be nonzero");
    }
}

BBCodeSpec BBCodeSpec::parse(int ell, int m, const std::string& c, const std::string& d) {
    RingParams p(ell, m);
    return BBCodeSpec(parse_ring_elem(p, c), parse_ring_elem(p, d));
}

CssCode build_bb(const BBCodeSpec& spec) {
    const BitMatrix a = mul_matrix(spec.c);
    const BitMatrix b = mul_matrix(spec.d);
    CssCode code;
    code.hx = BitMatrix::hstack(a, b);
    code.hz = BitMatrix::hstack(b.transpose(), a.transpose());
    const RingParams& p = spec.params;
    for (Side side : {Side::Horizontal, Side::Vertical}) {
        for (std::size_t idx = 0; idx < p.size(); ++idx) {
            code.qubit_labels.push_back({side, p.x_exp(idx), p.y_exp(idx)});
        }
    }
    assert_css(code);
    return code;
}

std::vector<CheckSupports> group_algebra_checks(const BBCodeSpec& spec) {
    const RingParams& p = spec.params;
    const std::size_t half = p.size();
    std::vector<CheckSupports> out(half);
    for (std::size_t h = 0; h < half; ++h) {
        const long hi = p.x_exp(h);
        const long hj = p.y_exp(h);
        auto& checks = out[h];
        for (const auto& g : spec.c.support()) {
            checks.x_support.push_back(p.index(hi - g.x, hj - g.y));
            checks.z_support.push_back(half + p.index(hi + g.x, hj + g.y));
        }
        for (const auto& g : spec.d.support()) {
            checks.x_support.push_back(half + p.index(hi - g.x, hj - g.y));
            checks.z_support.push_back(p.index(hi + g.x, hj + g.y));
        }
        std::sort(checks.x_support.begin(), checks.x_support.end());
        std::sort(checks.z_support.begin(), checks.z_support.end());
    }
    return out;
}

void assert_css(const CssCode& code) {
    if (code.hx.cols() != code.hz.cols()) {
        throw std::logic_error("hx and hz act on different numbers of qubits");
    }
    if (!(code.hx * code.hz.transpose()).is_zero()) {
        throw std::logic_error("X and Z checks do not commute");
    }
}

std::size_t logical_count(const CssCode& code) { return code.n() - rank(code.hx) - rank(code.hz); }

namespace {

/// Representatives of ker(checks) modulo rowspace(stabilizers).
std::vector<BitVec> quotient_representatives(const BitMatrix& checks, const BitMatrix& stabilizers) {
    EchelonBasis span(checks.cols());
    for (const auto& row : stabilizers.row_vectors()) {
        span.insert(row);
    }
    std::vector<BitVec> reps;
    const Subspace kernel = kernel_basis(checks);
    for (const auto& v : kernel.basis().row_vectors()) {
        if (span.insert(v)) {
            reps.push_back(v);
        }
    }
    return reps;
}

}  // namespace

LogicalBasis css_logical_basis(const CssCode& code) {
    LogicalBasis basis;
    basis.z_basis = quotient_representatives(code.hx, code.hz);
    std::vector<BitVec> xs = quotient_representatives(code.hz, code.hx);
    const std::size_t k = basis.z_basis.size();
    if (xs.size() != k) {
        throw std::logic_error("X and Z logical counts disagree");
    }
    BitMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            gram.set(i, j, basis.z_basis[i].dot(xs[j]));
        }
    }
    auto inv = inverse(gram);
    if (!inv) {
        throw std::logic_error("logical pairing is degenerate");
    }
    for (std::size_t j = 0; j < k; ++j) {
        BitVec x(code.n());
        for (std::size_t t = 0; t < k; ++t) {
            if (inv->get(t, j)) {
                x ^= xs[t];
            }
        }
        basis.x_basis.push_back(std::move(x));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Exhaustive distance

namespace {

struct SideSearch {
    std::vector<BitVec> syndrome_cols;  // column q of the check matrix
    std::vector<BitVec> pairing_cols;   // bit j: dual logical j restricted to q
};

SideSearch make_side(const BitMatrix& checks, const std::vector<BitVec>& dual_logicals) {
    SideSearch s;
    const std::size_t n = checks.cols();
    BitMatrix t = checks.transpose();
    s.syndrome_cols = t.row_vectors();
    for (std::size_t q = 0; q < n; ++q) {
        BitVec bits(dual_logicals.size());
        for (std::size_t j = 0; j < dual_logicals.size(); ++j) {
            bits.set(j, dual_logicals[j].get(q));
        }
        s.pairing_cols.push_back(std::move(bits));
    }
    return s;
}

/// Depth-first enumeration of weight-w supports; returns the first logical found.
std::optional<std::vector<std::size_t>> search_weight(const SideSearch& s, std::size_t w) {
    const std::size_t n = s.syndrome_cols.size();
    if (w == 0 || w > n) {
        return std::nullopt;
    }
    std::vector<std::size_t> chosen;
    std::vector<BitVec> syn{BitVec(s.syndrome_cols.empty() ? 0 : s.syndrome_cols[0].size())};
    std::vector<BitVec> pair{BitVec(s.pairing_cols.empty() ? 0 : s.pairing_cols[0].size())};
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
        if (chosen.size() == w) {
            return syn.back().none() && pair.back().any();
        }
        const std::size_t remaining = w - chosen.size();
        for (std::size_t q = start; q + remaining <= n; ++q) {
            chosen.push_back(q);
            syn.push_back(syn.back() ^ s.syndrome_cols[q]);
            pair.push_back(pair.back() ^ s.pairing_cols[q]);
            if (rec(q + 1)) {
                return true;
            }
            chosen.pop_back();
            syn.pop_back();
            pair.pop_back();
        }
        return false;
    };
    if (rec(0)) {
        return chosen;
    }
    return std::nullopt;
}

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

}  // namespace

DistanceReport distance_exhaustive(const CssCode& code, std::size_t max_weight, std::uint64_t budget) {
    const std::size_t n = code.n();
    double total = 0;
    for (std::size_t w = 1; w <= std::min(max_weight, n); ++w) {
        total += binomial(n, w);
    }
    if (total > static_cast<double>(budget)) {
        throw DistanceBudgetExceeded("exhaustive search over " + std::to_string(static_cast<long double>(total)) +
                                     " supports exceeds the budget of " + std::to_string(budget));
    }
    DistanceReport report;
    report.method = DistanceReport::Method::Exhaustive;
    report.certified_exact = true;
    report.max_weight = max_weight;
    const LogicalBasis logicals = css_logical_basis(code);
    if (logicals.z_basis.empty()) {
        return report;
    }
    // Z-type logicals commute with X checks and pair with X logicals; and dually.
    const SideSearch z_side = make_side(code.hx, logicals.x_basis);
    const SideSearch x_side = make_side(code.hz, logicals.z_basis);
    for (std::size_t w = 1; w <= std::min(max_weight, n); ++w) {
        for (auto [side, type] : {std::pair{&z_side, PauliType::Z}, std::pair{&x_side, PauliType::X}}) {
            if (auto hit = search_weight(*side, w)) {
                report.upper_bound = w;
                report.witness = BitVec::from_indices(n, *hit);
                report.witness_type = type;
                return report;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Information-set search

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

struct Candidate {
    std::size_t weight = std::numeric_limits<std::size_t>::max();
    std::size_t side = 0;
    std::size_t trial = 0;
    std::size_t row = 0;
    BitVec vec;

    auto key() const { return std::tie(weight, side, trial, row); }
};

/// Gauss-Jordan on `rows` taking pivot columns in the order given by `order`.
void reduce_in_order(std::vector<BitVec>& rows, const std::vector<std::size_t>& order) {
    std::size_t r = 0;
    for (std::size_t col : order) {
        if (r == rows.size()) {
            break;
        }
        std::size_t p = r;
        while (p < rows.size() && !rows[p].get(col)) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[p], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i].get(col)) {
                rows[i] ^= rows[r];
            }
        }
        ++r;
    }
}

bool nontrivial(const BitVec& v, const std::vector<BitVec>& dual) {
    for (const auto& x : dual) {
        if (v.dot(x)) {
            return true;
        }
    }
    return false;
}

}  // namespace

DistanceReport distance_isd(const CssCode& code, const IsdOptions& opts) {
    if (opts.trials == 0) {
        throw std::invalid_argument("distance_isd needs at least one trial");
    }
    DistanceReport report;
    report.method = DistanceReport::Method::Isd;
    report.trials = opts.trials;
    report.seed = opts.seed;
    const std::size_t n = code.n();
    const LogicalBasis logicals = css_logical_basis(code);
    if (logicals.z_basis.empty()) {
        return report;
    }
    struct SideData {
        std::vector<BitVec> kernel;
        const std::vector<BitVec>* dual;
        PauliType type;
    };
    std::vector<SideData> sides;
    sides.push_back({kernel_basis(code.hx).basis().row_vectors(), &logicals.x_basis, PauliType::Z});
    if (!opts.z_side_only) {
        sides.push_back({kernel_basis(code.hz).basis().row_vectors(), &logicals.z_basis, PauliType::X});
    }

    unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, opts.trials));
    std::atomic<std::size_t> next{0};
    std::vector<Candidate> best(threads);

    auto worker = [&](unsigned id) {
        std::vector<std::size_t> order(n);
        Candidate& mine = best[id];
        for (std::size_t t = next++; t < opts.trials; t = next++) {
            std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(t)));
            for (std::size_t s = 0; s < sides.size(); ++s) {
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::shuffle(order.begin(), order.end(), rng);
                std::vector<BitVec> rows = sides[s].kernel;
                reduce_in_order(rows, order);
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    const std::size_t w = rows[r].popcount();
                    if (w > mine.weight || w == 0) {
                        continue;
                    }
                    Candidate cand{w, s, t, r, {}};
                    if (cand.key() < mine.key() && nontrivial(rows[r], *sides[s].dual)) {
                        cand.vec = rows[r];
                        mine = std::move(cand);
                    }
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned id = 1; id < threads; ++id) {
        pool.emplace_back(worker, id);
    }
    worker(0);
    for (auto& th : pool) {
        th.join();
    }
    const Candidate* winner = &best[0];
    for (const auto& c : best) {
        if (c.key() < winner->key()) {
            winner = &c;
        }
    }
    if (winner->vec.size() != 0) {
        report.upper_bound = winner->weight;
        report.witness = winner->vec;
        report.witness_type = sides[winner->side].type;
    }
    return report;
}

// ---------------------------------------------------------------------------
// n-fold complexes

std::vector<std::vector<int>> nfold_basis(int n, int p) {
    if (p < 0 || p > n) {
        throw std::out_of_range("degree out of range");
    }
    if (n == 3 && p == 1) {
        return {{1}, {0}, {2}};
    }
    if (n == 3 && p == 2) {
        return {{1, 2}, {0, 2}, {0, 1}};
    }
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(current.size()) == p) {
            out.push_back(current);
            return;
        }
        for (int i = start; i < n; ++i) {
            current.push_back(i);
            rec(i + 1);
            current.pop_back();
        }
    };
    rec(0);
    return out;
}

NFoldResult build_nfold(RingParams params, const std::vector<RingElem>& elems, int position) {
    const int n = static_cast<int>(elems.size());
    if (n < 2 || n > 4) {
        throw std::invalid_argument("n-fold builder supports 2 <= n <= 4 factors, got " + std::to_string(n));
    }
    if (position < 1 || position > n - 1) {
        throw std::out_of_range("position must lie in [1, " + std::to_string(n - 1) + "], got " +
                                std::to_string(position));
    }
    for (const auto& e : elems) {
        if (!(e.params() == params)) {
            throw std::invalid_argument("n-fold factors must live in the given ring");
        }
    }
    const std::size_t block = params.size();
    std::vector<BitMatrix> mults;
    for (const auto& e : elems) {
        mults.push_back(mul_matrix(e));
    }
    NFoldResult result;
    for (int p = 0; p <= n; ++p) {
        result.complex.ranks.push_back(nfold_basis(n, p).size());
    }
    for (int p = 1; p <= n; ++p) {
        const auto cols = nfold_basis(n, p);
        const auto rows = nfold_basis(n, p - 1);
        BitMatrix boundary(rows.size() * block, cols.size() * block);
        for (std::size_t ci = 0; ci < cols.size(); ++ci) {
            for (int drop : cols[ci]) {
                std::vector<int> face;
                for (int v : cols[ci]) {
                    if (v != drop) {
                        face.push_back(v);
                    }
                }
                auto it = std::find(rows.begin(), rows.end(), face);
                boundary.set_block(static_cast<std::size_t>(it - rows.begin()) * block, ci * block,
                                   mults[static_cast<std::size_t>(drop)]);
            }
        }
        result.complex.differentials.push_back(std::move(boundary));
    }
    const auto& diff = result.complex.differentials;
    result.code.hx = diff[static_cast<std::size_t>(position - 1)];
    result.code.hz = diff[static_cast<std::size_t>(position)].transpose();
    if (position >= 2) {
        result.x_meta_checks = diff[static_cast<std::size_t>(position - 2)];
    }
    if (position + 2 <= n) {
        result.z_meta_checks = diff[static_cast<std::size_t>(position + 1)].transpose();
    }
    if (n == 2) {
        for (Side side : {Side::Horizontal, Side::Vertical}) {
            for (std::size_t idx = 0; idx < block; ++idx) {
                result.code.qubit_labels.push_back({side, params.x_exp(idx), params.y_exp(idx)});
            }
        }
    }
    assert_css(result.code);
    return result;
}

}  // namespace bbcodes
