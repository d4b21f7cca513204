#include "bbcodes/f2la.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bbcodes {

namespace {

void require_same_length(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("BitVec length mismatch: " + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()));
    }
}

std::size_t mix_hash(std::size_t seed, std::uint64_t value) {
    value ^= value >> 33;
    value *= 0xff51afd7ed558ccdULL;
    value ^= value >> 33;
    return seed ^ (static_cast<std::size_t>(value) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// BitVec

BitVec BitVec::from_indices(std::size_t len, std::span<const std::size_t> indices) {
    BitVec v(len);
    for (std::size_t i : indices) {
        if (i >= len) {
            throw std::out_of_range("bit index " + std::to_string(i) + " out of range " + std::to_string(len));
        }
        v.flip(i);
    }
    return v;
}

BitVec BitVec::from_string(const std::string& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return v;
}

BitVec& BitVec::operator^=(const BitVec& other) {
    require_same_length(*this, other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& other) {
    require_same_length(*this, other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

std::size_t BitVec::popcount() const {
    std::size_t total = 0;
    for (Word w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

bool BitVec::any() const {
    return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

std::size_t BitVec::first_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] != 0) {
            return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
        }
    }
    return len_;
}

bool BitVec::dot(const BitVec& other) const {
    require_same_length(*this, other);
    Word acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        acc ^= words_[w] & other.words_[w];
    }
    return (std::popcount(acc) & 1) != 0;
}

std::vector<std::size_t> BitVec::support() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        Word bits = words_[w];
        while (bits != 0) {
            out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::string BitVec::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

bool operator<(const BitVec& a, const BitVec& b) {
    if (a.len_ != b.len_) {
        return a.len_ < b.len_;
    }
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        if (a.words_[w] != b.words_[w]) {
            // Lowest differing index decides; the vector holding the 1 there is larger.
            BitVec::Word diff = a.words_[w] ^ b.words_[w];
            BitVec::Word low = diff & (~diff + 1);
            return (b.words_[w] & low) != 0;
        }
    }
    return false;
}

std::size_t BitVec::hash() const {
    std::size_t h = len_;
    for (Word w : words_) {
        h = mix_hash(h, w);
    }
    return h;
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(std::size_t cols, std::vector<BitVec> rows) {
    BitMatrix m(0, cols);
    for (auto& r : rows) {
        m.append_row(std::move(r));
    }
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(0, cols);
    for (const auto& r : rows) {
        m.append_row(BitVec::from_string(r));
    }
    return m;
}

void BitMatrix::append_row(BitVec row) {
    if (row.size() != cols_) {
        throw std::invalid_argument("row length " + std::to_string(row.size()) + " does not match " +
                                    std::to_string(cols_) + " columns");
    }
    rows_.push_back(std::move(row));
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (std::size_t c : rows_[r].support()) {
            t.set(c, r);
        }
    }
    return t;
}

BitVec BitMatrix::column(std::size_t c) const {
    BitVec v(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].get(c)) {
            v.set(r);
        }
    }
    return v;
}

BitVec BitMatrix::apply(const BitVec& v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("matrix-vector dimension mismatch");
    }
    BitVec out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].dot(v)) {
            out.set(r);
        }
    }
    return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
    if (cols_ != other.rows()) {
        throw std::invalid_argument("matrix product dimension mismatch: " + std::to_string(cols_) + " vs " +
                                    std::to_string(other.rows()));
    }
    BitMatrix out(rows_.size(), other.cols());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        BitVec& target = out.row(r);
        for (std::size_t k : rows_[r].support()) {
            target ^= other.row(k);
        }
    }
    return out;
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& other) {
    if (rows() != other.rows() || cols_ != other.cols()) {
        throw std::invalid_argument("matrix sum dimension mismatch");
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        rows_[r] ^= other.row(r);
    }
    return *this;
}

bool BitMatrix::is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const BitVec& r) { return r.none(); });
}

BitMatrix BitMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows() || c0 + nc > cols_) {
        throw std::out_of_range("block exceeds matrix bounds");
    }
    BitMatrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t c = 0; c < nc; ++c) {
            if (get(r0 + r, c0 + c)) {
                b.set(r, c);
            }
        }
    }
    return b;
}

void BitMatrix::set_block(std::size_t r0, std::size_t c0, const BitMatrix& b) {
    if (r0 + b.rows() > rows() || c0 + b.cols() > cols_) {
        throw std::out_of_range("block exceeds matrix bounds");
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            set(r0 + r, c0 + c, b.get(r, c));
        }
    }
}

BitMatrix BitMatrix::vstack(const BitMatrix& top, const BitMatrix& bottom) {
    if (top.cols() != bottom.cols()) {
        throw std::invalid_argument("vstack column mismatch");
    }
    BitMatrix out = top;
    for (const auto& r : bottom.row_vectors()) {
        out.append_row(r);
    }
    return out;
}

BitMatrix BitMatrix::hstack(const BitMatrix& left, const BitMatrix& right) {
    if (left.rows() != right.rows()) {
        throw std::invalid_argument("hstack row mismatch");
    }
    BitMatrix out(left.rows(), left.cols() + right.cols());
    for (std::size_t r = 0; r < left.rows(); ++r) {
        for (std::size_t c : left.row(r).support()) {
            out.set(r, c);
        }
        for (std::size_t c : right.row(r).support()) {
            out.set(r, left.cols() + c);
        }
    }
    return out;
}

std::vector<std::string> BitMatrix::row_strings() const {
    std::vector<std::string> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) {
        out.push_back(r.to_string());
    }
    return out;
}

std::string BitMatrix::to_string() const {
    std::string s;
    for (const auto& r : rows_) {
        s += r.to_string();
        s += '\n';
    }
    return s;
}

std::size_t BitMatrix::hash() const {
    std::size_t h = mix_hash(rows_.size(), cols_);
    for (const auto& r : rows_) {
        for (BitVec::Word w : r.words()) {
            h = mix_hash(h, w);
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Row reduction

RrefResult rref(const BitMatrix& m) {
    std::vector<BitVec> rows = m.row_vectors();
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
        std::size_t word = col / BitVec::kWordBits;
        BitVec::Word mask = BitVec::Word{1} << (col % BitVec::kWordBits);
        std::size_t found = rows.size();
        for (std::size_t r = next; r < rows.size(); ++r) {
            if (rows[r].words()[word] & mask) {
                found = r;
                break;
            }
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[found]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != next && (rows[r].words()[word] & mask)) {
                rows[r] ^= rows[next];
            }
        }
        pivots.push_back(col);
        ++next;
    }
    rows.resize(next);
    return RrefResult{BitMatrix::from_rows(m.cols(), std::move(rows)), std::move(pivots)};
}

std::size_t rank(const BitMatrix& m) {
    // Forward elimination only.
    std::vector<BitVec> rows = m.row_vectors();
    std::size_t next = 0;
    for (std::size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
        std::size_t word = col / BitVec::kWordBits;
        BitVec::Word mask = BitVec::Word{1} << (col % BitVec::kWordBits);
        std::size_t found = rows.size();
        for (std::size_t r = next; r < rows.size(); ++r) {
            if (rows[r].words()[word] & mask) {
                found = r;
                break;
            }
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[found]);
        for (std::size_t r = next + 1; r < rows.size(); ++r) {
            if (rows[r].words()[word] & mask) {
                rows[r] ^= rows[next];
            }
        }
        ++next;
    }
    return next;
}

BitVec EchelonBasis::reduce(BitVec v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (v.get(leads_[i])) {
            v ^= rows_[i];
        }
    }
    return v;
}

bool EchelonBasis::insert(const BitVec& v) {
    BitVec r = reduce(v);
    std::size_t lead = r.first_set();
    if (lead == r.size()) {
        return false;
    }
    // Keep earlier rows free of the new lead so reduce() stays a single pass.
    for (auto& row : rows_) {
        if (row.get(lead)) {
            row ^= r;
        }
    }
    rows_.push_back(std::move(r));
    leads_.push_back(lead);
    return true;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(const BitMatrix& generators) {
    Subspace s(generators.cols());
    RrefResult r = rref(generators);
    s.basis_ = std::move(r.reduced);
    s.pivots_ = std::move(r.pivots);
    return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<BitVec>& generators) {
    return span(BitMatrix::from_rows(ambient_dim, generators));
}

Subspace Subspace::full(std::size_t ambient_dim) { return span(BitMatrix::identity(ambient_dim)); }

BitVec Subspace::reduce(BitVec v) const {
    if (v.size() != ambient_) {
        throw std::invalid_argument("vector length does not match subspace ambient dimension");
    }
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        if (v.get(pivots_[i])) {
            v ^= basis_.row(i);
        }
    }
    return v;
}

bool Subspace::contains(const BitVec& v) const { return reduce(v).none(); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) {
        throw std::invalid_argument("ambient dimension mismatch");
    }
    return std::all_of(other.basis_.row_vectors().begin(), other.basis_.row_vectors().end(),
                       [this](const BitVec& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) {
        throw std::invalid_argument("ambient dimension mismatch in subspace sum");
    }
    return span(BitMatrix::vstack(basis_, other.basis_));
}

Subspace Subspace::intersection(const Subspace& other) const {
    if (other.ambient_ != ambient_) {
        throw std::invalid_argument("ambient dimension mismatch in subspace intersection");
    }
    // Kernel of [A^T | B^T] yields coefficient pairs (alpha, beta) with
    // alpha A = beta B; the intersection is spanned by alpha A.
    const std::size_t da = dim();
    BitMatrix stacked = BitMatrix::hstack(basis_.transpose(), other.basis_.transpose());
    Subspace coeffs = kernel_basis(stacked);
    std::vector<BitVec> gens;
    for (const auto& c : coeffs.basis().row_vectors()) {
        BitVec v(ambient_);
        for (std::size_t i = 0; i < da; ++i) {
            if (c.get(i)) {
                v ^= basis_.row(i);
            }
        }
        gens.push_back(std::move(v));
    }
    return span(ambient_, gens);
}

Subspace Subspace::orthogonal_complement() const { return kernel_basis(basis_); }

// ---------------------------------------------------------------------------

Subspace kernel_basis(const BitMatrix& m) {
    RrefResult r = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : r.pivots) {
        is_pivot[p] = true;
    }
    std::vector<BitVec> gens;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        BitVec v(n);
        v.set(free);
        for (std::size_t i = 0; i < r.pivots.size(); ++i) {
            if (r.reduced.get(i, free)) {
                v.set(r.pivots[i]);
            }
        }
        gens.push_back(std::move(v));
    }
    return Subspace::span(n, gens);
}

std::optional<BitVec> solve(const BitMatrix& m, const BitVec& rhs) {
    if (rhs.size() != m.rows()) {
        throw std::invalid_argument("right-hand side length must equal the number of rows");
    }
    // Row-reduce the augmented matrix [m | rhs].
    BitMatrix aug = BitMatrix::hstack(m, BitMatrix::from_rows(1, [&] {
        std::vector<BitVec> col;
        for (std::size_t r = 0; r < rhs.size(); ++r) {
            BitVec b(1);
            b.set(0, rhs.get(r));
            col.push_back(std::move(b));
        }
        return col;
    }()));
    RrefResult r = rref(aug);
    BitVec x(m.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == m.cols()) {
            return std::nullopt;
        }
        if (r.reduced.get(i, m.cols())) {
            x.set(r.pivots[i]);
        }
    }
    return x;
}

Subspace image(const BitMatrix& map, const Subspace& domain) {
    if (map.cols() != domain.ambient_dim()) {
        throw std::invalid_argument("map does not act on the domain's ambient space");
    }
    std::vector<BitVec> gens;
    for (const auto& b : domain.basis().row_vectors()) {
        gens.push_back(map.apply(b));
    }
    return Subspace::span(map.rows(), gens);
}

Subspace preimage(const BitMatrix& map, const Subspace& domain, const Subspace& target) {
    if (map.cols() != domain.ambient_dim() || map.rows() != target.ambient_dim()) {
        throw std::invalid_argument("preimage dimension mismatch");
    }
    // v = sum alpha_i b_i; require checks(target) * map * v = 0.
    Subspace checks = target.orthogonal_complement();
    const BitMatrix& domain_basis = domain.basis();
    BitMatrix images(checks.dim(), domain.dim());
    for (std::size_t i = 0; i < domain.dim(); ++i) {
        BitVec mapped = map.apply(domain_basis.row(i));
        for (std::size_t j = 0; j < checks.dim(); ++j) {
            if (checks.basis().row(j).dot(mapped)) {
                images.set(j, i);
            }
        }
    }
    Subspace coeffs = kernel_basis(images);
    std::vector<BitVec> gens;
    for (const auto& c : coeffs.basis().row_vectors()) {
        BitVec v(domain.ambient_dim());
        for (std::size_t i : c.support()) {
            v ^= domain_basis.row(i);
        }
        gens.push_back(std::move(v));
    }
    return Subspace::span(domain.ambient_dim(), gens);
}

std::optional<BitMatrix> inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("inverse of a non-square matrix");
    }
    const std::size_t n = m.rows();
    RrefResult r = rref(BitMatrix::hstack(m, BitMatrix::identity(n)));
    if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) {
        return std::nullopt;
    }
    return r.reduced.block(0, n, n, n);
}

}  // namespace bbcodes
