#pragma once

// Dense bit-packed linear algebra over F2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bbcodes {

class BitVec {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVec() = default;
    explicit BitVec(std::size_t len) : len_(len), words_((len + kWordBits - 1) / kWordBits, 0) {}

    static BitVec from_indices(std::size_t len, std::span<const std::size_t> indices);
    static BitVec from_string(const std::string& bits);  // "0110..."

    std::size_t size() const { return len_; }
    std::size_t num_words() const { return words_.size(); }
    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value = true) {
        Word mask = Word{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    BitVec& operator^=(const BitVec& other);
    BitVec& operator&=(const BitVec& other);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

    std::size_t popcount() const;
    bool any() const;
    bool none() const { return !any(); }
    /// Index of the lowest set bit, or size() when the vector is zero.
    std::size_t first_set() const;
    /// Parity of the overlap with `other`.
    bool dot(const BitVec& other) const;

    std::vector<std::size_t> support() const;
    std::string to_string() const;

    friend bool operator==(const BitVec& a, const BitVec& b) = default;
    /// Lexicographic on bit index 0 first.
    friend bool operator<(const BitVec& a, const BitVec& b);

    std::size_t hash() const;

private:
    std::size_t len_ = 0;
    std::vector<Word> words_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::size_t cols, std::vector<BitVec> rows);
    /// Rows given as strings of '0'/'1'.
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }
    const BitVec& row(std::size_t r) const { return rows_[r]; }
    BitVec& row(std::size_t r) { return rows_[r]; }
    const std::vector<BitVec>& row_vectors() const { return rows_; }

    void append_row(BitVec row);

    BitMatrix transpose() const;
    BitVec column(std::size_t c) const;
    /// this * v, with v a column vector of length cols().
    BitVec apply(const BitVec& v) const;
    BitMatrix operator*(const BitMatrix& other) const;
    BitMatrix& operator^=(const BitMatrix& other);
    bool is_zero() const;

    /// Submatrix of rows [r0, r0+nr) and columns [c0, c0+nc).
    BitMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const BitMatrix& b);

    static BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom);
    static BitMatrix hstack(const BitMatrix& left, const BitMatrix& right);

    std::string to_string() const;
    std::vector<std::string> row_strings() const;
    std::size_t hash() const;

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

struct BitMatrixHash {
    std::size_t operator()(const BitMatrix& m) const { return m.hash(); }
};

struct RrefResult {
    BitMatrix reduced;               // zero rows removed
    std::vector<std::size_t> pivots;  // pivot column of each row, strictly increasing
};

RrefResult rref(const BitMatrix& m);
std::size_t rank(const BitMatrix& m);

/// Incremental row reducer: keeps a set of rows with distinct leading bits.
/// Used where vectors arrive one at a time (basis extension, span building).
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t ambient) : ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    /// Reduce v against the stored rows; the residue is zero iff v is in the span.
    BitVec reduce(BitVec v) const;
    bool contains(const BitVec& v) const { return reduce(v).none(); }
    /// Returns true if v was independent and has been added.
    bool insert(const BitVec& v);
    const std::vector<BitVec>& rows() const { return rows_; }

private:
    std::size_t ambient_;
    std::vector<BitVec> rows_;
    std::vector<std::size_t> leads_;
};

class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim = 0) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

    /// Row span of `generators`.
    static Subspace span(const BitMatrix& generators);
    static Subspace span(std::size_t ambient_dim, const std::vector<BitVec>& generators);
    static Subspace full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const BitMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const BitVec& v) const;
    /// Canonical residue of v modulo the subspace (zero at every pivot column).
    BitVec reduce(BitVec v) const;
    bool contains(const Subspace& other) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersection(const Subspace& other) const;
    /// {v : v . w = 0 for all w in this}.
    Subspace orthogonal_complement() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_;
    BitMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/// Basis of {v : m v = 0}.
Subspace kernel_basis(const BitMatrix& m);

/// Some x with m x = rhs, or nullopt if rhs is outside the column space.
std::optional<BitVec> solve(const BitMatrix& m, const BitVec& rhs);

/// {v in domain : map(v) in target}, map given as a matrix acting on column vectors.
Subspace preimage(const BitMatrix& map, const Subspace& domain, const Subspace& target);

/// Image of a subspace under a linear map.
Subspace image(const BitMatrix& map, const Subspace& domain);

/// Inverse of a square matrix, or nullopt if singular.
std::optional<BitMatrix> inverse(const BitMatrix& m);

}  // namespace bbcodes
