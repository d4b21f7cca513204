#pragma once

// ZX-dualities, fold-transversal gates, Clifford tableaux and the logical
// symplectic action of gates on a BB code.
//
// Paulis are written i^phase * X^x * Z^z. Gate rules used throughout:
//   H       (x, z) -> (z, x),            phase += 2 x z
//   S       z ^= x,                      phase += x
//   S^dag   z ^= x,                      phase += 3 x
//   CZ p,q  z_p ^= x_q, z_q ^= x_p,      phase += 2 x_p x_q
// A FoldGate applies its Hadamards, then S gates, then CZ pairs, then moves
// the state of qubit q to perm[q].

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bbcodes/codes.hpp"
#include "bbcodes/f2la.hpp"
#include "bbcodes/grouprings.hpp"
#include "bbcodes/homology.hpp"

namespace bbcodes {

struct Pauli {
    BitVec x;
    BitVec z;
    int phase = 0;  // power of i, kept in [0, 4)

    explicit Pauli(std::size_t n = 0) : x(n), z(n) {}
    static Pauli x_type(const BitVec& support);
    static Pauli z_type(const BitVec& support);

    std::size_t n() const { return x.size(); }
    bool commutes_with(const Pauli& other) const;
    /// this * other
    Pauli operator*(const Pauli& other) const;
    friend bool operator==(const Pauli&, const Pauli&) = default;
    std::string to_string() const;
};

/// Images of X_0..X_{N-1}, Z_0..Z_{N-1} under conjugation.
class CliffordTableau {
public:
    explicit CliffordTableau(std::size_t n = 0);

    std::size_t n() const { return n_; }
    /// 2N x 2N, column j = image of generator j, coordinates (x | z).
    BitMatrix symplectic() const;
    /// Phase of the image of each generator.
    std::vector<int> phases() const;

    const Pauli& image(std::size_t generator) const { return images_[generator]; }
    void set_image(std::size_t generator, Pauli p) { images_[generator] = std::move(p); }

    Pauli conjugate(const Pauli& p) const;
    /// The tableau of (after . this): this is applied first.
    CliffordTableau then(const CliffordTableau& after) const;
    bool is_symplectic() const;

    friend bool operator==(const CliffordTableau&, const CliffordTableau&) = default;

private:
    std::size_t n_;
    std::vector<Pauli> images_;
};

struct ZXDuality {
    enum class Kind { Standard, Shifted, Omega };
    Kind kind = Kind::Standard;
    Monomial shift{0, 0};  // t for the shifted kind
    std::vector<std::size_t> qubit_perm;
    /// Permuting X-check supports gives exactly the Z-check supports, and vice versa.
    bool valid = false;
    std::string describe() const;
};

/// g_h -> (g^-1)_v, g_v -> (g^-1)_h.
ZXDuality standard_duality(const BBCodeSpec& spec);
/// g_h -> ((tg)^-1)_v, g_v -> ((tg)^-1)_h.
ZXDuality shifted_duality(const BBCodeSpec& spec, long a, long b);
/// (i, j) -> (-j, -i) on each side. Throws std::invalid_argument unless l = m and omega(c) = d.
ZXDuality omega_duality(const BBCodeSpec& spec);

/// A permutation of the qubits induced by a group map, optionally exchanging sides.
struct CodeAutomorphism {
    RingAutomorphism map;
    bool swap_sides = false;
    std::string name;

    static CodeAutomorphism shift(long a, long b);
    /// (i, j)_h -> (j, i)_v and back.
    static CodeAutomorphism omega();
};

std::vector<std::size_t> automorphism_permutation(const BBCodeSpec& spec, const CodeAutomorphism& phi);

struct FoldGate {
    enum class Kind { Swap, Hadamard, Cz, Composite };
    Kind kind = Kind::Swap;
    std::string name;
    std::size_t n = 0;
    std::vector<std::size_t> perm;  // identity when empty
    std::vector<std::size_t> hadamards;
    std::vector<std::pair<std::size_t, bool>> s_gates;  // (qubit, dagger)
    std::vector<std::pair<std::size_t, std::size_t>> cz_pairs;
    std::optional<BitMatrix> logical;

    /// Transpositions whose left-to-right application realises perm.
    std::vector<std::pair<std::size_t, std::size_t>> swaps() const;
    /// No qubit repeated within hadamards, s_gates, or cz_pairs, and perm a bijection.
    bool is_transversal() const;
};

Pauli conjugate(const FoldGate& gate, const Pauli& p);
CliffordTableau apply_to_tableau(const FoldGate& gate);

/// Throws std::invalid_argument if phi does not map checks to checks.
FoldGate swap_gate(const BBCodeSpec& spec, const CodeAutomorphism& phi);
/// Hadamard on every qubit followed by the duality's pairing.
FoldGate hadamard_gate(const BBCodeSpec& spec);
FoldGate hadamard_gate(const BBCodeSpec& spec, const ZXDuality& duality);
/// S on fixed horizontal qubits, S^dag on fixed vertical ones, CZ across each
/// two-element orbit of g -> omega(g)^-1. Throws for non-symmetric specs.
FoldGate cz_gate(const BBCodeSpec& spec);

struct PreservationReport {
    bool preserved = true;
    std::size_t checks_tested = 0;
    // First failure, when any.
    std::optional<PauliType> failed_type;
    std::size_t failed_row = 0;
    int residual_phase = 0;
    bool outside_stabilizer = false;
    std::string message;
};

PreservationReport check_stabilizer_preservation(const CssCode& code, const CliffordTableau& tableau);

/// Gram matrix z_i . x_j.
BitMatrix basis_pairing(const LogicalBasis& basis);
/// [[0, G], [G^T, 0]].
BitMatrix logical_form(const LogicalBasis& basis);
bool is_symplectic(const BitMatrix& m, const BitMatrix& form);

/// Column j: coordinates of the image of basis element j (z's then x's) modulo
/// stabilizers. Throws std::logic_error if the tableau does not preserve the
/// stabilizer group or the result is not symplectic for the basis pairing.
BitMatrix logical_action(const CssCode& code, const LogicalBasis& basis, const CliffordTableau& tableau);

LogicalBasis as_logical_basis(const PureLogicalBasis& basis);

/// Swap_x, Swap_y, then Swap_omega, H_tau0 and CZ_tau0omega when the spec is
/// symmetric (H_tau0 always), each with its logical matrix filled in.
std::vector<FoldGate> fold_gates(const BBCodeSpec& spec, const LogicalBasis& basis);

struct GateGroup {
    std::vector<BitMatrix> generators;
    std::vector<BitMatrix> elements;  // BFS order, identity first
    std::size_t order() const { return elements.size(); }
    bool contains(const BitMatrix& m) const;
};

class GroupTooLarge : public std::runtime_error {
public:
    GroupTooLarge(std::size_t partial, std::size_t ceiling);
    std::size_t partial() const { return partial_; }

private:
    std::size_t partial_;
};

GateGroup enumerate_group(const std::vector<BitMatrix>& generators, std::size_t ceiling = 10'000'000,
                          unsigned threads = 0);

/// GAP script defining the generators over GF(2) and printing the group order.
std::string gap_generators(const std::vector<BitMatrix>& generators, const std::vector<std::string>& names);
/// CSV rows "element,generator,product" of the Cayley graph, element indices in BFS order.
std::string cayley_csv(const GateGroup& group);

}  // namespace bbcodes
