#include "bbcodes/gates.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace bbcodes {

namespace {

int mod4(int v) { return ((v % 4) + 4) % 4; }

std::size_t qubit(const RingParams& p, Side side, long i, long j) {
    std::size_t base = side == Side::Horizontal ? 0 : p.size();
    return base + p.index(i, j);
}

std::vector<std::size_t> identity_perm(std::size_t n) {
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
}

BitVec permute(const BitVec& v, const std::vector<std::size_t>& perm) {
    BitVec out(v.size());
    for (std::size_t q : v.support()) {
        out.set(perm[q]);
    }
    return out;
}

std::vector<BitVec> sorted_rows(const BitMatrix& m) {
    std::vector<BitVec> rows = m.row_vectors();
    std::sort(rows.begin(), rows.end());
    return rows;
}

std::vector<BitVec> permuted_rows(const BitMatrix& m, const std::vector<std::size_t>& perm) {
    std::vector<BitVec> rows;
    rows.reserve(m.rows());
    for (const auto& r : m.row_vectors()) {
        rows.push_back(permute(r, perm));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

bool certify_duality(const BBCodeSpec& spec, const std::vector<std::size_t>& perm) {
    CssCode code = build_bb(spec);
    return permuted_rows(code.hx, perm) == sorted_rows(code.hz) &&
           permuted_rows(code.hz, perm) == sorted_rows(code.hx);
}

void require_symmetric(const BBCodeSpec& spec) {
    const RingParams& p = spec.params;
    if (p.ell != p.m) {
        throw std::invalid_argument("symmetric code requires l = m, got l = " + std::to_string(p.ell) +
                                    ", m = " + std::to_string(p.m));
    }
    RingElem wc = RingAutomorphism::swap_xy().apply(spec.c);
    if (!(wc == spec.d)) {
        throw std::invalid_argument("symmetric code requires c(y,x) = d(x,y): c(y,x) = " + wc.to_string() +
                                    ", d = " + spec.d.to_string());
    }
}

}  // namespace

// ---- Pauli ----

Pauli Pauli::x_type(const BitVec& support) {
    Pauli p(support.size());
    p.x = support;
    return p;
}

Pauli Pauli::z_type(const BitVec& support) {
    Pauli p(support.size());
    p.z = support;
    return p;
}

bool Pauli::commutes_with(const Pauli& other) const {
    return x.dot(other.z) == z.dot(other.x);
}

Pauli Pauli::operator*(const Pauli& other) const {
    // X^a Z^b X^c Z^d = (-1)^{b.c} X^{a+c} Z^{b+d}
    Pauli out(n());
    out.x = x ^ other.x;
    out.z = z ^ other.z;
    out.phase = mod4(phase + other.phase + (z.dot(other.x) ? 2 : 0));
    return out;
}

std::string Pauli::to_string() const {
    static const char* prefixes[] = {"+", "+i", "-", "-i"};
    std::string out = prefixes[phase];
    for (std::size_t q = 0; q < n(); ++q) {
        bool a = x.get(q);
        bool b = z.get(q);
        out += a ? (b ? 'W' : 'X') : (b ? 'Z' : 'I');  // W = XZ
    }
    return out;
}

// ---- CliffordTableau ----

CliffordTableau::CliffordTableau(std::size_t n) : n_(n) {
    images_.reserve(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
        BitVec v(n);
        v.set(q);
        images_.push_back(Pauli::x_type(v));
    }
    for (std::size_t q = 0; q < n; ++q) {
        BitVec v(n);
        v.set(q);
        images_.push_back(Pauli::z_type(v));
    }
}

BitMatrix CliffordTableau::symplectic() const {
    BitMatrix m(2 * n_, 2 * n_);
    for (std::size_t g = 0; g < 2 * n_; ++g) {
        for (std::size_t q : images_[g].x.support()) {
            m.set(q, g);
        }
        for (std::size_t q : images_[g].z.support()) {
            m.set(n_ + q, g);
        }
    }
    return m;
}

std::vector<int> CliffordTableau::phases() const {
    std::vector<int> out;
    out.reserve(images_.size());
    for (const auto& p : images_) {
        out.push_back(p.phase);
    }
    return out;
}

Pauli CliffordTableau::conjugate(const Pauli& p) const {
    Pauli out(n_);
    out.phase = p.phase;
    for (std::size_t q : p.x.support()) {
        out = out * images_[q];
    }
    for (std::size_t q : p.z.support()) {
        out = out * images_[n_ + q];
    }
    return out;
}

CliffordTableau CliffordTableau::then(const CliffordTableau& after) const {
    CliffordTableau out(n_);
    for (std::size_t g = 0; g < 2 * n_; ++g) {
        out.images_[g] = after.conjugate(images_[g]);
    }
    return out;
}

bool CliffordTableau::is_symplectic() const {
    for (std::size_t a = 0; a < 2 * n_; ++a) {
        for (std::size_t b = a + 1; b < 2 * n_; ++b) {
            bool expect_commute = !(b == a + n_ && a < n_);
            if (images_[a].commutes_with(images_[b]) != expect_commute) {
                return false;
            }
        }
    }
    return true;
}

// ---- dualities ----

std::string ZXDuality::describe() const {
    switch (kind) {
        case Kind::Standard:
            return "tau0";
        case Kind::Shifted:
            return "tau0*x^" + std::to_string(shift.x) + "y^" + std::to_string(shift.y);
        case Kind::Omega:
            return "tau0*omega";
    }
    return "";
}

ZXDuality shifted_duality(const BBCodeSpec& spec, long a, long b) {
    const RingParams& p = spec.params;
    ZXDuality out;
    out.kind = (a == 0 && b == 0) ? ZXDuality::Kind::Standard : ZXDuality::Kind::Shifted;
    out.shift = {a, b};
    out.qubit_perm.resize(2 * p.size());
    for (std::size_t g = 0; g < p.size(); ++g) {
        long i = p.x_exp(g);
        long j = p.y_exp(g);
        out.qubit_perm[qubit(p, Side::Horizontal, i, j)] = qubit(p, Side::Vertical, -(a + i), -(b + j));
        out.qubit_perm[qubit(p, Side::Vertical, i, j)] = qubit(p, Side::Horizontal, -(a + i), -(b + j));
    }
    out.valid = certify_duality(spec, out.qubit_perm);
    return out;
}

ZXDuality standard_duality(const BBCodeSpec& spec) { return shifted_duality(spec, 0, 0); }

ZXDuality omega_duality(const BBCodeSpec& spec) {
    require_symmetric(spec);
    const RingParams& p = spec.params;
    ZXDuality out;
    out.kind = ZXDuality::Kind::Omega;
    out.qubit_perm.resize(2 * p.size());
    for (std::size_t g = 0; g < p.size(); ++g) {
        long i = p.x_exp(g);
        long j = p.y_exp(g);
        for (Side s : {Side::Horizontal, Side::Vertical}) {
            out.qubit_perm[qubit(p, s, i, j)] = qubit(p, s, -j, -i);
        }
    }
    out.valid = certify_duality(spec, out.qubit_perm);
    return out;
}

// ---- automorphisms ----

CodeAutomorphism CodeAutomorphism::shift(long a, long b) {
    return {RingAutomorphism::shift(a, b), false, "x^" + std::to_string(a) + "y^" + std::to_string(b)};
}

CodeAutomorphism CodeAutomorphism::omega() { return {RingAutomorphism::swap_xy(), true, "omega"}; }

std::vector<std::size_t> automorphism_permutation(const BBCodeSpec& spec, const CodeAutomorphism& phi) {
    const RingParams& p = spec.params;
    std::vector<std::size_t> perm(2 * p.size());
    for (std::size_t g = 0; g < p.size(); ++g) {
        Monomial img = phi.map.map_monomial(p, p.x_exp(g), p.y_exp(g));
        Side h = phi.swap_sides ? Side::Vertical : Side::Horizontal;
        Side v = phi.swap_sides ? Side::Horizontal : Side::Vertical;
        perm[g] = qubit(p, h, img.x, img.y);
        perm[p.size() + g] = qubit(p, v, img.x, img.y);
    }
    return perm;
}

// ---- fold gates ----

std::vector<std::pair<std::size_t, std::size_t>> FoldGate::swaps() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (perm.empty()) {
        return out;
    }
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t start = 0; start < perm.size(); ++start) {
        if (seen[start]) {
            continue;
        }
        seen[start] = true;
        // cycle q0 -> q1 -> ... is realised by SWAP(q0,q1), SWAP(q0,q2), ...
        for (std::size_t q = perm[start]; q != start; q = perm[q]) {
            seen[q] = true;
            out.emplace_back(start, q);
        }
    }
    return out;
}

bool FoldGate::is_transversal() const {
    auto unique = [&](const std::vector<std::size_t>& qs) {
        std::vector<bool> used(n, false);
        for (std::size_t q : qs) {
            if (q >= n || used[q]) {
                return false;
            }
            used[q] = true;
        }
        return true;
    };
    if (!unique(hadamards)) {
        return false;
    }
    std::vector<std::size_t> s;
    for (const auto& [q, dagger] : s_gates) {
        s.push_back(q);
    }
    if (!unique(s)) {
        return false;
    }
    std::vector<std::size_t> cz;
    for (const auto& [a, b] : cz_pairs) {
        cz.push_back(a);
        cz.push_back(b);
    }
    if (!unique(cz)) {
        return false;
    }
    return perm.empty() || (perm.size() == n && unique(perm));
}

Pauli conjugate(const FoldGate& gate, const Pauli& p) {
    Pauli out = p;
    for (std::size_t q : gate.hadamards) {
        bool a = out.x.get(q);
        bool b = out.z.get(q);
        out.x.set(q, b);
        out.z.set(q, a);
        if (a && b) {
            out.phase = mod4(out.phase + 2);
        }
    }
    for (const auto& [q, dagger] : gate.s_gates) {
        if (out.x.get(q)) {
            out.z.flip(q);
            out.phase = mod4(out.phase + (dagger ? 3 : 1));
        }
    }
    for (const auto& [a, b] : gate.cz_pairs) {
        bool xa = out.x.get(a);
        bool xb = out.x.get(b);
        if (xb) {
            out.z.flip(a);
        }
        if (xa) {
            out.z.flip(b);
        }
        if (xa && xb) {
            out.phase = mod4(out.phase + 2);
        }
    }
    if (!gate.perm.empty()) {
        out.x = permute(out.x, gate.perm);
        out.z = permute(out.z, gate.perm);
    }
    return out;
}

CliffordTableau apply_to_tableau(const FoldGate& gate) {
    CliffordTableau t(gate.n);
    for (std::size_t g = 0; g < 2 * gate.n; ++g) {
        t.set_image(g, conjugate(gate, t.image(g)));
    }
    return t;
}

FoldGate swap_gate(const BBCodeSpec& spec, const CodeAutomorphism& phi) {
    FoldGate gate;
    gate.kind = FoldGate::Kind::Swap;
    gate.name = "Swap_" + phi.name;
    gate.n = 2 * spec.params.size();
    gate.perm = automorphism_permutation(spec, phi);
    CssCode code = build_bb(spec);
    if (permuted_rows(code.hx, gate.perm) != sorted_rows(code.hx) ||
        permuted_rows(code.hz, gate.perm) != sorted_rows(code.hz)) {
        throw std::invalid_argument(phi.name + " is not an automorphism of the code");
    }
    return gate;
}

FoldGate hadamard_gate(const BBCodeSpec& spec, const ZXDuality& duality) {
    if (!duality.valid) {
        throw std::invalid_argument("duality " + duality.describe() + " does not map X-checks onto Z-checks");
    }
    FoldGate gate;
    gate.kind = FoldGate::Kind::Hadamard;
    gate.name = "H_" + duality.describe();
    gate.n = 2 * spec.params.size();
    gate.hadamards = identity_perm(gate.n);
    gate.perm = duality.qubit_perm;
    return gate;
}

FoldGate hadamard_gate(const BBCodeSpec& spec) { return hadamard_gate(spec, standard_duality(spec)); }

FoldGate cz_gate(const BBCodeSpec& spec) {
    ZXDuality tau = omega_duality(spec);
    if (!tau.valid) {
        throw std::logic_error("tau0*omega failed its check-row certificate");
    }
    const RingParams& p = spec.params;
    FoldGate gate;
    gate.kind = FoldGate::Kind::Cz;
    gate.name = "CZ_tau0omega";
    gate.n = 2 * p.size();
    for (std::size_t g = 0; g < p.size(); ++g) {
        std::size_t image = tau.qubit_perm[g];  // horizontal block is closed under tau
        if (image == g) {
            gate.s_gates.emplace_back(g, false);
            gate.s_gates.emplace_back(p.size() + g, true);
        } else if (g < image) {
            gate.cz_pairs.emplace_back(g, image);
            gate.cz_pairs.emplace_back(p.size() + g, p.size() + image);
        }
    }
    return gate;
}

// ---- verification ----

PreservationReport check_stabilizer_preservation(const CssCode& code, const CliffordTableau& tableau) {
    PreservationReport report;
    const Subspace xs = Subspace::span(code.hx);
    const Subspace zs = Subspace::span(code.hz);
    auto test = [&](const BitMatrix& rows, PauliType type) {
        for (std::size_t r = 0; r < rows.rows(); ++r) {
            Pauli in = type == PauliType::X ? Pauli::x_type(rows.row(r)) : Pauli::z_type(rows.row(r));
            Pauli out = tableau.conjugate(in);
            ++report.checks_tested;
            bool inside = xs.contains(out.x) && zs.contains(out.z);
            if (inside && out.phase == 0) {
                continue;
            }
            report.preserved = false;
            report.failed_type = type;
            report.failed_row = r;
            report.residual_phase = out.phase;
            report.outside_stabilizer = !inside;
            std::ostringstream msg;
            msg << (type == PauliType::X ? "X" : "Z") << "-check " << r;
            if (!inside) {
                msg << " maps outside the stabilizer group";
            } else {
                msg << " maps to a stabilizer with phase i^" << out.phase;
            }
            report.message = msg.str();
            return false;
        }
        return true;
    };
    if (test(code.hx, PauliType::X)) {
        test(code.hz, PauliType::Z);
    }
    return report;
}

BitMatrix basis_pairing(const LogicalBasis& basis) {
    std::size_t k = basis.z_basis.size();
    BitMatrix g(k, basis.x_basis.size());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < basis.x_basis.size(); ++j) {
            g.set(i, j, basis.z_basis[i].dot(basis.x_basis[j]));
        }
    }
    return g;
}

BitMatrix logical_form(const LogicalBasis& basis) {
    BitMatrix g = basis_pairing(basis);
    std::size_t k = g.rows();
    BitMatrix form(2 * k, 2 * k);
    form.set_block(0, k, g);
    form.set_block(k, 0, g.transpose());
    return form;
}

bool is_symplectic(const BitMatrix& m, const BitMatrix& form) {
    return m.rows() == form.rows() && m.cols() == form.cols() && m.transpose() * form * m == form;
}

BitMatrix logical_action(const CssCode& code, const LogicalBasis& basis, const CliffordTableau& tableau) {
    PreservationReport pres = check_stabilizer_preservation(code, tableau);
    if (!pres.preserved) {
        throw std::logic_error("gate does not preserve the stabilizer group: " + pres.message);
    }
    const std::size_t k = basis.z_basis.size();
    const BitMatrix g = basis_pairing(basis);
    auto g_inv = inverse(g);
    if (!g_inv) {
        throw std::invalid_argument("logical basis pairing is singular");
    }
    const BitMatrix g_inv_t = g_inv->transpose();

    BitMatrix out(2 * k, 2 * k);
    auto place = [&](std::size_t col, const Pauli& image) {
        // Z-part b = sum alpha_i z_i:  (b . x_j)_j = G^T alpha
        // X-part a = sum beta_j x_j:   (a . z_i)_i = G beta
        BitVec bz(k);
        BitVec ax(k);
        for (std::size_t i = 0; i < k; ++i) {
            bz.set(i, image.z.dot(basis.x_basis[i]));
            ax.set(i, image.x.dot(basis.z_basis[i]));
        }
        BitVec alpha = g_inv_t.apply(bz);
        BitVec beta = g_inv->apply(ax);
        for (std::size_t i = 0; i < k; ++i) {
            out.set(i, col, alpha.get(i));
            out.set(k + i, col, beta.get(i));
        }
    };
    for (std::size_t j = 0; j < k; ++j) {
        place(j, tableau.conjugate(Pauli::z_type(basis.z_basis[j])));
        place(k + j, tableau.conjugate(Pauli::x_type(basis.x_basis[j])));
    }
    if (!is_symplectic(out, logical_form(basis))) {
        throw std::logic_error("logical action is not symplectic for the basis pairing");
    }
    return out;
}

LogicalBasis as_logical_basis(const PureLogicalBasis& basis) {
    LogicalBasis out;
    for (const auto& z : basis.z_basis) {
        out.z_basis.push_back(z.vec());
    }
    for (const auto& x : basis.x_basis) {
        out.x_basis.push_back(x.vec());
    }
    return out;
}

std::vector<FoldGate> fold_gates(const BBCodeSpec& spec, const LogicalBasis& basis) {
    std::vector<FoldGate> gates;
    gates.push_back(swap_gate(spec, CodeAutomorphism::shift(1, 0)));
    gates.back().name = "Swap_x";
    gates.push_back(swap_gate(spec, CodeAutomorphism::shift(0, 1)));
    gates.back().name = "Swap_y";
    bool symmetric = spec.params.ell == spec.params.m &&
                     RingAutomorphism::swap_xy().apply(spec.c) == spec.d;
    if (symmetric) {
        gates.push_back(swap_gate(spec, CodeAutomorphism::omega()));
    }
    gates.push_back(hadamard_gate(spec));
    if (symmetric) {
        gates.push_back(cz_gate(spec));
    }
    const CssCode code = build_bb(spec);
    for (auto& g : gates) {
        g.logical = logical_action(code, basis, apply_to_tableau(g));
    }
    return gates;
}

// ---- group enumeration ----

bool GateGroup::contains(const BitMatrix& m) const {
    return std::find(elements.begin(), elements.end(), m) != elements.end();
}

GroupTooLarge::GroupTooLarge(std::size_t partial, std::size_t ceiling)
    : std::runtime_error("group enumeration stopped at " + std::to_string(partial) + " elements (ceiling " +
                         std::to_string(ceiling) + ")"),
      partial_(partial) {}

GateGroup enumerate_group(const std::vector<BitMatrix>& generators, std::size_t ceiling, unsigned threads) {
    GateGroup group;
    group.generators = generators;
    std::size_t dim = generators.empty() ? 0 : generators.front().rows();
    for (const auto& g : generators) {
        if (g.rows() != dim || g.cols() != dim) {
            throw std::invalid_argument("generators must be square of equal size");
        }
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    std::unordered_map<BitMatrix, std::size_t, BitMatrixHash> index;
    group.elements.push_back(BitMatrix::identity(dim));
    index.emplace(group.elements.back(), 0);

    std::size_t frontier_begin = 0;
    while (frontier_begin < group.elements.size()) {
        const std::size_t frontier_end = group.elements.size();
        const std::size_t count = frontier_end - frontier_begin;
        // products[i * gens + g] = generators[g] * elements[frontier_begin + i]
        std::vector<BitMatrix> products(count * generators.size());
        unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
        auto work = [&](unsigned id) {
            for (std::size_t i = id; i < count; i += workers) {
                for (std::size_t g = 0; g < generators.size(); ++g) {
                    products[i * generators.size() + g] = generators[g] * group.elements[frontier_begin + i];
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned id = 1; id < workers; ++id) {
            pool.emplace_back(work, id);
        }
        work(0);
        for (auto& t : pool) {
            t.join();
        }
        // Merge in a fixed order so element numbering does not depend on scheduling.
        for (auto& prod : products) {
            if (index.contains(prod)) {
                continue;
            }
            if (group.elements.size() >= ceiling) {
                throw GroupTooLarge(group.elements.size(), ceiling);
            }
            index.emplace(prod, group.elements.size());
            group.elements.push_back(std::move(prod));
        }
        frontier_begin = frontier_end;
    }
    return group;
}

std::string gap_generators(const std::vector<BitMatrix>& generators, const std::vector<std::string>& names) {
    std::ostringstream out;
    out << "# generators act on column vectors\n";
    for (std::size_t g = 0; g < generators.size(); ++g) {
        std::string name = g < names.size() ? names[g] : "g" + std::to_string(g);
        out << name << " := [";
        for (std::size_t r = 0; r < generators[g].rows(); ++r) {
            out << (r ? ",\n  [" : "\n  [");
            for (std::size_t c = 0; c < generators[g].cols(); ++c) {
                out << (c ? "," : "") << (generators[g].get(r, c) ? 1 : 0);
            }
            out << "]";
        }
        out << "] * One(GF(2));\n";
    }
    out << "G := Group(";
    for (std::size_t g = 0; g < generators.size(); ++g) {
        out << (g ? ", " : "") << (g < names.size() ? names[g] : "g" + std::to_string(g));
    }
    out << ");\nPrint(Size(G), \"\\n\");\n";
    return out.str();
}

std::string cayley_csv(const GateGroup& group) {
    std::unordered_map<BitMatrix, std::size_t, BitMatrixHash> index;
    for (std::size_t i = 0; i < group.elements.size(); ++i) {
        index.emplace(group.elements[i], i);
    }
    std::ostringstream out;
    out << "element,generator,product\n";
    for (std::size_t i = 0; i < group.elements.size(); ++i) {
        for (std::size_t g = 0; g < group.generators.size(); ++g) {
            out << i << "," << g << "," << index.at(group.generators[g] * group.elements[i]) << "\n";
        }
    }
    return out.str();
}

}  // namespace bbcodes
