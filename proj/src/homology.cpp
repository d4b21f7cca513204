#include "bbcodes/homology.hpp"

#include <bit>
#include <limits>

namespace bbcodes {

BitVec LogicalClass::vec() const {
    const std::size_t half = f.params().size();
    BitVec v(2 * half);
    for (std::size_t i : f.coeffs().support()) {
        v.set(i);
    }
    for (std::size_t i : g.coeffs().support()) {
        v.set(half + i);
    }
    return v;
}

LogicalClass LogicalClass::from_vec(RingParams p, const BitVec& v) {
    const std::size_t half = p.size();
    if (v.size() != 2 * half) {
        throw std::invalid_argument("vector length does not match 2 * l * m");
    }
    BitVec f(half);
    BitVec g(half);
    for (std::size_t i : v.support()) {
        (i < half ? f : g).set(i < half ? i : i - half);
    }
    return {RingElem(p, std::move(f)), RingElem(p, std::move(g))};
}

HomologySpace homology_space(const BBCodeSpec& spec) {
    CssCode code = build_bb(spec);
    HomologySpace h{kernel_basis(code.hx), Subspace::span(code.hz), 0};
    h.k = h.cycles.dim() - h.boundaries.dim();
    return h;
}

Ideal tor2_submodule(const RingElem& c, const RingElem& d) {
    const RingParams& p = c.params();
    Ideal ann_cd = annihilator(c * d);
    Ideal target = ideal_product(annihilator(c), ideal_generated(d));
    return Ideal(p, preimage(mul_matrix(d), ann_cd.space(), target.space()));
}

PurityReport purity_check(const BBCodeSpec& spec) {
    const RingElem& c = spec.c;
    const RingElem& d = spec.d;
    Ideal ic = ideal_generated(c);
    Ideal id = ideal_generated(d);
    Ideal icd = ideal_generated(c * d);
    Ideal ann_c = annihilator(c);
    Ideal ann_d = annihilator(d);
    Ideal ann_cd = annihilator(c * d);
    Ideal m = tor2_submodule(c, d);

    PurityReport r;
    r.dim_intersection_mod_product = ic.intersection(id).dim() - icd.dim();
    r.dim_ann_cd_mod_m = ann_cd.dim() - m.dim();
    r.dim_ann_c_mod = ann_c.dim() - ideal_product(ann_c, id).dim();
    r.dim_ann_d_mod = ann_d.dim() - ideal_product(ic, ann_d).dim();
    r.dim_h = logical_count(build_bb(spec));
    r.pure = r.dim_intersection_mod_product == 0;
    r.direct_sum = r.pure && r.dim_ann_cd_mod_m == 0;

    const long lhs = static_cast<long>(r.dim_h);
    const long rhs = static_cast<long>(r.dim_ann_c_mod + r.dim_ann_d_mod + r.dim_intersection_mod_product) -
                     static_cast<long>(r.dim_ann_cd_mod_m);
    if (lhs != rhs) {
        throw std::logic_error("exactness identity violated: dim H = " + std::to_string(lhs) +
                               " but the sequence terms give " + std::to_string(rhs));
    }
    return r;
}

PrincipalityReport principality_check(const BBCodeSpec& spec) {
    PrincipalityReport r;
    Ideal ic = ideal_generated(spec.c);
    Ideal id = ideal_generated(spec.d);
    r.pure = ic.intersection(id).dim() == ideal_generated(spec.c * spec.d).dim();
    r.ann_c = find_principal_generator(annihilator(spec.c));
    r.ann_d = find_principal_generator(annihilator(spec.d));
    r.p = r.ann_c.generator;
    r.q = r.ann_d.generator;
    using S = PrincipalSearchResult::Status;
    if (!r.pure || r.ann_c.status == S::Absent || r.ann_d.status == S::Absent) {
        r.status = PrincipalityReport::Status::NotPrincipal;
    } else if (r.ann_c.status == S::Found && r.ann_d.status == S::Found) {
        r.status = PrincipalityReport::Status::Principal;
    } else {
        r.status = PrincipalityReport::Status::Unknown;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Semiperiodic codes

namespace {

RingElem transpose_elem(const RingElem& a) {
    const RingParams& p = a.params();
    RingParams t(p.m, p.ell);
    RingElem out(t);
    for (const auto& mono : a.support()) {
        out.flip(mono.y, mono.x);
    }
    return out;
}

/// Gray-code walk over the nonzero span of `rows`, calling visit(v) for each.
template <typename Visit>
void walk_span(const std::vector<BitVec>& rows, std::size_t len, Visit&& visit) {
    BitVec v(len);
    const std::uint64_t total = std::uint64_t{1} << rows.size();
    for (std::uint64_t step = 1; step < total; ++step) {
        v ^= rows[static_cast<std::size_t>(std::countr_zero(step))];
        visit(v);
    }
}

}  // namespace

std::optional<std::size_t> min_weight(const Ideal& ideal, std::size_t max_dim) {
    if (ideal.dim() > max_dim) {
        return std::nullopt;
    }
    if (ideal.dim() == 0) {
        return 0;
    }
    std::size_t best = ideal.params().size();
    walk_span(ideal.space().basis().row_vectors(), ideal.params().size(),
              [&](const BitVec& v) { best = std::min(best, v.popcount()); });
    return best;
}

SemiperiodicData semiperiodic_generator(const RingElem& c, Axis axis) {
    if (axis == Axis::Y) {
        SemiperiodicData data = semiperiodic_generator(transpose_elem(c), Axis::X);
        data.axis = Axis::Y;
        data.p = transpose_elem(data.p);
        return data;
    }
    const RingParams& p = c.params();
    int k = 0;
    std::vector<int> zeta_exps;
    for (const auto& mono : c.support()) {
        if (mono.x == 0) {
            zeta_exps.push_back(static_cast<int>(mono.y));
            continue;
        }
        if (k != 0) {
            throw std::invalid_argument("not semiperiodic: more than one monomial involves x");
        }
        if (mono.y != 0) {
            throw std::invalid_argument("not semiperiodic: the x-monomial x^" + std::to_string(mono.x) +
                                        " carries a y factor");
        }
        k = static_cast<int>(mono.x);
    }
    if (k == 0) {
        throw std::invalid_argument("not semiperiodic: no monomial x^k with 0 < k < l");
    }
    if (p.ell % k != 0) {
        throw std::invalid_argument("not semiperiodic: k = " + std::to_string(k) + " does not divide l = " +
                                    std::to_string(p.ell));
    }
    SemiperiodicData data;
    data.axis = Axis::X;
    data.k = k;
    data.kprime = p.ell / k;
    data.zeta = Gf2Poly::from_exponents(zeta_exps);
    data.degenerate = data.zeta.is_zero();
    data.chi = (pow_mod_cyclic(data.zeta, data.kprime, p.m) + Gf2Poly::monomial(0)).reduce_cyclic(p.m);
    const Gf2Poly modulus = Gf2Poly::cyclic_modulus(p.m);
    data.chi_gcd = gcd(data.chi, modulus);
    data.g = modulus.divmod(data.chi_gcd).first;

    data.p = RingElem(p);
    Gf2Poly zeta_power = Gf2Poly::monomial(0);
    for (int i = 0; i < data.kprime; ++i) {
        Gf2Poly column = (zeta_power * data.g).reduce_cyclic(p.m);
        data.p += embed_y(p, column).shifted(p.ell - i * k, 0);
        zeta_power = (zeta_power * data.zeta).reduce_cyclic(p.m);
    }

    RingParams line(1, p.m);
    data.d_chi = min_weight(ideal_generated(embed_y(line, data.g.reduce_cyclic(p.m))), 24);

    if (!(ideal_generated(data.p) == annihilator(c))) {
        throw std::logic_error("semiperiodic generator does not generate ann(c)");
    }
    return data;
}

std::optional<SemiperiodicData> detect_semiperiodic(const RingElem& c) {
    for (Axis axis : {Axis::X, Axis::Y}) {
        try {
            return semiperiodic_generator(c, axis);
        } catch (const std::invalid_argument&) {
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> semiperiodic_distance(const SemiperiodicData& data, int n, std::size_t max_dim) {
    RingParams line(1, n);
    Ideal code = ideal_generated(embed_y(line, data.g.reduce_cyclic(n)));
    if (code.dim() > max_dim) {
        return std::nullopt;
    }
    if (code.dim() == 0) {
        return 0;
    }
    // For each power zeta^i keep the images of the basis so the walk stays incremental.
    const auto rows = code.space().basis().row_vectors();
    std::vector<std::vector<BitVec>> images(static_cast<std::size_t>(data.kprime));
    RingElem zeta = embed_y(line, data.zeta.reduce_cyclic(n));
    RingElem power = RingElem::one(line);
    for (int i = 0; i < data.kprime; ++i) {
        for (const auto& r : rows) {
            images[static_cast<std::size_t>(i)].push_back((power * RingElem(line, r)).coeffs());
        }
        power = power * zeta;
    }
    std::vector<BitVec> current(images.size(), BitVec(line.size()));
    std::size_t best = std::numeric_limits<std::size_t>::max();
    const std::uint64_t total = std::uint64_t{1} << rows.size();
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto t = static_cast<std::size_t>(std::countr_zero(step));
        std::size_t weight = 0;
        for (std::size_t i = 0; i < images.size(); ++i) {
            current[i] ^= images[i][t];
            weight += current[i].popcount();
        }
        best = std::min(best, weight);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Logical bases

std::vector<RingElem> monomial_coset_representatives(const BBCodeSpec& spec) {
    const RingParams& p = spec.params;
    Ideal ideal = ideal_generated(p, {spec.c, spec.d});
    EchelonBasis span(p.size());
    for (const auto& row : ideal.space().basis().row_vectors()) {
        span.insert(row);
    }
    std::vector<RingElem> reps;
    const std::size_t target = quotient_dim(ideal);
    for (std::size_t idx = 0; idx < p.size() && reps.size() < target; ++idx) {
        RingElem mono = RingElem::monomial(p, p.x_exp(idx), p.y_exp(idx));
        if (span.insert(mono.coeffs())) {
            reps.push_back(std::move(mono));
        }
    }
    return reps;
}

LogicalClass tau0_dual(const LogicalClass& z) {
    RingAutomorphism iota = RingAutomorphism::antipode();
    return {iota.apply(z.g), iota.apply(z.f)};
}

PureLogicalBasis pure_logical_basis(const BBCodeSpec& spec, const BasisFixture& fixture) {
    const RingParams& p = spec.params;
    PureLogicalBasis basis{{}, {}, BitMatrix(), 0, RingElem(p), RingElem(p), {}, {}};
    if (fixture.p && fixture.q) {
        basis.p = *fixture.p;
        basis.q = *fixture.q;
    } else {
        PrincipalityReport pr = principality_check(spec);
        if (pr.status != PrincipalityReport::Status::Principal) {
            throw std::invalid_argument("code is not pure and principal; no structured logical basis");
        }
        basis.p = fixture.p.value_or(*pr.p);
        basis.q = fixture.q.value_or(*pr.q);
    }
    const bool explicit_multipliers = !fixture.h_multipliers.empty() || !fixture.v_multipliers.empty();
    if (explicit_multipliers) {
        basis.h_multipliers = fixture.h_multipliers;
        basis.v_multipliers = fixture.v_multipliers;
    } else {
        basis.h_multipliers = monomial_coset_representatives(spec);
        basis.v_multipliers = basis.h_multipliers;
    }

    CssCode code = build_bb(spec);
    const std::size_t k = logical_count(code);
    EchelonBasis span(code.n());
    for (const auto& row : code.hz.row_vectors()) {
        span.insert(row);
    }
    auto add = [&](LogicalClass cls) {
        BitVec v = cls.vec();
        if (code.hx.apply(v).any()) {
            throw std::logic_error("basis candidate is not a cycle");
        }
        if (span.insert(v)) {
            basis.z_basis.push_back(std::move(cls));
            return true;
        }
        if (explicit_multipliers) {
            throw std::logic_error("given logical classes are dependent modulo boundaries");
        }
        return false;
    };
    for (const auto& f : basis.h_multipliers) {
        add({f * basis.p, RingElem(p)});
    }
    basis.horizontal_count = basis.z_basis.size();
    for (const auto& f : basis.v_multipliers) {
        add({RingElem(p), f * basis.q});
    }
    if (basis.z_basis.size() != k) {
        throw std::logic_error("logical classes span " + std::to_string(basis.z_basis.size()) +
                               " dimensions of homology, expected " + std::to_string(k));
    }

    if (fixture.x_basis) {
        basis.x_basis = *fixture.x_basis;
    } else {
        std::vector<BitVec> images;
        for (const auto& z : basis.z_basis) {
            images.push_back(tau0_dual(z).vec());
        }
        BitMatrix gram(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                gram.set(i, j, basis.z_basis[i].vec().dot(images[j]));
            }
        }
        auto inv = inverse(gram);
        if (!inv) {
            throw std::logic_error("tau_0 images do not pair nondegenerately with the Z-basis");
        }
        for (std::size_t j = 0; j < k; ++j) {
            BitVec x(code.n());
            for (std::size_t t = 0; t < k; ++t) {
                if (inv->get(t, j)) {
                    x ^= images[t];
                }
            }
            basis.x_basis.push_back(LogicalClass::from_vec(p, x));
        }
    }
    basis.pairing = BitMatrix(k, basis.x_basis.size());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < basis.x_basis.size(); ++j) {
            basis.pairing.set(i, j, basis.z_basis[i].vec().dot(basis.x_basis[j].vec()));
        }
    }
    return basis;
}

BitVec z_coordinates(const PureLogicalBasis& basis, const BitVec& cycle) {
    BitVec coords(basis.x_basis.size());
    for (std::size_t i = 0; i < basis.x_basis.size(); ++i) {
        coords.set(i, cycle.dot(basis.x_basis[i].vec()));
    }
    return coords;
}

BitMatrix logical_action_of_multiplication(const PureLogicalBasis& basis, long a, long b) {
    const std::size_t k = basis.z_basis.size();
    BitMatrix out(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto& z = basis.z_basis[j];
        LogicalClass image{z.f.shifted(a, b), z.g.shifted(a, b)};
        BitVec coords = z_coordinates(basis, image.vec());
        for (std::size_t i = 0; i < k; ++i) {
            out.set(i, j, coords.get(i));
        }
    }
    return out;
}

}  // namespace bbcodes
