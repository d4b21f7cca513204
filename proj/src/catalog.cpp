#include "bbcodes/catalog.hpp"

#include <stdexcept>

namespace bbcodes {

const std::vector<CatalogEntry>& table_codes() {
    static const std::vector<CatalogEntry> rows = {
        {"[[90,8,10]]", 3, 15, "1 + y + y^5", "y^3 + x + x^2", 90, 8, 10, true, true, false},
        {"[[144,12,12]]", 6, 12, "x^3 + y + y^2", "y^3 + x + x^2", 144, 12, 12, false, false, false},
        {"[[108,16,6]]", 6, 9, "1 + y + y^2", "y^3 + x^2 + x^4", 108, 16, 6, true, true, false},
        {"[[128,14,12]]", 8, 8, "x^2 + y + y^3 + y^4", "y^2 + x + x^3 + x^4", 128, 14, 12, false, false, true},
        {"[[162,4,16]]", 9, 9, "1 + x + y", "x^3 + y + y^2", 162, 4, 16, true, true, false},
        {"[[162,12,8]]", 9, 9, "1 + x + y^6", "y^3 + x^2 + x^3", 162, 12, 8, true, true, false},
        {"[[162,24,6]]", 9, 9, "1 + y + y^2", "y^3 + x^3 + x^6", 162, 24, 6, true, true, false},
        {"[[270,8,18]]", 9, 15, "x^3 + y + y^2", "y^3 + x + x^2", 270, 8, 18, true, true, false},
        {"[[98,6,12]]", 7, 7, "x + y^3 + y^4", "y + x^3 + x^4", 98, 6, 12, true, true, true},
        {"[[162,8,12]]", 9, 9, "x^3 + y + y^2", "y^3 + x + x^2", 162, 8, 12, true, true, true},
    };
    return rows;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& row : table_codes()) {
        if (row.name == name) {
            return row;
        }
    }
    throw std::out_of_range("no catalog entry named " + name);
}

RingElem paper_p_98() {
    RingParams p(7, 7);
    RingElem zeta = parse_ring_elem(p, "y^3 + y^4");
    RingElem g = parse_ring_elem(p, "1 + y");
    RingElem out(p);
    RingElem power = RingElem::one(p);
    for (int i = 0; i <= 6; ++i) {
        out += RingElem::monomial(p, 7 - i, 0) * power * g;
        power = power * zeta;
    }
    return out;
}

RingElem paper_p_162() {
    RingParams p(9, 9);
    return parse_ring_elem(p, "1 + x^3 + x^6") * parse_ring_elem(p, "y + y^2") * parse_ring_elem(p, "1 + y^3 + y^6");
}

BasisFixture fixture_98(long shift) {
    RingParams p(7, 7);
    const RingAutomorphism omega = RingAutomorphism::swap_xy();
    const RingAutomorphism iota = RingAutomorphism::antipode();
    BasisFixture fx;
    fx.p = paper_p_98();
    fx.q = omega.apply(*fx.p);
    fx.h_multipliers = {RingElem::monomial(p, shift, 0), RingElem::monomial(p, 1 + shift, 0),
                        RingElem::monomial(p, 3 + shift, 0)};
    fx.v_multipliers = fx.h_multipliers;
    const RingElem iq = iota.apply(*fx.q);
    const RingElem ip = iota.apply(*fx.p);
    const RingElem zero(p);
    std::vector<LogicalClass> duals;
    for (long s : {1L, 0L, -2L}) {
        duals.push_back({iq.shifted(s + shift, 0), zero});
    }
    for (long s : {1L, 0L, -2L}) {
        duals.push_back({zero, ip.shifted(s + shift, 0)});
    }
    fx.x_basis = duals;
    return fx;
}

BasisFixture fixture_162() {
    RingParams p(9, 9);
    const RingAutomorphism omega = RingAutomorphism::swap_xy();
    const RingAutomorphism tau0_omega = RingAutomorphism::compose(omega, RingAutomorphism::antipode());
    BasisFixture fx;
    fx.p = paper_p_162();
    fx.q = omega.apply(*fx.p);
    fx.h_multipliers = {RingElem::one(p), RingElem::monomial(p, 1, 0), RingElem::monomial(p, 0, 1),
                        RingElem::monomial(p, 1, 1)};
    for (const auto& f : fx.h_multipliers) {
        fx.v_multipliers.push_back(omega.apply(f));
    }
    std::vector<LogicalClass> duals;
    const RingElem zero(p);
    for (const auto& f : fx.h_multipliers) {
        duals.push_back({tau0_omega.apply(f * *fx.p), zero});
    }
    for (const auto& f : fx.v_multipliers) {
        duals.push_back({zero, tau0_omega.apply(f * *fx.q)});
    }
    fx.x_basis = duals;
    return fx;
}

BitMatrix paper_t_98() { return BitMatrix::from_strings({"010", "101", "011"}); }

}  // namespace bbcodes
