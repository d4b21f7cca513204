#pragma once

// Published BB codes and the explicit logical bases worked out for two of them.

#include <string>
#include <vector>

#include "bbcodes/codes.hpp"
#include "bbcodes/homology.hpp"

namespace bbcodes {

struct CatalogEntry {
    std::string name;  // "[[n,k,d]]"
    int ell;
    int m;
    std::string c;
    std::string d;
    std::size_t n;
    std::size_t k;
    std::size_t distance;
    bool pure;
    bool principal;
    bool symmetric;

    BBCodeSpec spec() const { return BBCodeSpec::parse(ell, m, c, d); }
};

const std::vector<CatalogEntry>& table_codes();
/// Lookup by name, e.g. "[[98,6,12]]"; throws std::out_of_range.
const CatalogEntry& catalog_entry(const std::string& name);

/// Generator of ann(x + y^3 + y^4) on 7 x 7 written as sum_{i<7} x^{7-i} (y^3+y^4)^i (1+y).
RingElem paper_p_98();
/// (1 + x^3 + x^6)(y + y^2)(1 + y^3 + y^6) on 9 x 9.
RingElem paper_p_162();

/// Z-basis P, xP, x^3P | Q, xQ, x^3Q with Q = P(y,x), and the starred dual basis
/// [x iota(Q), 0], [iota(Q), 0], [x^-2 iota(Q), 0] | [0, x iota(P)], [0, iota(P)], [0, x^-2 iota(P)].
/// A nonzero shift multiplies every basis vector by x^shift; the pairing stays the identity.
BasisFixture fixture_98(long shift = 0);
/// Z-basis P, xP, yP, xyP and their omega images; dual candidates are tau_0 omega images.
BasisFixture fixture_162();

/// The field-multiplication matrix on H_h of the [[98,6,12]] code in the basis above.
BitMatrix paper_t_98();

}  // namespace bbcodes
