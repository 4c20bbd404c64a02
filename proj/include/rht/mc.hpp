#pragma once

#include "rht/coeff.hpp"
#include "rht/structures.hpp"

#include <vector>

namespace rht {

// A degree-0 element of (A (x) Sigma V): terms (coefficient-basis key,
// V-generator index) -> Rat. The unit key is permitted only for dglas, where
// the Maurer-Cartan series is finite without nilpotence.
struct MCElem {
    Combo<std::pair<int, int>> terms;

    bool zero() const { return terms.empty(); }
};

// Validates degrees (total degree 0 in A (x) Sigma V) and the unit rule.
MCElem make_mc(const LinftyAlg& v, const Coeff& a, Combo<std::pair<int, int>> terms);

// the evaluation map f_xi : S(W) -> A on dual generators
std::map<int, LinComb> mc_images(const MCElem& xi);

struct MCVerdict {
    bool ok = false;
    MCElem residual;  // degree -1 element of A (x) Sigma V
};

// Exact residual of the Maurer-Cartan equation within the truncation.
MCVerdict mc_verify(const LinftyAlg& v, const Coeff& a, const MCElem& xi,
                    const TruncProfile& trunc);

// A continuous cdga map S(W) -> A, given on dual generators with values in
// the augmentation ideal.
struct CdgaMapToCoeff {
    std::map<int, LinComb> images;
};

MCElem mc_from_map(const LinftyAlg& v, const Coeff& a, const CdgaMapToCoeff& f);
CdgaMapToCoeff mc_to_map(const LinftyAlg& v, const Coeff& a, const MCElem& xi);

// The canonical element of MC(V, truncated S(W)_+) representing the identity;
// `words` must be the truncated word basis aligned with A's basis indices.
MCElem canonical_mc(const LinftyAlg& v, const Coeff& a, const std::vector<SymWord>& words);

// An interval element: a Maurer-Cartan candidate over A[z,dz]. Terms are
// (base key a, z-power, dz flag, generator) with rational coefficients.
struct IntervalTerm {
    int a = Coeff::UNIT;
    unsigned zpow = 0;
    bool dz = false;
    int gen = 0;
};
struct IntervalElem {
    std::vector<std::pair<IntervalTerm, Rat>> terms;
};

struct HomotopyVerdict {
    bool ok = false;
    MCElem at0;
    MCElem at1;
};

// Checks the MC equation for h over A[z,dz] with exact polynomial arithmetic
// and returns the two endpoint evaluations (z := 0, 1; dz := 0).
HomotopyVerdict homotopy_verify(const LinftyAlg& v, const Coeff& a, const IntervalElem& h,
                                const TruncProfile& trunc);

// Gauge transform of xi by lambda (dgla only): e^{ad l}(xi) minus the
// correction sum_k (ad l)^k (d l)/(k+1)!, truncated by nilpotence.
MCElem gauge_act(const LinftyAlg& v, const Coeff& a, const MCElem& lambda, const MCElem& xi);

// Degree-1 elements of A (x) Sigma V (gauge parameters) share MCElem storage;
// this validates the gauge-parameter constraints instead.
MCElem make_gauge_param(const LinftyAlg& v, const Coeff& a, Combo<std::pair<int, int>> terms);

std::string mc_str(const MCElem& xi, const LinftyAlg& v, const Coeff& a);

}  // namespace rht
