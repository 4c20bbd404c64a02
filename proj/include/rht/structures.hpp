#pragma once

#include "rht/coeff.hpp"
#include "rht/graded.hpp"
#include "rht/linalg.hpp"

#include <string>
#include <vector>

namespace rht {

// Term key of the A-linear representing algebra A (x) S(W): a coefficient
// basis key (Coeff::UNIT allowed) times a symmetric word in dual generators.
struct TKey {
    int a = Coeff::UNIT;
    SymWord w;
    bool operator<(const TKey& o) const { return a != o.a ? a < o.a : w < o.w; }
    bool operator==(const TKey& o) const { return a == o.a && w == o.w; }
};
using TElem = Combo<TKey>;

inline TElem to_tensor(const Combo<SymWord>& x) {
    TElem out;
    for (const auto& [w, c] : x) out[{Coeff::UNIT, w}] = c;
    return out;
}

// An L-infinity algebra stored as the degree -1 derivation m+d of its
// representing completed symmetric algebra, given on the dual generators.
// ops[i] is the image of the dual generator of V's i-th basis vector, a
// combination of words in dual-generator indices (weight >= 1).
class LinftyAlg {
public:
    LinftyAlg() = default;
    LinftyAlg(GradedSpace space, std::map<int, Combo<SymWord>> ops, std::string name = "");

    const GradedSpace& space() const { return space_; }
    const GradedSpace& rep() const { return rep_; }
    const std::vector<Deg>& rep_degs() const { return rep_degs_; }
    const std::map<int, Combo<SymWord>>& ops() const { return ops_; }
    const Combo<SymWord>& op(int gen) const;
    const std::string& name() const { return name_; }

    std::size_t dim() const { return space_.size(); }
    unsigned max_op_weight() const;
    bool is_dgla() const { return max_op_weight() <= 2; }
    bool has_zero_linear_part() const;  // minimal

private:
    GradedSpace space_;
    GradedSpace rep_;
    std::vector<Deg> rep_degs_;
    std::map<int, Combo<SymWord>> ops_;
    std::string name_;
};

// Dgla presented by tables; bracket given on pairs i <= j, the rest follows
// by graded antisymmetry.
struct DglaTables {
    GradedSpace space;
    std::map<int, LinComb> diff;                       // d(v_j) as a combination
    std::map<std::pair<int, int>, LinComb> bracket;    // [v_i, v_j], i <= j
    std::string name;
};

LinftyAlg tables_to_linfty(const DglaTables& t);
DglaTables extract_tables(const LinftyAlg& l);  // weight <= 2 structures only

// (m+d)^2 = 0 expanded on every dual generator up to the truncation weight.
CheckResult check_linfty(const LinftyAlg& l, const TruncProfile& trunc);

// Chain-complex slice of (V, m_1) over a degree window.
ComplexSlice linfty_slice(const LinftyAlg& l, Deg lo, Deg hi);
BettiTable homology(const LinftyAlg& l, Deg lo, Deg hi);

// An L-infinity morphism source -> target, stored as the cdga map of
// representing algebras: images of the *target* dual generators as words in
// the *source* dual generators (no constant terms).
struct LinftyMap {
    LinftyAlg source;
    LinftyAlg target;
    std::map<int, Combo<SymWord>> images;
    std::string name;
};

LinftyMap identity_map(const LinftyAlg& l);
Combo<SymWord> apply_alg_map(const std::map<int, Combo<SymWord>>& images,
                             const std::vector<Deg>& out_letter_degs, const Combo<SymWord>& x,
                             unsigned weight_max);
CheckResult check_linfty_map(const LinftyMap& f, const TruncProfile& trunc);

// Rewrites the structure in a new basis: columns of `basis` express the new
// basis vectors in the old one (degree-preserving, invertible).
LinftyAlg base_change(const LinftyAlg& l, const std::vector<Combo<int>>& basis,
                      const std::vector<std::string>& names);

struct CoverResult {
    LinftyAlg cover;
    LinftyMap inclusion;  // cover -> original, strict
};
CoverResult connected_cover(const LinftyAlg& l);

// g semidirect Sigma^{-shift} g<0> with the adjoint action on the shifted
// abelian summand.
LinftyAlg square_zero_extension(const LinftyAlg& g, int shift, const TruncProfile& trunc);

std::string telem_str(const TElem& x, const Coeff& a, const GradedSpace& rep);
std::string sym_elem_str(const Combo<SymWord>& x, const GradedSpace& rep);

}  // namespace rht
