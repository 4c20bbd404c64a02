#pragma once

#include "rht/graded.hpp"

#include <memory>
#include <string>
#include <vector>

namespace rht {

// A bracketing over the letter alphabet: a leaf or a pair of subtrees.
struct LieWord {
    int letter = -1;
    std::vector<LieWord> kids;  // empty (leaf) or exactly two

    bool leaf() const { return kids.empty(); }
    bool operator==(const LieWord& o) const;
    bool operator<(const LieWord& o) const;
};

std::vector<int> foliage(const LieWord& w);
unsigned lieword_weight(const LieWord& w);
Deg lieword_deg(const LieWord& w, const std::vector<Deg>& letter_degs);
std::string lieword_str(const LieWord& w, const GradedSpace& letters);

// All Lyndon words over {0..alphabet-1} of length 1..maxlen, in lexicographic
// order (Duval's algorithm).
std::vector<std::vector<int>> lyndon_words(std::size_t alphabet, unsigned maxlen);

// Standard (right-normed Shirshov) bracketing of a Lyndon word.
LieWord standard_bracketing(const std::vector<int>& word);

// Image of a bracketing in the tensor algebra, [a,b] = ab - (-1)^{|a||b|} ba.
Combo<std::vector<int>> tensor_expand(const LieWord& w, const std::vector<Deg>& letter_degs);

// The free graded Lie algebra on a graded alphabet, truncated by weight and
// degree window. Basis: standard bracketings of Lyndon words, plus [u,u] for
// each Lyndon u of odd degree.
class FreeLie {
public:
    struct BasisElement {
        LieWord word;
        Deg deg = 0;
        unsigned weight = 1;
    };

    FreeLie(GradedSpace letters, TruncProfile trunc);

    const GradedSpace& letters() const { return letters_; }
    const TruncProfile& trunc() const { return trunc_; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    Deg deg(int i) const { return basis_.at(static_cast<std::size_t>(i)).deg; }
    int find(const LieWord& w) const;  // -1 when absent

    // graded bracket of basis elements, rewritten into the basis; terms
    // outside the truncation are dropped
    const Combo<int>& bracket(int i, int j) const;
    Combo<int> bracket(const Combo<int>& x, const Combo<int>& y) const;

    // rewrites an arbitrary bracketing into the basis
    Combo<int> rewrite(const LieWord& w) const;

    GradedSpace basis_space(const std::string& prefix = "") const;

private:
    Combo<int> solve_in_basis(const Combo<std::vector<int>>& tensor, unsigned weight,
                              Deg deg) const;

    GradedSpace letters_;
    std::vector<Deg> letter_degs_;
    TruncProfile trunc_;
    std::vector<BasisElement> basis_;
    std::map<LieWord, int> index_;
    mutable std::map<std::pair<int, int>, Combo<int>> bracket_cache_;
};

}  // namespace rht
