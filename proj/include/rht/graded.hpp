#pragma once

#include "rht/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rht {

// Internal grading is homological throughout. Cohomological input degree n
// is stored as -n at the parser/builder boundary.
using Deg = int;

inline Deg suspend(Deg d) { return d + 1; }
inline Deg desuspend(Deg d) { return d - 1; }
inline bool odd_deg(Deg d) { return (d % 2) != 0; }

struct TruncProfile {
    unsigned weight_max = 1;
    Deg deg_min = 0;
    Deg deg_max = 0;

    TruncProfile() = default;
    TruncProfile(unsigned w, Deg lo, Deg hi) : weight_max(w), deg_min(lo), deg_max(hi) {
        if (w < 1) throw std::invalid_argument("TruncProfile: weight_max must be >= 1");
        if (lo > hi) throw std::invalid_argument("TruncProfile: deg_min > deg_max");
    }
    bool in_window(Deg d) const { return d >= deg_min && d <= deg_max; }
};

struct Generator {
    std::string name;
    Deg deg = 0;
};

class GradedSpace {
public:
    GradedSpace() = default;
    explicit GradedSpace(std::vector<Generator> gens);

    int add(const std::string& name, Deg deg);
    std::size_t size() const { return gens_.size(); }
    const Generator& gen(std::size_t i) const { return gens_.at(i); }
    Deg deg(std::size_t i) const { return gens_.at(i).deg; }
    bool odd(std::size_t i) const { return odd_deg(gens_.at(i).deg); }
    const std::string& name(std::size_t i) const { return gens_.at(i).name; }
    int index(const std::string& name) const;          // -1 if absent
    int index_checked(const std::string& name) const;  // throws if absent
    const std::vector<Generator>& gens() const { return gens_; }

    std::map<Deg, std::size_t> dims() const;

private:
    std::vector<Generator> gens_;
    std::map<std::string, int> index_;
};

// Sign accumulated when permuting homogeneous elements of the given degrees
// by `perm` (result position i holds input element perm[i]); computed by
// explicit adjacent transpositions, (-1)^{|a||b|} per swap.
int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<Deg>& degs);

// A word in the symmetric algebra: generator indices in canonical
// (ascending) order, odd generators never repeated.
using SymWord = std::vector<int>;

// Sorts a word into canonical order, accumulating the Koszul sign of the
// letters' degrees (taken from `degs`, indexed by letter). Returns nullopt
// when an odd letter repeats (its square is zero).
std::optional<std::pair<SymWord, int>> sym_normalize(const std::vector<int>& word,
                                                     const std::vector<Deg>& letter_degs);

inline Deg word_deg(const SymWord& w, const std::vector<Deg>& letter_degs) {
    Deg d = 0;
    for (int i : w) d += letter_degs[static_cast<std::size_t>(i)];
    return d;
}

// |Aut(w)| = product of multiplicities factorial; for canonical words.
Int word_automorphisms(const SymWord& w);

// Finite Q-linear combination keyed by an ordered word type.
template <class Key>
using Combo = std::map<Key, Rat>;

template <class Key>
void combo_add(Combo<Key>& dst, const Key& k, const Rat& c) {
    if (c == 0) return;
    auto it = dst.find(k);
    if (it == dst.end()) {
        dst.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) dst.erase(it);
    }
}

template <class Key>
void combo_add_scaled(Combo<Key>& dst, const Combo<Key>& src, const Rat& c) {
    if (c == 0) return;
    for (const auto& [k, v] : src) combo_add(dst, k, v * c);
}

template <class Key>
bool combo_eq(const Combo<Key>& a, const Combo<Key>& b) {
    return a == b;
}

using LinComb = Combo<int>;  // linear combination of basis indices

// Multiplies two canonical words: concatenation + normalization.
void sym_word_multiply(Combo<SymWord>& dst, const SymWord& a, const SymWord& b, const Rat& coeff,
                       const std::vector<Deg>& letter_degs);

// Applies a graded derivation, given by its images on letters, to a word
// combo by the Leibniz rule. Terms of weight > weight_max are dropped.
Combo<SymWord> apply_letter_derivation(const std::map<int, Combo<SymWord>>& images, int parity,
                                       const std::vector<Deg>& letter_degs,
                                       const Combo<SymWord>& x, unsigned weight_max);

std::string word_str(const SymWord& w, const GradedSpace& space);

}  // namespace rht
