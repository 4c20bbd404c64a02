#include "rht/graded.hpp"

#include <algorithm>

namespace rht {

GradedSpace::GradedSpace(std::vector<Generator> gens) {
    for (auto& g : gens) add(g.name, g.deg);
}

int GradedSpace::add(const std::string& name, Deg deg) {
    if (index_.count(name)) throw std::invalid_argument("duplicate generator name: " + name);
    int id = static_cast<int>(gens_.size());
    gens_.push_back({name, deg});
    index_[name] = id;
    return id;
}

int GradedSpace::index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int GradedSpace::index_checked(const std::string& name) const {
    int i = index(name);
    if (i < 0) throw std::invalid_argument("unknown generator: " + name);
    return i;
}

std::map<Deg, std::size_t> GradedSpace::dims() const {
    std::map<Deg, std::size_t> out;
    for (const auto& g : gens_) ++out[g.deg];
    return out;
}

int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<Deg>& degs) {
    if (perm.size() != degs.size())
        throw std::invalid_argument("koszul_sign: permutation/degree length mismatch");
    // Bubble the permutation to identity, flipping sign whenever two odd
    // elements transpose.
    std::vector<std::size_t> p = perm;
    int sign = 1;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        for (std::size_t j = 0; j + 1 < p.size() - i; ++j) {
            if (p[j] > p[j + 1]) {
                if (odd_deg(degs[p[j]]) && odd_deg(degs[p[j + 1]])) sign = -sign;
                std::swap(p[j], p[j + 1]);
            }
        }
    }
    return sign;
}

std::optional<std::pair<SymWord, int>> sym_normalize(const std::vector<int>& word,
                                                     const std::vector<Deg>& letter_degs) {
    SymWord w = word;
    int sign = 1;
    // insertion sort with Koszul sign per adjacent swap
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && w[j - 1] > w[j]) {
            bool o1 = odd_deg(letter_degs[static_cast<std::size_t>(w[j - 1])]);
            bool o2 = odd_deg(letter_degs[static_cast<std::size_t>(w[j])]);
            if (o1 && o2) sign = -sign;
            std::swap(w[j - 1], w[j]);
            --j;
        }
    }
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == w[i + 1] && odd_deg(letter_degs[static_cast<std::size_t>(w[i])]))
            return std::nullopt;
    }
    return std::make_pair(std::move(w), sign);
}

Int word_automorphisms(const SymWord& w) {
    Int out = 1;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        out *= factorial(static_cast<unsigned>(j - i));
        i = j;
    }
    return out;
}

void sym_word_multiply(Combo<SymWord>& dst, const SymWord& a, const SymWord& b, const Rat& coeff,
                       const std::vector<Deg>& letter_degs) {
    if (coeff == 0) return;
    std::vector<int> concat;
    concat.reserve(a.size() + b.size());
    concat.insert(concat.end(), a.begin(), a.end());
    concat.insert(concat.end(), b.begin(), b.end());
    auto norm = sym_normalize(concat, letter_degs);
    if (!norm) return;
    combo_add(dst, norm->first, coeff * norm->second);
}

Combo<SymWord> apply_letter_derivation(const std::map<int, Combo<SymWord>>& images, int parity,
                                       const std::vector<Deg>& letter_degs,
                                       const Combo<SymWord>& x, unsigned weight_max) {
    Combo<SymWord> out;
    const bool odd_op = (parity % 2) != 0;
    for (const auto& [w, c] : x) {
        int prefix_sign = 1;
        for (std::size_t i = 0; i < w.size(); ++i) {
            auto img = images.find(w[i]);
            if (img != images.end() && !img->second.empty()) {
                for (const auto& [u, cu] : img->second) {
                    if (u.size() + w.size() - 1 > weight_max) continue;
                    std::vector<int> result;
                    result.reserve(u.size() + w.size() - 1);
                    result.insert(result.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                    result.insert(result.end(), u.begin(), u.end());
                    result.insert(result.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
                    auto norm = sym_normalize(result, letter_degs);
                    if (!norm) continue;
                    combo_add(out, norm->first, c * cu * (prefix_sign * norm->second));
                }
            }
            if (odd_op && odd_deg(letter_degs[static_cast<std::size_t>(w[i])]))
                prefix_sign = -prefix_sign;
        }
    }
    return out;
}

std::string word_str(const SymWord& w, const GradedSpace& space) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += "*";
        out += space.name(static_cast<std::size_t>(w[i]));
    }
    return out;
}

}  // namespace rht
