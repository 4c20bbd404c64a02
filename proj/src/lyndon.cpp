#include "rht/lyndon.hpp"

#include "rht/linalg.hpp"

#include <algorithm>

namespace rht {

bool LieWord::operator==(const LieWord& o) const {
    return letter == o.letter && kids == o.kids;
}

bool LieWord::operator<(const LieWord& o) const {
    if (letter != o.letter) return letter < o.letter;
    return kids < o.kids;
}

std::vector<int> foliage(const LieWord& w) {
    if (w.leaf()) return {w.letter};
    std::vector<int> out = foliage(w.kids[0]);
    std::vector<int> r = foliage(w.kids[1]);
    out.insert(out.end(), r.begin(), r.end());
    return out;
}

unsigned lieword_weight(const LieWord& w) {
    if (w.leaf()) return 1;
    return lieword_weight(w.kids[0]) + lieword_weight(w.kids[1]);
}

Deg lieword_deg(const LieWord& w, const std::vector<Deg>& letter_degs) {
    if (w.leaf()) return letter_degs[static_cast<std::size_t>(w.letter)];
    return lieword_deg(w.kids[0], letter_degs) + lieword_deg(w.kids[1], letter_degs);
}

std::string lieword_str(const LieWord& w, const GradedSpace& letters) {
    if (w.leaf()) return letters.name(static_cast<std::size_t>(w.letter));
    return "[" + lieword_str(w.kids[0], letters) + "," + lieword_str(w.kids[1], letters) + "]";
}

std::vector<std::vector<int>> lyndon_words(std::size_t alphabet, unsigned maxlen) {
    std::vector<std::vector<int>> out;
    if (alphabet == 0 || maxlen == 0) return out;
    std::vector<int> w{0};
    while (true) {
        out.push_back(w);
        std::vector<int> t;
        for (unsigned i = 0; i < maxlen; ++i) t.push_back(w[i % w.size()]);
        while (!t.empty() && t.back() == static_cast<int>(alphabet) - 1) t.pop_back();
        if (t.empty()) break;
        ++t.back();
        w = std::move(t);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

LieWord standard_bracketing(const std::vector<int>& word) {
    if (word.empty()) throw std::invalid_argument("standard_bracketing: empty word");
    if (word.size() == 1) return LieWord{word[0], {}};
    // right factor: the lexicographically smallest proper suffix
    std::size_t best = 1;
    for (std::size_t i = 2; i < word.size(); ++i) {
        std::vector<int> si(word.begin() + static_cast<std::ptrdiff_t>(i), word.end());
        std::vector<int> sb(word.begin() + static_cast<std::ptrdiff_t>(best), word.end());
        if (si < sb) best = i;
    }
    std::vector<int> left(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(best));
    std::vector<int> right(word.begin() + static_cast<std::ptrdiff_t>(best), word.end());
    LieWord out;
    out.kids.push_back(standard_bracketing(left));
    out.kids.push_back(standard_bracketing(right));
    return out;
}

Combo<std::vector<int>> tensor_expand(const LieWord& w, const std::vector<Deg>& letter_degs) {
    Combo<std::vector<int>> out;
    if (w.leaf()) {
        out[{w.letter}] = 1;
        return out;
    }
    Combo<std::vector<int>> a = tensor_expand(w.kids[0], letter_degs);
    Combo<std::vector<int>> b = tensor_expand(w.kids[1], letter_degs);
    Deg da = lieword_deg(w.kids[0], letter_degs);
    Deg db = lieword_deg(w.kids[1], letter_degs);
    Rat sign = (odd_deg(da) && odd_deg(db)) ? Rat(-1) : Rat(1);
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b) {
            std::vector<int> uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            combo_add(out, uv, cu * cv);
            std::vector<int> vu = v;
            vu.insert(vu.end(), u.begin(), u.end());
            combo_add(out, vu, -sign * cu * cv);
        }
    return out;
}

FreeLie::FreeLie(GradedSpace letters, TruncProfile trunc)
    : letters_(std::move(letters)), trunc_(trunc) {
    for (const auto& g : letters_.gens()) letter_degs_.push_back(g.deg);
    std::vector<std::pair<LieWord, bool>> candidates;  // (word, is_square)
    for (const auto& w : lyndon_words(letters_.size(), trunc_.weight_max)) {
        LieWord b = standard_bracketing(w);
        candidates.push_back({b, false});
        Deg d = lieword_deg(b, letter_degs_);
        if (odd_deg(d) && 2 * w.size() <= trunc_.weight_max) {
            LieWord sq;
            sq.kids.push_back(b);
            sq.kids.push_back(b);
            candidates.push_back({sq, true});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](const auto& x, const auto& y) {
        unsigned wx = lieword_weight(x.first), wy = lieword_weight(y.first);
        if (wx != wy) return wx < wy;
        if (x.second != y.second) return !x.second;
        return foliage(x.first) < foliage(y.first);
    });
    for (auto& [w, sq] : candidates) {
        (void)sq;
        Deg d = lieword_deg(w, letter_degs_);
        if (!trunc_.in_window(d)) continue;
        index_[w] = static_cast<int>(basis_.size());
        basis_.push_back({w, d, lieword_weight(w)});
    }
}

int FreeLie::find(const LieWord& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
}

GradedSpace FreeLie::basis_space(const std::string& prefix) const {
    GradedSpace out;
    for (const auto& b : basis_) out.add(prefix + lieword_str(b.word, letters_), b.deg);
    return out;
}

Combo<int> FreeLie::solve_in_basis(const Combo<std::vector<int>>& tensor, unsigned weight,
                                   Deg deg) const {
    Combo<int> out;
    if (tensor.empty()) return out;
    // slice basis of given weight and degree
    std::vector<int> slice;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].weight == weight && basis_[i].deg == deg) slice.push_back(static_cast<int>(i));
    std::map<std::vector<int>, std::size_t> rows;
    auto row_of = [&](const std::vector<int>& w) {
        auto it = rows.find(w);
        if (it != rows.end()) return it->second;
        std::size_t r = rows.size();
        rows[w] = r;
        return r;
    };
    std::vector<std::map<std::size_t, Rat>> cols(slice.size());
    for (std::size_t j = 0; j < slice.size(); ++j) {
        Combo<std::vector<int>> exp =
            tensor_expand(basis_[static_cast<std::size_t>(slice[j])].word, letter_degs_);
        for (const auto& [w, c] : exp) cols[j][row_of(w)] = c;
    }
    std::map<std::size_t, Rat> target;
    for (const auto& [w, c] : tensor) target[row_of(w)] = c;
    SparseMatrix m(rows.size(), slice.size());
    for (std::size_t j = 0; j < slice.size(); ++j)
        for (const auto& [r, c] : cols[j]) m.add(r, j, c);
    std::map<std::size_t, Rat> x;
    if (!solve(m, target, x))
        throw std::logic_error("FreeLie: element is not in the Lyndon basis span");
    for (const auto& [j, c] : x) combo_add(out, slice[j], c);
    return out;
}

const Combo<int>& FreeLie::bracket(int i, int j) const {
    auto key = std::make_pair(i, j);
    auto it = bracket_cache_.find(key);
    if (it != bracket_cache_.end()) return it->second;
    const BasisElement& x = basis_.at(static_cast<std::size_t>(i));
    const BasisElement& y = basis_.at(static_cast<std::size_t>(j));
    Combo<int> result;
    unsigned w = x.weight + y.weight;
    Deg d = x.deg + y.deg;
    if (w <= trunc_.weight_max && trunc_.in_window(d)) {
        LieWord br;
        br.kids.push_back(x.word);
        br.kids.push_back(y.word);
        result = solve_in_basis(tensor_expand(br, letter_degs_), w, d);
    }
    return bracket_cache_.emplace(key, std::move(result)).first->second;
}

Combo<int> FreeLie::bracket(const Combo<int>& x, const Combo<int>& y) const {
    Combo<int> out;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) combo_add_scaled(out, bracket(i, j), ci * cj);
    return out;
}

Combo<int> FreeLie::rewrite(const LieWord& w) const {
    if (w.leaf()) {
        int i = find(w);
        Combo<int> out;
        if (i >= 0) out[i] = 1;
        return out;
    }
    Combo<int> a = rewrite(w.kids[0]);
    Combo<int> b = rewrite(w.kids[1]);
    return bracket(a, b);
}

}  // namespace rht
