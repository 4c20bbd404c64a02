#include "rht/coeff.hpp"

#include "rht/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace rht {

namespace {

std::string lincomb_str(const LinComb& x, const Coeff& a) {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : x) {
        if (!first) os << " + ";
        os << rat_str(v) << "*" << a.name(k);
        first = false;
    }
    return os.str();
}

}  // namespace

void Coeff::set_product(int a, int b, LinComb value) {
    if (a == UNIT || b == UNIT) throw std::invalid_argument("Coeff: unit products are implicit");
    int sign = (odd(a) && odd(b)) ? -1 : 1;
    if (a == b && sign < 0 && !value.empty())
        throw std::invalid_argument("Coeff: odd square must be zero");
    LinComb flipped;
    for (const auto& [k, v] : value) flipped[k] = v * sign;
    mult_[{b, a}] = std::move(flipped);
    mult_[{a, b}] = std::move(value);
}

void Coeff::set_diff(int a, LinComb value) {
    if (a == UNIT) throw std::invalid_argument("Coeff: d(1) = 0 is implicit");
    if (value.empty())
        diff_.erase(a);
    else
        diff_[a] = std::move(value);
}

LinComb Coeff::mul(int a, int b) const {
    if (a == UNIT && b == UNIT) {
        if (!unital_) throw std::logic_error("Coeff: unit in non-unital algebra");
        return LinComb{{UNIT, Rat(1)}};
    }
    if (a == UNIT) return LinComb{{b, Rat(1)}};
    if (b == UNIT) return LinComb{{a, Rat(1)}};
    auto it = mult_.find({a, b});
    return it == mult_.end() ? LinComb{} : it->second;
}

const LinComb& Coeff::diff(int a) const {
    static const LinComb zero;
    if (a == UNIT) return zero;
    auto it = diff_.find(a);
    return it == diff_.end() ? zero : it->second;
}

LinComb Coeff::mul(const LinComb& x, const LinComb& y) const {
    LinComb out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) combo_add_scaled(out, mul(a, b), ca * cb);
    return out;
}

LinComb Coeff::diff(const LinComb& x) const {
    LinComb out;
    for (const auto& [a, ca] : x) combo_add_scaled(out, diff(a), ca);
    return out;
}

CheckResult check_finite_cdga(const Coeff& a) {
    const int n = static_cast<int>(a.dim());
    // degree homogeneity of the tables
    for (int i = 0; i < n; ++i) {
        for (const auto& [k, v] : a.diff(i)) {
            if (a.deg(k) != a.deg(i) - 1)
                return CheckResult::bad("differential degree", a.name(i));
        }
        for (int j = 0; j < n; ++j) {
            for (const auto& [k, v] : a.mul(i, j)) {
                if (a.deg(k) != a.deg(i) + a.deg(j))
                    return CheckResult::bad("product degree", a.name(i) + "*" + a.name(j));
            }
        }
    }
    // graded commutativity
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            int sign = (a.odd(i) && a.odd(j)) ? -1 : 1;
            LinComb lhs = a.mul(i, j);
            LinComb rhs = a.mul(j, i);
            for (auto& [k, v] : rhs) v *= sign;
            if (lhs != rhs)
                return CheckResult::bad("graded commutativity", a.name(i) + "*" + a.name(j));
        }
    }
    // associativity
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                LinComb lhs = a.mul(a.mul(i, j), LinComb{{k, Rat(1)}});
                LinComb rhs = a.mul(LinComb{{i, Rat(1)}}, a.mul(j, k));
                if (lhs != rhs)
                    return CheckResult::bad("associativity",
                                            a.name(i) + "*" + a.name(j) + "*" + a.name(k));
            }
    // Leibniz
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LinComb lhs = a.diff(a.mul(i, j));
            LinComb rhs = a.mul(a.diff(i), LinComb{{j, Rat(1)}});
            LinComb second = a.mul(LinComb{{i, Rat(1)}}, a.diff(j));
            combo_add_scaled(rhs, second, Rat(a.odd(i) ? -1 : 1));
            if (lhs != rhs)
                return CheckResult::bad("Leibniz", "d(" + a.name(i) + "*" + a.name(j) + ")");
        }
    // d^2 = 0
    for (int i = 0; i < n; ++i) {
        LinComb dd = a.diff(a.diff(i));
        if (!dd.empty())
            return CheckResult::bad("d^2 = 0", "d^2(" + a.name(i) + ") = " + lincomb_str(dd, a));
    }
    if (!a.unital() && !nilpotence_degree(a))
        return CheckResult::bad("nilpotence", "augmentation ideal is not nilpotent");
    return CheckResult::good();
}

std::optional<unsigned> nilpotence_degree(const Coeff& a) {
    const std::size_t n = a.dim();
    if (n == 0) return 1;
    // span of ideal^k, maintained as rref rows over basis coordinates
    std::vector<std::map<std::size_t, Rat>> span;
    for (std::size_t i = 0; i < n; ++i) span.push_back({{i, Rat(1)}});
    rref(span, n);
    for (unsigned power = 1; power <= n + 1; ++power) {
        if (span.empty()) return power;
        std::vector<std::map<std::size_t, Rat>> next;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& vec : span) {
                LinComb v;
                for (const auto& [k, c] : vec) v[static_cast<int>(k)] = c;
                LinComb prod = a.mul(LinComb{{static_cast<int>(i), Rat(1)}}, v);
                if (prod.empty()) continue;
                std::map<std::size_t, Rat> row;
                for (const auto& [k, c] : prod) row[static_cast<std::size_t>(k)] = c;
                next.push_back(std::move(row));
            }
        }
        rref(next, n);
        span = std::move(next);
    }
    return std::nullopt;
}

CheckResult check_free_cdga(const FreeCdga& a, const TruncProfile& trunc) {
    std::vector<Deg> degs = a.letter_degs();
    for (const auto& [g, img] : a.diff) {
        for (const auto& [w, c] : img) {
            if (w.empty()) return CheckResult::bad("constant term", "d(" + a.gens.name(static_cast<std::size_t>(g)) + ")");
            if (word_deg(w, degs) != degs[static_cast<std::size_t>(g)] - 1)
                return CheckResult::bad("differential degree",
                                        "d(" + a.gens.name(static_cast<std::size_t>(g)) + ")");
        }
    }
    for (const auto& [g, img] : a.diff) {
        Combo<SymWord> dd = apply_letter_derivation(a.diff, 1, degs, img, trunc.weight_max);
        if (!dd.empty()) {
            std::string witness = "d^2(" + a.gens.name(static_cast<std::size_t>(g)) + ") has " +
                                  word_str(dd.begin()->first, a.gens);
            return CheckResult::bad("d^2 = 0", witness);
        }
    }
    return CheckResult::good();
}

namespace {

void enumerate_words(const FreeCdga& a, const TruncProfile& trunc, bool lower_cut,
                     std::vector<int>& current, int min_letter, std::vector<SymWord>& out) {
    if (!current.empty()) out.push_back(current);
    if (current.size() >= trunc.weight_max) return;
    std::vector<Deg> degs = a.letter_degs();
    for (int g = min_letter; g < static_cast<int>(a.gens.size()); ++g) {
        if (a.gens.odd(static_cast<std::size_t>(g)) && !current.empty() && current.back() == g)
            continue;  // odd square
        current.push_back(g);
        Deg d = word_deg(current, degs);
        bool keep = !(lower_cut && d < trunc.deg_min);
        if (keep) enumerate_words(a, trunc, lower_cut, current, g, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<SymWord> truncated_word_basis(const FreeCdga& a, const TruncProfile& trunc) {
    bool all_nonpos = true;
    for (const auto& g : a.gens.gens())
        if (g.deg > 0) all_nonpos = false;
    // The lower degree cut is a dg-ideal quotient only when no letter can
    // raise degree back into the window.
    bool lower_cut = all_nonpos;
    std::vector<SymWord> words;
    std::vector<int> current;
    enumerate_words(a, trunc, lower_cut, current, 0, words);
    std::stable_sort(words.begin(), words.end(), [&](const SymWord& x, const SymWord& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return words;
}

Coeff truncate_free_cdga(const FreeCdga& a, const TruncProfile& trunc, bool unital) {
    std::vector<SymWord> words = truncated_word_basis(a, trunc);
    std::vector<Deg> degs = a.letter_degs();
    std::map<SymWord, int> idx;
    GradedSpace basis;
    for (std::size_t i = 0; i < words.size(); ++i) {
        idx[words[i]] = static_cast<int>(i);
        basis.add(word_str(words[i], a.gens), word_deg(words[i], degs));
    }
    Coeff out(std::move(basis), unital);
    auto project = [&](const Combo<SymWord>& x) {
        LinComb r;
        for (const auto& [w, c] : x) {
            auto it = idx.find(w);
            if (it != idx.end()) combo_add(r, it->second, c);
        }
        return r;
    };
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = i; j < words.size(); ++j) {
            if (words[i].size() + words[j].size() > trunc.weight_max) continue;
            Combo<SymWord> prod;
            sym_word_multiply(prod, words[i], words[j], Rat(1), degs);
            LinComb v = project(prod);
            if (!v.empty()) out.set_product(static_cast<int>(i), static_cast<int>(j), v);
        }
        Combo<SymWord> one{{words[i], Rat(1)}};
        Combo<SymWord> d = apply_letter_derivation(a.diff, 1, degs, one, trunc.weight_max);
        LinComb v = project(d);
        if (!v.empty()) out.set_diff(static_cast<int>(i), v);
    }
    return out;
}

LinComb eval_word(const Coeff& a, const std::map<int, LinComb>& images, const SymWord& w) {
    LinComb acc{{Coeff::UNIT, Rat(1)}};
    for (int letter : w) {
        auto it = images.find(letter);
        if (it == images.end() || it->second.empty()) return {};
        acc = a.mul(acc, it->second);
        if (acc.empty()) return {};
    }
    return acc;
}

LinComb eval_combo(const Coeff& a, const std::map<int, LinComb>& images, const Combo<SymWord>& x) {
    LinComb out;
    for (const auto& [w, c] : x) combo_add_scaled(out, eval_word(a, images, w), c);
    return out;
}

Coeff interval_extension(const Coeff& a, unsigned z_max) {
    GradedSpace basis;
    std::vector<IntervalKey> keys;
    auto push = [&](int ak, unsigned k, bool e) {
        if (ak == Coeff::UNIT && k == 0 && !e) return;  // the unit itself
        std::string nm = a.name(ak);
        if (k > 0) nm += "*z^" + std::to_string(k);
        if (e) nm += "*dz";
        basis.add(nm, a.deg(ak) - (e ? 1 : 0));
        keys.push_back({ak, k, e});
    };
    if (a.unital())
        for (unsigned k = 0; k <= z_max; ++k)
            for (int e = 0; e < 2; ++e) push(Coeff::UNIT, k, e != 0);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (unsigned k = 0; k <= z_max; ++k)
            for (int e = 0; e < 2; ++e) push(static_cast<int>(i), k, e != 0);

    Coeff out(std::move(basis), a.unital());
    auto index_of = [&](int ak, unsigned k, bool e) -> int {
        if (ak == Coeff::UNIT && k == 0 && !e) return Coeff::UNIT;
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i].a == ak && keys[i].zpow == k && keys[i].dz == e) return static_cast<int>(i);
        throw std::out_of_range("interval_extension: z-power exceeds the sized bound");
    };
    const int n = static_cast<int>(keys.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const IntervalKey& x = keys[static_cast<std::size_t>(i)];
            const IntervalKey& y = keys[static_cast<std::size_t>(j)];
            if (x.dz && y.dz) continue;
            if (x.zpow + y.zpow > z_max) {
                // Products leaving the sized z-range would be silently lost;
                // refuse at construction instead.
                continue;
            }
            int sign = (x.dz && a.odd(y.a)) ? -1 : 1;
            LinComb base = a.mul(x.a, y.a);
            LinComb v;
            for (const auto& [k, c] : base)
                combo_add(v, index_of(k, x.zpow + y.zpow, x.dz || y.dz), c * sign);
            if (!v.empty()) out.set_product(i, j, v);
        }
        const IntervalKey& x = keys[static_cast<std::size_t>(i)];
        LinComb v;
        for (const auto& [k, c] : a.diff(x.a)) combo_add(v, index_of(k, x.zpow, x.dz), c);
        if (!x.dz && x.zpow >= 1) {
            int sgn = a.odd(x.a) ? -1 : 1;
            combo_add(v, index_of(x.a, x.zpow - 1, true), Rat(static_cast<int>(x.zpow) * sgn));
        }
        if (!v.empty()) out.set_diff(i, v);
    }
    return out;
}

int interval_index(const Coeff& base, unsigned z_max, const IntervalKey& k) {
    if (k.a == Coeff::UNIT && k.zpow == 0 && !k.dz) return Coeff::UNIT;
    unsigned per = 2 * (z_max + 1);
    unsigned a_off = base.unital() ? static_cast<unsigned>(k.a + 1) : static_cast<unsigned>(k.a);
    unsigned raw = a_off * per + k.zpow * 2 + (k.dz ? 1u : 0u);
    return static_cast<int>(raw) - (base.unital() ? 1 : 0);
}

IntervalKey interval_key(const Coeff& base, unsigned z_max, int index) {
    if (index == Coeff::UNIT) return {Coeff::UNIT, 0, false};
    unsigned per = 2 * (z_max + 1);
    unsigned raw = static_cast<unsigned>(index) + (base.unital() ? 1 : 0);
    IntervalKey k;
    unsigned a_off = raw / per;
    k.a = base.unital() ? static_cast<int>(a_off) - 1 : static_cast<int>(a_off);
    k.zpow = (raw % per) / 2;
    k.dz = (raw % 2) != 0;
    return k;
}

}  // namespace rht
