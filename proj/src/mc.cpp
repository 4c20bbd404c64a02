#include "rht/mc.hpp"

#include <algorithm>
#include <sstream>

namespace rht {

namespace {

void validate_terms(const LinftyAlg& v, const Coeff& a, const Combo<std::pair<int, int>>& terms,
                    Deg total, bool allow_unit) {
    for (const auto& [key, c] : terms) {
        (void)c;
        auto [ak, gen] = key;
        if (gen < 0 || gen >= static_cast<int>(v.dim()))
            throw std::invalid_argument("MC term references unknown generator");
        if (ak == Coeff::UNIT) {
            if (!a.unital()) throw std::invalid_argument("MC term uses the unit of a non-unital algebra");
            if (!allow_unit)
                throw std::invalid_argument(
                    "MC term with unit coefficient requires a dgla (finite series)");
        }
        Deg d = a.deg(ak) + v.space().deg(static_cast<std::size_t>(gen)) + 1;
        if (d != total)
            throw std::invalid_argument("MC term of wrong degree at generator " +
                                        v.space().name(static_cast<std::size_t>(gen)));
    }
}

}  // namespace

MCElem make_mc(const LinftyAlg& v, const Coeff& a, Combo<std::pair<int, int>> terms) {
    validate_terms(v, a, terms, 0, v.is_dgla());
    MCElem out;
    out.terms = std::move(terms);
    return out;
}

MCElem make_gauge_param(const LinftyAlg& v, const Coeff& a, Combo<std::pair<int, int>> terms) {
    validate_terms(v, a, terms, 1, false);
    MCElem out;
    out.terms = std::move(terms);
    return out;
}

std::map<int, LinComb> mc_images(const MCElem& xi) {
    std::map<int, LinComb> out;
    for (const auto& [key, c] : xi.terms) combo_add(out[key.second], key.first, c);
    return out;
}

MCVerdict mc_verify(const LinftyAlg& v, const Coeff& a, const MCElem& xi,
                    const TruncProfile& trunc) {
    (void)trunc;  // the derivation data is already weight-bounded
    std::map<int, LinComb> images = mc_images(xi);
    MCVerdict verdict;
    for (std::size_t g = 0; g < v.dim(); ++g) {
        int gi = static_cast<int>(g);
        LinComb lhs;
        {
            auto it = images.find(gi);
            if (it != images.end()) lhs = a.diff(it->second);
        }
        LinComb rhs = eval_combo(a, images, v.op(gi));
        combo_add_scaled(lhs, rhs, Rat(-1));
        for (const auto& [k, c] : lhs) combo_add(verdict.residual.terms, std::make_pair(k, gi), c);
    }
    verdict.ok = verdict.residual.zero();
    return verdict;
}

MCElem mc_from_map(const LinftyAlg& v, const Coeff& a, const CdgaMapToCoeff& f) {
    Combo<std::pair<int, int>> terms;
    for (const auto& [gen, img] : f.images) {
        for (const auto& [k, c] : img) {
            if (k == Coeff::UNIT)
                throw std::invalid_argument("mc_from_map: generator image is not in the ideal");
            combo_add(terms, std::make_pair(k, gen), c);
        }
    }
    return make_mc(v, a, std::move(terms));
}

CdgaMapToCoeff mc_to_map(const LinftyAlg& v, const Coeff& a, const MCElem& xi) {
    (void)v;
    (void)a;
    CdgaMapToCoeff f;
    f.images = mc_images(xi);
    return f;
}

MCElem canonical_mc(const LinftyAlg& v, const Coeff& a, const std::vector<SymWord>& words) {
    Combo<std::pair<int, int>> terms;
    for (std::size_t g = 0; g < v.dim(); ++g) {
        SymWord w{static_cast<int>(g)};
        auto it = std::find(words.begin(), words.end(), w);
        if (it == words.end())
            throw std::invalid_argument("canonical_mc: single-letter word missing from basis");
        terms[{static_cast<int>(it - words.begin()), static_cast<int>(g)}] = 1;
    }
    return make_mc(v, a, std::move(terms));
}

HomotopyVerdict homotopy_verify(const LinftyAlg& v, const Coeff& a, const IntervalElem& h,
                                const TruncProfile& trunc) {
    unsigned maxz = 0;
    for (const auto& [t, c] : h.terms) {
        (void)c;
        maxz = std::max(maxz, t.zpow);
    }
    unsigned z_max = maxz * std::max(trunc.weight_max, v.max_op_weight()) + 2;
    Coeff az = interval_extension(a, z_max);
    Combo<std::pair<int, int>> terms;
    for (const auto& [t, c] : h.terms) {
        IntervalKey k{t.a, t.zpow, t.dz};
        combo_add(terms, std::make_pair(interval_index(a, z_max, k), t.gen), c);
    }
    MCElem hz = make_mc(v, az, std::move(terms));
    HomotopyVerdict out;
    out.ok = mc_verify(v, az, hz, trunc).ok;
    Combo<std::pair<int, int>> t0, t1;
    for (const auto& [t, c] : h.terms) {
        if (t.dz) continue;
        if (t.zpow == 0) combo_add(t0, std::make_pair(t.a, t.gen), c);
        combo_add(t1, std::make_pair(t.a, t.gen), c);  // z := 1
    }
    out.at0 = make_mc(v, a, std::move(t0));
    out.at1 = make_mc(v, a, std::move(t1));
    return out;
}

namespace {

using PairElem = Combo<std::pair<int, int>>;

// classical A-linear operations on elements of A (x) V
PairElem pair_diff(const DglaTables& t, const Coeff& a, const PairElem& x) {
    PairElem out;
    for (const auto& [key, c] : x) {
        auto [ak, gen] = key;
        for (const auto& [dk, dc] : a.diff(ak)) combo_add(out, std::make_pair(dk, gen), c * dc);
        int sgn = a.odd(ak) ? -1 : 1;
        auto it = t.diff.find(gen);
        if (it != t.diff.end())
            for (const auto& [g2, dc] : it->second)
                combo_add(out, std::make_pair(ak, g2), c * dc * sgn);
    }
    return out;
}

PairElem pair_bracket(const DglaTables& t, const Coeff& a, const GradedSpace& space,
                      const PairElem& x, const PairElem& y) {
    PairElem out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) {
            auto [ax, gx] = kx;
            auto [ay, gy] = ky;
            // [p (x) u, q (x) w] = (-1)^{|u||q|} pq (x) [u,w]
            int sgn = (space.odd(static_cast<std::size_t>(gx)) && a.odd(ay)) ? -1 : 1;
            int i = gx, j = gy;
            Rat flip(1);
            if (i > j) {
                std::swap(i, j);
                bool oo = space.odd(static_cast<std::size_t>(gx)) &&
                          space.odd(static_cast<std::size_t>(gy));
                flip = oo ? Rat(1) : Rat(-1);  // [u,w] = -(-1)^{|u||w|}[w,u]
            }
            auto it = t.bracket.find({i, j});
            if (it == t.bracket.end()) continue;
            LinComb coeffs = a.mul(ax, ay);
            for (const auto& [ak, ac] : coeffs)
                for (const auto& [g2, bc] : it->second)
                    combo_add(out, std::make_pair(ak, g2), cx * cy * ac * bc * flip * sgn);
        }
    return out;
}

}  // namespace

MCElem gauge_act(const LinftyAlg& v, const Coeff& a, const MCElem& lambda, const MCElem& xi) {
    if (!v.is_dgla()) throw std::invalid_argument("gauge_act: dgla required");
    DglaTables t = extract_tables(v);
    auto nil = nilpotence_degree(a);
    if (!nil) throw std::invalid_argument("gauge_act: coefficients are not nilpotent");
    unsigned cap = *nil + 2;

    PairElem acc = xi.terms;   // e^{ad l}(xi)
    PairElem cur = xi.terms;
    for (unsigned k = 1; k <= cap && !cur.empty(); ++k) {
        cur = pair_bracket(t, a, v.space(), lambda.terms, cur);
        for (auto& [key, c] : cur) c /= k;
        combo_add_scaled(acc, cur, Rat(1));
    }
    if (!cur.empty()) throw std::logic_error("gauge_act: series did not terminate");
    PairElem dl = pair_diff(t, a, lambda.terms);
    PairElem corr = dl;  // sum_k (ad l)^k(dl)/(k+1)!
    PairElem curc = dl;
    for (unsigned k = 1; k <= cap && !curc.empty(); ++k) {
        curc = pair_bracket(t, a, v.space(), lambda.terms, curc);
        for (auto& [key, c] : curc) c /= (k + 1);
        combo_add_scaled(corr, curc, Rat(1));
    }
    if (!curc.empty()) throw std::logic_error("gauge_act: series did not terminate");
    combo_add_scaled(acc, corr, Rat(-1));
    return make_mc(v, a, std::move(acc));
}

std::string mc_str(const MCElem& xi, const LinftyAlg& v, const Coeff& a) {
    if (xi.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : xi.terms) {
        if (!first) os << " + ";
        os << rat_str(c) << "*" << a.name(key.first) << "(x)"
           << v.space().name(static_cast<std::size_t>(key.second));
        first = false;
    }
    return os.str();
}

}  // namespace rht
