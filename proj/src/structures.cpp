#include "rht/structures.hpp"

#include <algorithm>
#include <sstream>

namespace rht {

namespace {

std::string dual_name(const std::string& n) { return n + "'"; }

// décalage sign of the quadratic dualization, pinned against the classical
// dgla Maurer-Cartan equation
int quad_sign(Deg db, Deg dg) { return (odd_deg(dg) && odd_deg(db + 1)) ? -1 : 1; }

}  // namespace

LinftyAlg::LinftyAlg(GradedSpace space, std::map<int, Combo<SymWord>> ops, std::string name)
    : space_(std::move(space)), ops_(std::move(ops)), name_(std::move(name)) {
    for (const auto& g : space_.gens()) {
        rep_.add(dual_name(g.name), -g.deg - 1);
        rep_degs_.push_back(-g.deg - 1);
    }
    for (const auto& [g, img] : ops_) {
        if (g < 0 || g >= static_cast<int>(space_.size()))
            throw std::invalid_argument("LinftyAlg: op on unknown generator");
        for (const auto& [w, c] : img) {
            if (w.empty()) throw std::invalid_argument("LinftyAlg: constant term in derivation");
            if (word_deg(w, rep_degs_) != rep_degs_[static_cast<std::size_t>(g)] - 1)
                throw std::invalid_argument("LinftyAlg: derivation term of wrong degree at " +
                                            space_.name(static_cast<std::size_t>(g)));
        }
    }
}

const Combo<SymWord>& LinftyAlg::op(int gen) const {
    static const Combo<SymWord> zero;
    auto it = ops_.find(gen);
    return it == ops_.end() ? zero : it->second;
}

unsigned LinftyAlg::max_op_weight() const {
    std::size_t mw = 0;
    for (const auto& [g, img] : ops_)
        for (const auto& [w, c] : img) mw = std::max(mw, w.size());
    return static_cast<unsigned>(mw);
}

bool LinftyAlg::has_zero_linear_part() const {
    for (const auto& [g, img] : ops_)
        for (const auto& [w, c] : img)
            if (w.size() == 1) return false;
    return true;
}

LinftyAlg tables_to_linfty(const DglaTables& t) {
    std::map<int, Combo<SymWord>> ops;
    // linear part: D(g_a) += d^a_b g_b  where d(v_b) = sum_a d^a_b v_a
    for (const auto& [b, dv] : t.diff)
        for (const auto& [a, c] : dv) combo_add(ops[a], SymWord{b}, c);
    // quadratic part
    for (const auto& [bg, val] : t.bracket) {
        auto [b, g] = bg;
        if (b > g) throw std::invalid_argument("DglaTables: bracket keys must have i <= j");
        Deg db = t.space.deg(static_cast<std::size_t>(b));
        Deg dg = t.space.deg(static_cast<std::size_t>(g));
        if (b == g && !odd_deg(db) && !val.empty())
            throw std::invalid_argument("DglaTables: [x,x] must vanish for even x");
        Rat aut = (b == g) ? Rat(1, 2) : Rat(1);
        for (const auto& [a, c] : val) {
            combo_add(ops[a], SymWord{b, g}, c * aut * quad_sign(db, dg));
        }
    }
    for (auto it = ops.begin(); it != ops.end();) {
        if (it->second.empty())
            it = ops.erase(it);
        else
            ++it;
    }
    return LinftyAlg(t.space, std::move(ops), t.name);
}

DglaTables extract_tables(const LinftyAlg& l) {
    if (!l.is_dgla()) throw std::invalid_argument("extract_tables: structure has weight > 2 ops");
    DglaTables t;
    t.space = l.space();
    t.name = l.name();
    for (const auto& [a, img] : l.ops()) {
        for (const auto& [w, c] : img) {
            if (w.size() == 1) {
                combo_add(t.diff[w[0]], a, c);
            } else {
                int b = w[0], g = w[1];
                Deg db = l.space().deg(static_cast<std::size_t>(b));
                Deg dg = l.space().deg(static_cast<std::size_t>(g));
                Rat aut = (b == g) ? Rat(2) : Rat(1);
                combo_add(t.bracket[{b, g}], a, c * aut * quad_sign(db, dg));
            }
        }
    }
    return t;
}

CheckResult check_linfty(const LinftyAlg& l, const TruncProfile& trunc) {
    for (const auto& [g, img] : l.ops()) {
        Combo<SymWord> sq =
            apply_letter_derivation(l.ops(), 1, l.rep_degs(), img, trunc.weight_max);
        if (!sq.empty()) {
            std::ostringstream os;
            os << "(m+d)^2(" << l.rep().name(static_cast<std::size_t>(g))
               << ") = " << sym_elem_str(sq, l.rep());
            return CheckResult::bad("(m+d)^2 = 0 at weight " +
                                        std::to_string(sq.begin()->first.size()),
                                    os.str());
        }
    }
    return CheckResult::good();
}

ComplexSlice linfty_slice(const LinftyAlg& l, Deg lo, Deg hi) {
    ComplexSlice s;
    s.deg_min = lo;
    s.deg_max = hi;
    std::map<Deg, std::vector<int>> by_deg;
    for (std::size_t i = 0; i < l.dim(); ++i) by_deg[l.space().deg(i)].push_back(static_cast<int>(i));
    Deg min_present = 0, max_present = 0;
    if (!by_deg.empty()) {
        min_present = by_deg.begin()->first;
        max_present = by_deg.rbegin()->first;
    }
    s.complete_below = by_deg.empty() || lo <= min_present;
    s.complete_above = by_deg.empty() || hi >= max_present;
    for (Deg n = lo; n <= hi; ++n) {
        auto it = by_deg.find(n);
        s.dims[n] = it == by_deg.end() ? 0 : it->second.size();
    }
    for (Deg n = lo; n <= hi; ++n) {
        auto cols = by_deg.find(n);
        auto rows = by_deg.find(n - 1);
        std::size_t nc = cols == by_deg.end() ? 0 : cols->second.size();
        std::size_t nr = rows == by_deg.end() ? 0 : rows->second.size();
        SparseMatrix d(nr, nc);
        if (cols != by_deg.end() && rows != by_deg.end()) {
            std::map<int, std::size_t> row_of;
            for (std::size_t r = 0; r < rows->second.size(); ++r) row_of[rows->second[r]] = r;
            for (std::size_t c = 0; c < cols->second.size(); ++c) {
                int b = cols->second[c];
                for (const auto& [a, img] : l.ops()) {
                    auto itc = img.find(SymWord{b});
                    if (itc == img.end()) continue;
                    auto itr = row_of.find(a);
                    if (itr != row_of.end()) d.add(itr->second, c, itc->second);
                }
            }
        }
        if (cols != by_deg.end())
            for (int c : cols->second) d.col_labels.push_back(l.space().name(static_cast<std::size_t>(c)));
        if (rows != by_deg.end())
            for (int r : rows->second) d.row_labels.push_back(l.space().name(static_cast<std::size_t>(r)));
        s.differentials[n] = std::move(d);
    }
    return s;
}

BettiTable homology(const LinftyAlg& l, Deg lo, Deg hi) {
    return homology_dims(linfty_slice(l, lo, hi));
}

LinftyMap identity_map(const LinftyAlg& l) {
    LinftyMap f;
    f.source = l;
    f.target = l;
    for (std::size_t i = 0; i < l.dim(); ++i)
        f.images[static_cast<int>(i)] = Combo<SymWord>{{SymWord{static_cast<int>(i)}, Rat(1)}};
    f.name = "id";
    return f;
}

Combo<SymWord> apply_alg_map(const std::map<int, Combo<SymWord>>& images,
                             const std::vector<Deg>& out_letter_degs, const Combo<SymWord>& x,
                             unsigned weight_max) {
    Combo<SymWord> out;
    for (const auto& [w, c] : x) {
        Combo<SymWord> acc{{SymWord{}, c}};
        for (int letter : w) {
            auto img = images.find(letter);
            if (img == images.end() || img->second.empty()) {
                acc.clear();
                break;
            }
            Combo<SymWord> next;
            for (const auto& [u, cu] : acc)
                for (const auto& [v, cv] : img->second) {
                    if (u.size() + v.size() > weight_max) continue;
                    sym_word_multiply(next, u, v, cu * cv, out_letter_degs);
                }
            acc = std::move(next);
            if (acc.empty()) break;
        }
        for (const auto& [u, cu] : acc) combo_add(out, u, cu);
    }
    return out;
}

CheckResult check_linfty_map(const LinftyMap& f, const TruncProfile& trunc) {
    for (const auto& [g, img] : f.images) {
        for (const auto& [w, c] : img) {
            if (w.empty()) return CheckResult::bad("constant term", f.target.rep().name(static_cast<std::size_t>(g)));
            if (word_deg(w, f.source.rep_degs()) !=
                f.target.rep_degs()[static_cast<std::size_t>(g)])
                return CheckResult::bad("map degree", f.target.rep().name(static_cast<std::size_t>(g)));
        }
    }
    for (std::size_t g = 0; g < f.target.dim(); ++g) {
        int gi = static_cast<int>(g);
        Combo<SymWord> lhs =
            apply_alg_map(f.images, f.source.rep_degs(), f.target.op(gi), trunc.weight_max);
        Combo<SymWord> img;
        {
            auto it = f.images.find(gi);
            if (it != f.images.end()) img = it->second;
        }
        Combo<SymWord> rhs =
            apply_letter_derivation(f.source.ops(), 1, f.source.rep_degs(), img, trunc.weight_max);
        if (lhs != rhs) {
            Combo<SymWord> diffr = lhs;
            combo_add_scaled(diffr, rhs, Rat(-1));
            return CheckResult::bad("map does not commute with differentials at " +
                                        f.target.rep().name(g),
                                    sym_elem_str(diffr, f.source.rep()));
        }
    }
    return CheckResult::good();
}

namespace {

// inverse of the matrix whose j-th column is `cols[j]`
std::vector<std::vector<Rat>> invert(const std::vector<Combo<int>>& cols, std::size_t n) {
    std::vector<std::map<std::size_t, Rat>> rows(n);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, c] : cols[j]) rows[static_cast<std::size_t>(i)][j] = c;
    // augment with identity
    for (std::size_t i = 0; i < n; ++i) rows[i][n + i] = 1;
    std::vector<std::size_t> pivots = rref(rows, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        if (i >= pivots.size() || pivots[i] != i)
            throw std::invalid_argument("base_change: basis is not invertible");
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [c, v] : rows[i])
            if (c >= n) inv[i][c - n] = v;
    return inv;
}

}  // namespace

LinftyAlg base_change(const LinftyAlg& l, const std::vector<Combo<int>>& basis,
                      const std::vector<std::string>& names) {
    const std::size_t n = l.dim();
    if (basis.size() != n || names.size() != n)
        throw std::invalid_argument("base_change: need a full basis");
    GradedSpace ns;
    for (std::size_t j = 0; j < n; ++j) {
        if (basis[j].empty()) throw std::invalid_argument("base_change: zero basis vector");
        Deg d = l.space().deg(static_cast<std::size_t>(basis[j].begin()->first));
        for (const auto& [i, c] : basis[j])
            if (l.space().deg(static_cast<std::size_t>(i)) != d)
                throw std::invalid_argument("base_change: inhomogeneous basis vector");
        ns.add(names[j], d);
    }
    std::vector<std::vector<Rat>> tinv = invert(basis, n);
    // substitution of letters: old g_a -> sum_j T_{a j} g'_j
    std::map<int, Combo<SymWord>> subst;
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [a, c] : basis[j])
            combo_add(subst[a], SymWord{static_cast<int>(j)}, c);
    std::vector<Deg> new_rep_degs;
    for (std::size_t j = 0; j < n; ++j) new_rep_degs.push_back(-ns.deg(j) - 1);
    std::map<int, Combo<SymWord>> ops;
    unsigned wmax = std::max(2u, l.max_op_weight());
    for (std::size_t j = 0; j < n; ++j) {
        Combo<SymWord> pre;  // D(sum_a Tinv[j][a] g_a)
        for (std::size_t a = 0; a < n; ++a) {
            if (tinv[j][a] == 0) continue;
            combo_add_scaled(pre, l.op(static_cast<int>(a)), tinv[j][a]);
        }
        Combo<SymWord> img = apply_alg_map(subst, new_rep_degs, pre, wmax + 1);
        if (!img.empty()) ops[static_cast<int>(j)] = std::move(img);
    }
    return LinftyAlg(ns, std::move(ops), l.name());
}

CoverResult connected_cover(const LinftyAlg& l) {
    // kernel of m_1 : V_0 -> V_{-1}
    std::vector<int> deg0, degneg1;
    for (std::size_t i = 0; i < l.dim(); ++i) {
        if (l.space().deg(i) == 0) deg0.push_back(static_cast<int>(i));
        if (l.space().deg(i) == -1) degneg1.push_back(static_cast<int>(i));
    }
    SparseMatrix m(degneg1.size(), deg0.size());
    {
        std::map<int, std::size_t> row_of;
        for (std::size_t r = 0; r < degneg1.size(); ++r) row_of[degneg1[r]] = r;
        for (std::size_t c = 0; c < deg0.size(); ++c)
            for (const auto& [a, img] : l.ops()) {
                auto it = img.find(SymWord{deg0[c]});
                if (it == img.end()) continue;
                auto rr = row_of.find(a);
                if (rr != row_of.end()) m.add(rr->second, c, it->second);
            }
    }
    auto ker = kernel_basis(m);

    // adapted basis: cover part first, complement after
    std::vector<Combo<int>> basis;
    std::vector<std::string> names;
    std::vector<int> cover_gens;
    for (std::size_t i = 0; i < l.dim(); ++i) {
        if (l.space().deg(i) > 0) {
            basis.push_back(Combo<int>{{static_cast<int>(i), Rat(1)}});
            names.push_back(l.space().name(i));
        }
    }
    for (std::size_t k = 0; k < ker.size(); ++k) {
        Combo<int> v;
        for (const auto& [c, r] : ker[k]) v[deg0[c]] = r;
        if (v.size() == 1 && v.begin()->second == 1) {
            names.push_back(l.space().name(static_cast<std::size_t>(v.begin()->first)));
        } else {
            names.push_back("k" + std::to_string(k));
        }
        basis.push_back(std::move(v));
    }
    std::size_t cover_dim = basis.size();
    // complement: pivot columns at degree 0, then everything below degree 0
    {
        std::vector<std::map<std::size_t, Rat>> rows;
        std::map<std::size_t, std::map<std::size_t, Rat>> by_row;
        for (const auto& [rc, v] : m.entries()) by_row[rc.first][rc.second] = v;
        for (auto& [r, row] : by_row) rows.push_back(std::move(row));
        std::vector<std::size_t> pivots = rref(rows, m.cols());
        for (std::size_t p : pivots) {
            basis.push_back(Combo<int>{{deg0[p], Rat(1)}});
            names.push_back(l.space().name(static_cast<std::size_t>(deg0[p])) + "~");
        }
    }
    for (std::size_t i = 0; i < l.dim(); ++i)
        if (l.space().deg(i) < 0) {
            basis.push_back(Combo<int>{{static_cast<int>(i), Rat(1)}});
            names.push_back(l.space().name(i));
        }

    LinftyAlg adapted = base_change(l, basis, names);
    // restrict: keep cover generators, drop any word touching the complement
    GradedSpace cspace;
    for (std::size_t j = 0; j < cover_dim; ++j) cspace.add(names[j], adapted.space().deg(j));
    std::map<int, Combo<SymWord>> cops;
    for (std::size_t j = 0; j < cover_dim; ++j) {
        Combo<SymWord> img;
        for (const auto& [w, c] : adapted.op(static_cast<int>(j))) {
            bool keep = true;
            for (int letter : w)
                if (letter >= static_cast<int>(cover_dim)) keep = false;
            if (keep) img[w] = c;
        }
        if (!img.empty()) cops[static_cast<int>(j)] = std::move(img);
    }
    CoverResult out;
    out.cover = LinftyAlg(cspace, std::move(cops),
                          l.name().empty() ? "cover" : l.name() + "<0>");
    out.inclusion.source = out.cover;
    out.inclusion.target = l;
    for (std::size_t a = 0; a < l.dim(); ++a) {
        Combo<SymWord> img;
        for (std::size_t j = 0; j < cover_dim; ++j) {
            auto it = basis[j].find(static_cast<int>(a));
            if (it != basis[j].end()) combo_add(img, SymWord{static_cast<int>(j)}, it->second);
        }
        if (!img.empty()) out.inclusion.images[static_cast<int>(a)] = std::move(img);
    }
    out.inclusion.name = "cover-inclusion";
    return out;
}

LinftyAlg square_zero_extension(const LinftyAlg& g, int shift, const TruncProfile& trunc) {
    (void)trunc;
    DglaTables t = extract_tables(g);
    CoverResult cov = connected_cover(g);
    const std::size_t n = g.dim();
    const std::size_t m = cov.cover.dim();
    // cover basis combos in g coordinates, from the inclusion map images
    std::vector<Combo<int>> cover_vec(m);
    for (const auto& [a, img] : cov.inclusion.images)
        for (const auto& [w, c] : img)
            if (w.size() == 1) combo_add(cover_vec[static_cast<std::size_t>(w[0])], a, c);

    // projection of a g-vector onto cover coordinates: solve against the
    // cover columns, dropping any complement component
    SparseMatrix cols(n, m);
    for (std::size_t j = 0; j < m; ++j)
        for (const auto& [i, c] : cover_vec[j]) cols.add(static_cast<std::size_t>(i), j, c);
    auto project = [&](const LinComb& v) -> LinComb {
        // least effort: restrict to the degrees present in the cover
        std::map<std::size_t, Rat> rhs;
        for (const auto& [i, c] : v) rhs[static_cast<std::size_t>(i)] = c;
        std::map<std::size_t, Rat> x;
        if (solve(cols, rhs, x)) {
            LinComb out;
            for (const auto& [j, c] : x) combo_add(out, static_cast<int>(j), c);
            return out;
        }
        // vector leaves the cover span: drop it (validated downstream)
        return LinComb{};
    };

    DglaTables ext;
    ext.space = g.space();
    ext.name = g.name().empty() ? "sqz" : "sqz(" + g.name() + ")";
    std::vector<int> sgen(m);
    for (std::size_t j = 0; j < m; ++j)
        sgen[j] = ext.space.add("s" + cov.cover.space().name(j),
                                cov.cover.space().deg(j) - shift);
    ext.diff = t.diff;
    ext.bracket = t.bracket;
    int dsign = odd_deg(shift) ? -1 : 1;
    for (std::size_t j = 0; j < m; ++j) {
        // d(s_j) = (-1)^shift s(d e_j)
        LinComb de;
        for (const auto& [i, c] : cover_vec[j]) combo_add_scaled(de, t.diff.count(i) ? t.diff.at(i) : LinComb{}, c);
        LinComb dc = project(de);
        LinComb out;
        for (const auto& [k, c] : dc) combo_add(out, sgen[static_cast<std::size_t>(k)], c * dsign);
        if (!out.empty()) ext.diff[sgen[j]] = std::move(out);
    }
    for (std::size_t a = 0; a < n; ++a) {
        int asign = (odd_deg(shift) && g.space().odd(a)) ? -1 : 1;
        for (std::size_t j = 0; j < m; ++j) {
            // [v_a, s_j] = (-1)^{shift |v_a|} s([v_a, e_j])
            LinComb br;
            for (const auto& [i, c] : cover_vec[j]) {
                int x = static_cast<int>(a), y = i;
                Rat flip(1);
                if (x > y) {
                    std::swap(x, y);
                    flip = (g.space().odd(a) && g.space().odd(static_cast<std::size_t>(i))) ? Rat(-1)
                                                                                            : Rat(1);
                    flip = -flip;  // [y,x] = -(-1)^{|x||y|}[x,y]
                }
                auto it = t.bracket.find({x, y});
                if (it != t.bracket.end()) combo_add_scaled(br, it->second, c * flip);
            }
            LinComb bc = project(br);
            LinComb out;
            for (const auto& [k, c] : bc) combo_add(out, sgen[static_cast<std::size_t>(k)], c * asign);
            if (!out.empty()) ext.bracket[{static_cast<int>(a), sgen[j]}] = std::move(out);
        }
    }
    return tables_to_linfty(ext);
}

std::string sym_elem_str(const Combo<SymWord>& x, const GradedSpace& rep) {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : x) {
        if (!first) os << " + ";
        os << rat_str(c) << "*" << word_str(w, rep);
        first = false;
    }
    return os.str();
}

std::string telem_str(const TElem& x, const Coeff& a, const GradedSpace& rep) {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : x) {
        if (!first) os << " + ";
        os << rat_str(c) << "*" << a.name(k.a) << "(x)" << word_str(k.w, rep);
        first = false;
    }
    return os.str();
}

}  // namespace rht
