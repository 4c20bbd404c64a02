#pragma once

#include "rht/graded.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rht {

// Validation outcome shared by the structure checkers.
struct Violation {
    std::string what;     // failing axiom or generator
    std::string witness;  // offending residual, printed
};

struct CheckResult {
    std::optional<Violation> violation;
    bool ok() const { return !violation.has_value(); }
    static CheckResult good() { return {}; }
    static CheckResult bad(std::string what, std::string witness) {
        return {Violation{std::move(what), std::move(witness)}};
    }
};

// A finite-basis coefficient cdga, optionally unital. The listed basis spans
// the augmentation ideal; the unit is the separate key UNIT. Products and
// differentials absent from the tables are zero.
class Coeff {
public:
    static constexpr int UNIT = -1;

    Coeff() = default;
    Coeff(GradedSpace basis, bool unital) : basis_(std::move(basis)), unital_(unital) {}

    const GradedSpace& basis() const { return basis_; }
    bool unital() const { return unital_; }
    std::size_t dim() const { return basis_.size(); }

    Deg deg(int key) const { return key == UNIT ? 0 : basis_.deg(static_cast<std::size_t>(key)); }
    bool odd(int key) const { return key != UNIT && basis_.odd(static_cast<std::size_t>(key)); }
    std::string name(int key) const {
        return key == UNIT ? "1" : basis_.name(static_cast<std::size_t>(key));
    }

    void set_product(int a, int b, LinComb value);  // ideal keys only
    void set_diff(int a, LinComb value);

    LinComb mul(int a, int b) const;
    const LinComb& diff(int a) const;

    LinComb mul(const LinComb& x, const LinComb& y) const;
    LinComb diff(const LinComb& x) const;

    bool trivial() const { return unital_ && basis_.size() == 0; }

    static Coeff rationals() { return Coeff(GradedSpace{}, true); }

private:
    GradedSpace basis_;
    bool unital_ = false;
    std::map<std::pair<int, int>, LinComb> mult_;
    std::map<int, LinComb> diff_;
    LinComb empty_;
};

// The spec's FiniteCdga: a Coeff plus validators. Non-unital instances must
// be nilpotent.
struct FiniteCdga {
    Coeff alg;
    std::string name;
};

CheckResult check_finite_cdga(const Coeff& a);

// Smallest n with ideal^n = 0, or nullopt if the ideal is not nilpotent.
std::optional<unsigned> nilpotence_degree(const Coeff& a);

// A free (completed symmetric) cdga presented by generators and a derivation
// differential with no constant term. Degrees are internal homological.
struct FreeCdga {
    GradedSpace gens;
    std::map<int, Combo<SymWord>> diff;  // d(generator) as words in gens
    std::string name;

    std::vector<Deg> letter_degs() const {
        std::vector<Deg> out;
        out.reserve(gens.size());
        for (const auto& g : gens.gens()) out.push_back(g.deg);
        return out;
    }
};

CheckResult check_free_cdga(const FreeCdga& a, const TruncProfile& trunc);

// Truncates the (non-unital ideal of the) free cdga to the finite basis of
// words with weight <= trunc.weight_max and degree inside sound cutoffs; the
// quotient by the discarded span is a dg ideal, so the result is an honest
// finite cdga. When `unital`, the unit is adjoined.
Coeff truncate_free_cdga(const FreeCdga& a, const TruncProfile& trunc, bool unital);

// List of the sym-words forming the truncated basis, aligned with the basis
// indices of truncate_free_cdga.
std::vector<SymWord> truncated_word_basis(const FreeCdga& a, const TruncProfile& trunc);

// Evaluates sym-words under a multiplicative map letters -> A (an absent
// letter image is zero).
LinComb eval_word(const Coeff& a, const std::map<int, LinComb>& images, const SymWord& w);
LinComb eval_combo(const Coeff& a, const std::map<int, LinComb>& images, const Combo<SymWord>& x);

// A[z,dz]: the de Rham interval extension of A, with z in degree 0 and dz in
// internal degree -1, truncated at z-power z_max (sound as long as no
// computation exceeds that power; callers must size it).
struct IntervalKey {
    int a = Coeff::UNIT;
    unsigned zpow = 0;
    bool dz = false;
};
Coeff interval_extension(const Coeff& a, unsigned z_max);
// key <-> basis index translation for interval_extension
int interval_index(const Coeff& base, unsigned z_max, const IntervalKey& k);
IntervalKey interval_key(const Coeff& base, unsigned z_max, int index);

}  // namespace rht
