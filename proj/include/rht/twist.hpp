#pragma once

#include "rht/mc.hpp"
#include "rht/structures.hpp"

namespace rht {

struct NotMC : std::runtime_error {
    explicit NotMC(const std::string& what) : std::runtime_error(what) {}
};

// An A-linear L-infinity structure: the structure derivation of the
// A-linear representing algebra, given on dual generators with
// A-coefficiented word values. The full differential additionally acts on
// coefficients by d_A.
struct ALinfty {
    Coeff A;
    GradedSpace V;
    GradedSpace rep;
    std::vector<Deg> rep_degs;
    std::map<int, TElem> ops;
    std::string name;

    const TElem& op(int gen) const;
};

ALinfty alinear_extend(const LinftyAlg& l, const Coeff& a);

// A-linear product of representing-algebra elements.
void telem_multiply(TElem& dst, const Coeff& a, const std::vector<Deg>& rep_degs, const TKey& x,
                    const TKey& y, const Rat& coeff, unsigned weight_max);
TElem telem_mul(const Coeff& a, const std::vector<Deg>& rep_degs, const TElem& x, const TElem& y,
                unsigned weight_max);

// Full differential d_A + (Leibniz extension of ops) applied to an element.
TElem apply_full(const ALinfty& s, const TElem& x, unsigned weight_max);

// A-linear algebra map given on dual generators, applied to an element.
TElem apply_alinear_map(const Coeff& a, const std::vector<Deg>& out_rep_degs,
                        const std::map<int, TElem>& images, const TElem& x, unsigned weight_max);

// Contraction: the A-linear derivation sending each dual generator to the
// corresponding coefficient of xi (an even, weight-lowering operator).
TElem iota(const Coeff& a, const std::vector<Deg>& rep_degs,
           const std::map<int, LinComb>& xi_images, const TElem& x);

CheckResult check_alinfty(const ALinfty& s, const TruncProfile& trunc);

// Twisting by conjugation: the derivation g -> E(M(E^{-1}(g))) with
// E = e^{iota_xi} the substitution automorphism g -> g + xi_g.
ALinfty twist(const LinftyAlg& l, const Coeff& a, const MCElem& xi, const TruncProfile& trunc);

// Independent route: the arity-contraction series
// M^xi(g) = sum_k (1/k!) iota_xi^k(M(g)) - d_A(xi_g).
ALinfty twist_direct(const LinftyAlg& l, const Coeff& a, const MCElem& xi,
                     const TruncProfile& trunc);

// Flattens an A-linear structure to an ordinary one on the pair basis
// (coefficient basis element, generator); the unit pairs appear when A is
// unital.
LinftyAlg flatten(const ALinfty& s);

// Degree-window chain complex of the twisted m_1 on A (x) V.
ComplexSlice alinfty_slice(const ALinfty& s, Deg lo, Deg hi);

// A morphism of twisted structures, as an A-linear map of representing
// algebras: images of target dual generators.
struct TwistedMap {
    ALinfty source;
    ALinfty target;
    std::map<int, TElem> images;
};

CheckResult check_twisted_map(const TwistedMap& f, const TruncProfile& trunc);

// f^xi : twist(source, xi) -> twist(target, f_*(xi)).
TwistedMap twist_morphism(const LinftyMap& f, const Coeff& a, const MCElem& xi,
                          const TruncProfile& trunc);

// Pushforward of xi along f.
MCElem mc_pushforward(const LinftyMap& f, const Coeff& a, const MCElem& xi);

}  // namespace rht
