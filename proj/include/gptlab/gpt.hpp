#pragma once

// State spaces, effect restrictions, measurements and post-processings of a
// restricted theory, together with the dual state space construction and the
// evaluation channel that factors measurement statistics through it.
//
// Effects are affine functionals on the ambient space; two functionals count as
// the same effect when they agree on the affine hull of the state space, which
// the chart-coefficient form below makes a plain vector equality.

#include <optional>
#include <string>
#include <vector>

#include "gptlab/polytope.hpp"

namespace gptlab {

struct AffineFunctional {
    QVec linear;
    Rat constant;

    Rat value(const QVec& x) const { return linear.dot(x) + constant; }
};

AffineFunctional zero_effect(int dim);
AffineFunctional unit_effect(int dim);

struct Measurement {
    std::string label;
    std::vector<AffineFunctional> effects;
    std::vector<std::string> outcomes;  // defaults to "0", "1", ... when empty
};

Measurement make_measurement(std::string label, std::vector<AffineFunctional> effects);

// Right stochastic matrix; rows index input outcomes, columns output outcomes.
struct PostProcessing {
    QMat matrix;
};

class StateSpace {
  public:
    // prune = false trusts the caller that the vertex list is already
    // irredundant (e.g. it came out of a double-description run).
    StateSpace(std::string label, int ambient_dim, std::vector<QVec> vertices, bool prune = true);

    const std::string& label() const { return label_; }
    const Polytope& body() const { return body_; }
    const std::vector<QVec>& vertices() const { return body_.vertices(); }
    const AffineChart& chart() const { return chart_; }
    int ambient_dim() const { return body_.ambient_dim(); }
    int aff_dim() const { return chart_.dim(); }

    bool contains_state(const QVec& x) const;

  private:
    std::string label_;
    Polytope body_;  // carries both representations
    AffineChart chart_;
};

// Convex set of allowed effects, stored by its generators (V-representation).
// Always contains the zero and unit effects.
struct EffectRestriction {
    std::vector<AffineFunctional> generators;
};

struct RestrictedTheory {
    StateSpace K;
    EffectRestriction E;
    std::optional<std::vector<Measurement>> M;
};

// Functional as chart coefficients over aff(K): [linear part on chart; constant],
// size aff_dim + 1. Equal coefficients <=> equal as effects on K.
QVec functional_coeffs(const StateSpace& K, const AffineFunctional& f);
AffineFunctional functional_from_coeffs(const StateSpace& K, const QVec& coeffs);
bool same_effect(const StateSpace& K, const AffineFunctional& a, const AffineFunctional& b);

// Full effect algebra of K: every affine functional with values in [0,1] on K.
// Returned as the extreme functionals (vertices of the effect polytope).
EffectRestriction effect_polytope(const StateSpace& K);

struct DualStateSpace {
    Polytope body;  // in the coordinates of `basis`, both representations
    std::vector<AffineFunctional> basis;
};

// Normalized positive functionals on span(E). The basis starts with the unit
// effect and extends greedily through the generators, so coordinates are
// reproducible.
DualStateSpace dual_state_space(const StateSpace& K, const EffectRestriction& E);

// Coordinates of the evaluation functional of rho in the dual basis. Exact
// identity: for every effect f in E with basis expansion f = sum_k beta_k b_k,
// f(rho) = beta . evaluation_channel(...).
QVec evaluation_channel(const StateSpace& K, const DualStateSpace& dual, const QVec& rho);

// Basis expansion of an effect over the dual basis.
QVec effect_in_dual_basis(const StateSpace& K, const DualStateSpace& dual,
                          const AffineFunctional& f);

// Smallest post-processing-closed convex effect set generated by a measurement
// list: all per-measurement outcome-subset sums plus the zero and unit effects.
EffectRestriction generate_effect_algebra(const std::vector<Measurement>& ms);

Measurement apply_postprocessing(const Measurement& m, const PostProcessing& nu);

bool is_tomographically_complete(const StateSpace& K, const EffectRestriction& E);

// LP membership of f in conv(E.generators); witness = convex coefficients.
std::optional<QVec> effect_membership_witness(const StateSpace& K, const EffectRestriction& E,
                                              const AffineFunctional& f);

// Invariant checks; throw std::invalid_argument naming the violated invariant.
void validate_measurement(const StateSpace& K, const Measurement& m);
void validate_effect_restriction(const StateSpace& K, const EffectRestriction& E);
void validate_theory(const RestrictedTheory& T);

}  // namespace gptlab
