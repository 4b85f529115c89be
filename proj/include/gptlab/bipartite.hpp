#pragma once

// Bipartite composites of two polytopic state spaces. States are tensors over
// vertex-induced bases of the homogenized spans, which turns every product
// effect evaluation into one exact bilinear form.

#include "gptlab/gpt.hpp"

namespace gptlab {

// Basis of span({(1, v) : v vertex}) selected greedily from the lifted vertices.
struct SpanBasis {
    std::vector<int> vertex_indices;
    QMat basis;  // (1 + ambient_dim) x size, columns are lifted vertices
    QMat pinv;   // left inverse of basis

    int size() const { return static_cast<int>(basis.cols()); }
};

SpanBasis span_basis(const StateSpace& K);

// Coordinates of a state (exact; the lifted point must lie in the span).
QVec state_coords(const SpanBasis& sb, const QVec& state);
// Covector coordinates of an affine functional in the dual basis: its values at
// the basis vertices.
QVec effect_coords(const SpanBasis& sb, const StateSpace& K, const AffineFunctional& f);
// Inverse of state_coords: lifted ambient vector (first entry = total weight).
QVec to_lifted(const SpanBasis& sb, const QVec& coords);

struct BipartiteSystem {
    StateSpace A;
    StateSpace B;
    SpanBasis basis_a;
    SpanBasis basis_b;
    // Extreme points of the full effect algebras; enumerating them costs a
    // double-description run each, so large composites may skip a side that
    // their workload never touches.
    std::optional<EffectRestriction> vertex_effects_a;
    std::optional<EffectRestriction> vertex_effects_b;
};

struct WithEffects {
    bool side_a = true;
    bool side_b = true;
};

BipartiteSystem make_system(StateSpace a, StateSpace b, WithEffects effects = {});

// Accessors that fail loudly when the side was skipped at construction.
const EffectRestriction& effects_a(const BipartiteSystem& sys);
const EffectRestriction& effects_b(const BipartiteSystem& sys);

enum class Side { A, B };

enum class TensorKind { Minimal, Maximal };

struct TensorProductSpace {
    TensorKind kind;
    Polytope body;  // flattened coordinates, row-major over (basis_a, basis_b)
};

QVec flatten(const QMat& tensor);
QMat unflatten(const QVec& flat, int rows, int cols);

TensorProductSpace minimal_tensor(const BipartiteSystem& sys);
TensorProductSpace maximal_tensor(const BipartiteSystem& sys);

QMat product_state(const BipartiteSystem& sys, const QVec& rho_a, const QVec& rho_b);

// (f ⊗ g)(rho)
Rat pair_value(const BipartiteSystem& sys, const QMat& tensor, const AffineFunctional& f,
               const AffineFunctional& g);

// (f ⊗ id)(rho) or (id ⊗ f)(rho): subnormalized vector in the other side's
// span-basis coordinates.
QVec partial_apply_effect(const BipartiteSystem& sys, const QMat& tensor,
                          const AffineFunctional& f, Side side);

bool in_minimal(const BipartiteSystem& sys, const QMat& tensor);  // LP over product vertices
// Positivity on all product effects, decided from whichever side has its
// effects enumerated: (f x id)(rho) must land in the cone over the other
// factor for every extreme allowed f.
bool in_maximal(const BipartiteSystem& sys, const QMat& tensor);
bool is_normalized(const BipartiteSystem& sys, const QMat& tensor);

// CHSH with two binary measurements per side; effects ordered (+1, -1).
Rat chsh_value(const BipartiteSystem& sys, const QMat& tensor, const Measurement& a1,
               const Measurement& a2, const Measurement& b1, const Measurement& b2);

}  // namespace gptlab
